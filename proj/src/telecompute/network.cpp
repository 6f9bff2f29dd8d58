// Copyright 2026 The Telecomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <numeric>
#include <string>

#include <json.hpp>

#include "telecomp/error.hpp"
#include "telecomp/telecompute.hpp"

namespace telecomp::net {

const char *event_name(EventKind kind) {
    switch (kind) {
        case EventKind::kBit:
            return "bit";
        case EventKind::kRestart:
            return "restart";
        case EventKind::kMeasure:
            return "measure";
    }
    return "unknown";
}

std::size_t NetworkTrace::count(EventKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(entries_.begin(), entries_.end(), [&](const ClassicalMessage &m) { return m.event == kind; }));
}

std::size_t NetworkTrace::count(EventKind kind, std::uint64_t round) const {
    return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(), [&](const ClassicalMessage &m) {
        return m.event == kind && m.round == round;
    }));
}

std::string NetworkTrace::to_jsonl() const {
    std::string out;
    for (const auto &m : entries_) {
        nlohmann::ordered_json j;
        j["event"] = event_name(m.event);
        j["from"] = m.from;
        j["round"] = m.round;
        if (m.bit) {
            j["bit"] = *m.bit;
        } else {
            j["bit"] = nullptr;
        }
        out += j.dump();
        out += '\n';
    }
    return out;
}

XorTree XorTree::make_leaf(std::size_t index) {
    XorTree t;
    t.leaf = index;
    return t;
}

XorTree XorTree::make_pair(XorTree left, XorTree right) {
    XorTree t;
    t.children.push_back(std::move(left));
    t.children.push_back(std::move(right));
    return t;
}

XorTree flat_xor_tree(std::size_t n) {
    require(n >= 1, ErrorCode::kInvalidArgument, "xor tree needs at least one index");
    XorTree t = XorTree::make_leaf(0);
    for (std::size_t k = 1; k < n; ++k) t = XorTree::make_pair(std::move(t), XorTree::make_leaf(k));
    return t;
}

XorTree random_xor_tree(std::size_t n, RandomStream &rng) {
    require(n >= 1, ErrorCode::kInvalidArgument, "xor tree needs at least one index");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t k = n; k > 1; --k) std::swap(order[k - 1], order[rng.below(k)]);
    std::vector<XorTree> forest;
    forest.reserve(n);
    for (auto idx : order) forest.push_back(XorTree::make_leaf(idx));
    // Merge two random roots until one remains.
    while (forest.size() > 1) {
        const std::size_t a = rng.below(forest.size());
        XorTree left = std::move(forest[a]);
        forest.erase(forest.begin() + static_cast<std::ptrdiff_t>(a));
        const std::size_t b = rng.below(forest.size());
        XorTree right = std::move(forest[b]);
        forest[b] = XorTree::make_pair(std::move(left), std::move(right));
    }
    return std::move(forest.front());
}

namespace {

int fold(const std::vector<int> &bits, const XorTree &t, std::vector<bool> &seen) {
    if (t.leaf) {
        require(t.children.empty(), ErrorCode::kInvalidArgument, "xor tree: a leaf cannot have children");
        const std::size_t i = *t.leaf;
        if (i >= bits.size()) fail(ErrorCode::kInvalidArgument, "xor tree: index " + std::to_string(i) + " out of range");
        if (seen[i]) fail(ErrorCode::kInvalidArgument, "xor tree: index " + std::to_string(i) + " appears twice");
        seen[i] = true;
        return bits[i];
    }
    require(t.children.size() == 2, ErrorCode::kInvalidArgument, "xor tree: inner nodes need exactly two children");
    // Each processor group sends only its local XOR upward.
    return fold(bits, t.children[0], seen) ^ fold(bits, t.children[1], seen);
}

void check_bits(const std::vector<int> &bits) {
    for (int b : bits) require(b == 0 || b == 1, ErrorCode::kInvalidArgument, "xor: bits must be 0 or 1");
}

}  // namespace

int xor_aggregate(const std::vector<int> &bits, const XorTree &grouping) {
    check_bits(bits);
    std::vector<bool> seen(bits.size(), false);
    const int parity = fold(bits, grouping, seen);
    require(std::all_of(seen.begin(), seen.end(), [](bool s) { return s; }), ErrorCode::kInvalidArgument,
            "xor tree: not every index is covered");
    return parity;
}

int xor_flat(const std::vector<int> &bits) {
    check_bits(bits);
    int p = 0;
    for (int b : bits) p ^= b;
    return p;
}

void BaseStationState::receive(const ClassicalMessage &m) {
    require(m.event == EventKind::kBit && m.bit.has_value(), ErrorCode::kContract,
            "base station only accepts one-bit result messages");
    received.push_back(m);
    parity ^= *m.bit;
}

}  // namespace telecomp::net
