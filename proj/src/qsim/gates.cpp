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
#include <cmath>
#include <string>

#include "telecomp/error.hpp"
#include "telecomp/qsim.hpp"

namespace telecomp::qsim {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::vector<std::size_t> acted_sites(const Gate &gate) {
    return std::visit(Overloaded{
                          [](const MGate &g) { return std::vector<std::size_t>{g.site}; },
                          [](const CnotGate &g) { return std::vector<std::size_t>{g.control, g.target}; },
                          [](const BasisPhaseGate &g) { return g.sites; },
                          [](const DiagonalPhaseGate &g) { return g.sites; },
                      },
                      gate.op);
}

std::uint64_t gate_cost(const Gate &gate) {
    return std::visit(Overloaded{
                          [](const MGate &) -> std::uint64_t { return 1; },
                          [](const CnotGate &) -> std::uint64_t { return 1; },
                          [](const BasisPhaseGate &) -> std::uint64_t { return 1; },
                          [](const DiagonalPhaseGate &g) -> std::uint64_t { return g.angles.size(); },
                      },
                      gate.op);
}

namespace {

std::size_t gate_extent(const Gate &g) {
    std::size_t extent = 0;
    for (auto s : acted_sites(g)) extent = std::max(extent, s + 1);
    for (const auto &c : g.controls) extent = std::max(extent, c.site + 1);
    return extent;
}

}  // namespace

Circuit::Circuit(std::initializer_list<Gate> gates) {
    for (const auto &g : gates) push(g);
}

Circuit &Circuit::push(Gate gate) {
    extent_ = std::max(extent_, gate_extent(gate));
    gates_.push_back(std::move(gate));
    return *this;
}

Circuit &Circuit::append(const Circuit &other) {
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    extent_ = std::max(extent_, other.extent_);
    return *this;
}

std::uint64_t Circuit::cost() const {
    std::uint64_t total = 0;
    for (const auto &g : gates_) {
        total += gate_cost(g);
    }
    return total;
}

std::size_t Circuit::site_extent() const { return extent_; }

Gate m_gate(std::size_t site) { return Gate{MGate{site}, {}}; }

Gate cnot(std::size_t control, std::size_t target) {
    require(control != target, ErrorCode::kInvalidArgument, "cnot: control and target must differ");
    return Gate{CnotGate{control, target}, {}};
}

Gate basis_phase(std::vector<std::size_t> sites, std::uint64_t index, double angle) {
    if (!(sites.size() < 64 && index < (std::uint64_t{1} << sites.size()))) fail(ErrorCode::kOutOfRange,
            "basis_phase: index " + std::to_string(index) + " out of range for " + std::to_string(sites.size()) +
                " sites");
    return Gate{BasisPhaseGate{std::move(sites), index, angle}, {}};
}

Gate global_phase(double angle) { return Gate{BasisPhaseGate{{}, 0, angle}, {}}; }

Gate diagonal_phase(std::vector<std::size_t> sites, std::vector<double> angles) {
    require(sites.size() < 64 && angles.size() == (std::uint64_t{1} << sites.size()), ErrorCode::kInvalidArgument,
            "diagonal_phase: need 2^k angles for k sites");
    std::vector<Amplitude> factors(angles.size());
    for (std::size_t j = 0; j < angles.size(); ++j) {
        factors[j] = std::polar(1.0, angles[j]);
    }
    return Gate{DiagonalPhaseGate{std::move(sites), std::move(angles), std::move(factors)}, {}};
}

Circuit wh(const std::vector<std::size_t> &sites) {
    Circuit c;
    for (auto s : sites) {
        c.push(m_gate(s));
    }
    return c;
}

Gate controlled(Gate gate, Control control) {
    const auto sites = acted_sites(gate);
    if (std::find(sites.begin(), sites.end(), control.site) != sites.end()) fail(ErrorCode::kInvalidArgument,
            "controlled: control site " + std::to_string(control.site) + " is acted on by the operation");
    for (const auto &c : gate.controls) {
        require(c.site != control.site, ErrorCode::kInvalidArgument, "controlled: duplicate control site");
    }
    gate.controls.push_back(control);
    return gate;
}

Circuit controlled(const Circuit &circuit, Control control) {
    Circuit out;
    for (const auto &g : circuit.gates()) {
        out.push(controlled(g, control));
    }
    return out;
}

Circuit shifted(const Circuit &circuit, std::size_t offset) {
    Circuit out;
    for (Gate g : circuit.gates()) {
        std::visit(Overloaded{
                       [&](MGate &m) { m.site += offset; },
                       [&](CnotGate &c) {
                           c.control += offset;
                           c.target += offset;
                       },
                       [&](BasisPhaseGate &p) {
                           for (auto &s : p.sites) s += offset;
                       },
                       [&](DiagonalPhaseGate &d) {
                           for (auto &s : d.sites) s += offset;
                       },
                   },
                   g.op);
        for (auto &c : g.controls) {
            c.site += offset;
        }
        out.push(std::move(g));
    }
    return out;
}

}  // namespace telecomp::qsim
