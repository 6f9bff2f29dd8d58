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
#include <numbers>
#include <string>

#include "telecomp/error.hpp"
#include "telecomp/ghz_branch.hpp"

namespace telecomp::ghz {

using qsim::StateVector;

bool LocalMeasurementRecord::all_zero() const {
    return std::all_of(bits.begin(), bits.end(), [](int b) { return b == 0; });
}

BranchPairState BranchPairState::new_cat(std::size_t eta) {
    require(eta >= 1, ErrorCode::kInvalidArgument, "new_cat: eta must be at least 1");
    BranchPairState s;
    s.weights_ = {Amplitude{1.0 / std::numbers::sqrt2, 0.0}, Amplitude{1.0 / std::numbers::sqrt2, 0.0}};
    s.slots_.resize(eta);
    s.cat_remaining_ = eta;
    return s;
}

BranchPairState::Slot &BranchPairState::slot_at(std::size_t slot) {
    if (slot >= slots_.size()) fail(ErrorCode::kOutOfRange, "slot " + std::to_string(slot) + " does not exist");
    return slots_[slot];
}

const BranchPairState::Slot &BranchPairState::slot_at(std::size_t slot) const {
    if (slot >= slots_.size()) fail(ErrorCode::kOutOfRange, "slot " + std::to_string(slot) + " does not exist");
    return slots_[slot];
}

bool BranchPairState::has_cat_bit(std::size_t slot) const { return slot_at(slot).cat_bit; }
bool BranchPairState::has_local_register(std::size_t slot) const { return slot_at(slot).has_register; }
std::size_t BranchPairState::local_sites(std::size_t slot) const { return slot_at(slot).local[0].num_sites(); }

const StateVector &BranchPairState::local(std::size_t slot, Branch branch) const {
    return slot_at(slot).local[index(branch)];
}

void BranchPairState::attach_local_register(std::size_t slot, std::size_t num_local_sites) {
    Slot &s = slot_at(slot);
    if (s.has_register) fail(ErrorCode::kContract, "slot " + std::to_string(slot) + " already has a register");
    s.local = {StateVector(num_local_sites), StateVector(num_local_sites)};
    s.has_register = true;
}

void BranchPairState::fold_scalar_register(Slot &s, int b) {
    if (s.local[b].num_sites() == 0) {
        weights_[b] *= s.local[b].amplitude(0);
        s.local[b] = StateVector(0);
    }
}

void BranchPairState::apply_local_on_branch(std::size_t slot, Branch branch, const qsim::Circuit &unitary) {
    Slot &s = slot_at(slot);
    if (!s.cat_bit) fail(ErrorCode::kContract,
            "slot " + std::to_string(slot) + " has no cat bit to condition on");
    const int b = index(branch);
    if (unitary.site_extent() > s.local[b].num_sites()) fail(ErrorCode::kContract,
            "unitary touches sites outside slot " + std::to_string(slot) + "'s local register");
    s.local[b].apply(unitary);
    fold_scalar_register(s, b);
}

void BranchPairState::rotate_branch_phase(Branch branch, double angle) { weights_[index(branch)] *= std::polar(1.0, angle); }

LocalMeasurementRecord BranchPairState::project_local(std::size_t slot, const std::vector<std::size_t> &sites,
                                                      const std::vector<int> &bits) {
    Slot &s = slot_at(slot);
    // Without a remaining cat bit the branches are no longer orthogonal and
    // the cross terms would not vanish.
    require(cat_bits_remaining() >= 1, ErrorCode::kContract, "local measurement needs a remaining cat bit");
    std::array<double, 2> pb{};
    for (int b = 0; b < 2; ++b) {
        pb[b] = s.local[b].probability_of_bits(sites, bits);
    }
    const double p = std::norm(weights_[0]) * pb[0] + std::norm(weights_[1]) * pb[1];
    require(p > 0.0, ErrorCode::kInternal, "projection onto a zero-probability local outcome");
    for (int b = 0; b < 2; ++b) {
        if (pb[b] > 0.0) {
            s.local[b] = s.local[b].project_sites(sites, bits).posterior;
            weights_[b] *= std::sqrt(pb[b] / p);
        } else {
            weights_[b] = 0.0;
        }
    }
    return LocalMeasurementRecord{slot, sites, bits, p};
}

LocalMeasurementRecord BranchPairState::measure_local(std::size_t slot, const std::vector<std::size_t> &sites,
                                                      RandomStream &rng) {
    const Slot &s = slot_at(slot);
    auto d0 = s.local[0].outcome_distribution(sites);
    const auto d1 = s.local[1].outcome_distribution(sites);
    const double w0 = std::norm(weights_[0]);
    const double w1 = std::norm(weights_[1]);
    for (std::size_t k = 0; k < d0.size(); ++k) {
        d0[k] = w0 * d0[k] + w1 * d1[k];
    }
    const std::size_t pick = qsim::sample_index(d0, rng);
    std::vector<int> bits(sites.size());
    for (std::size_t b = 0; b < sites.size(); ++b) {
        bits[b] = static_cast<int>((pick >> (sites.size() - 1 - b)) & 1U);
    }
    return project_local(slot, sites, bits);
}

void BranchPairState::merge_local_branches(Slot &s, std::size_t slot) {
    if (!s.has_register) {
        return;
    }
    const Amplitude ov = qsim::inner(s.local[0], s.local[1]);
    if (!(std::abs(ov) >= 1.0 - kDisposalOverlapTolerance)) fail(ErrorCode::kContract,
            "slot " + std::to_string(slot) + " local register differs across branches (overlap " +
                std::to_string(std::abs(ov)) + ")");
    weights_[1] *= ov / std::abs(ov);
    s.local[1] = s.local[0];
}

CatMeasurementRecord BranchPairState::project_cat_bit(std::size_t slot, int bit) {
    Slot &s = slot_at(slot);
    if (!s.cat_bit) fail(ErrorCode::kContract, "slot " + std::to_string(slot) + " cat bit already measured");
    require(cat_bits_remaining() >= 2, ErrorCode::kContract, "the last cat bit carries the result and is not measured");
    require(bit == 0 || bit == 1, ErrorCode::kInvalidArgument, "bit must be 0 or 1");
    merge_local_branches(s, slot);
    // Another cat bit keeps the two branches orthogonal, so after M both
    // outcomes have probability exactly 1/2.
    if (bit == 1) {
        weights_[1] = -weights_[1];
    }
    s.cat_bit = false;
    --cat_remaining_;
    return CatMeasurementRecord{slot, bit, bit == 1, 0.5};
}

CatMeasurementRecord BranchPairState::m_and_measure_cat_bit(std::size_t slot, RandomStream &rng) {
    if (!(slot_at(slot).cat_bit)) fail(ErrorCode::kContract, "slot " + std::to_string(slot) + " cat bit already measured");
    const int bit = rng.uniform() < 0.5 ? 0 : 1;
    return project_cat_bit(slot, bit);
}

StateVector BranchPairState::remaining_qubit() const {
    require(cat_bits_remaining() == 1, ErrorCode::kContract, "remaining_qubit needs exactly one cat bit left");
    Amplitude a1 = weights_[1];
    for (std::size_t j = 0; j < slots_.size(); ++j) {
        const Slot &s = slots_[j];
        if (!s.has_register) continue;
        const Amplitude ov = qsim::inner(s.local[0], s.local[1]);
        if (!(std::abs(ov) >= 1.0 - kDisposalOverlapTolerance)) fail(ErrorCode::kContract,
                "slot " + std::to_string(j) + " local register is entangled with the cat branches");
        a1 *= ov / std::abs(ov);
    }
    return StateVector::from_amplitudes({weights_[0], a1});
}

std::size_t BranchPairState::dense_sites() const {
    std::size_t n = 0;
    for (const auto &s : slots_) {
        n += (s.cat_bit ? 1 : 0) + s.local[0].num_sites();
    }
    return n;
}

std::size_t BranchPairState::dense_cat_site(std::size_t slot) const {
    require(slot_at(slot).cat_bit, ErrorCode::kContract, "slot has no cat bit");
    std::size_t n = 0;
    for (std::size_t j = 0; j < slot; ++j) {
        n += (slots_[j].cat_bit ? 1 : 0) + slots_[j].local[0].num_sites();
    }
    return n;
}

std::size_t BranchPairState::dense_local_offset(std::size_t slot) const {
    std::size_t n = 0;
    for (std::size_t j = 0; j < slot; ++j) {
        n += (slots_[j].cat_bit ? 1 : 0) + slots_[j].local[0].num_sites();
    }
    return n + (slot_at(slot).cat_bit ? 1 : 0);
}

StateVector BranchPairState::to_dense(std::size_t max_sites) const {
    const std::size_t n = dense_sites();
    if (n > max_sites) fail(ErrorCode::kOutOfRange,
            "to_dense: " + std::to_string(n) + " sites exceed the dense limit of " + std::to_string(max_sites));
    std::array<StateVector, 2> branch{StateVector(0), StateVector(0)};
    for (int b = 0; b < 2; ++b) {
        for (const auto &s : slots_) {
            if (s.cat_bit) {
                branch[b] = qsim::kron(branch[b], StateVector::basis_state(1, static_cast<std::uint64_t>(b)));
            }
            if (s.local[b].num_sites() > 0) {
                branch[b] = qsim::kron(branch[b], s.local[b]);
            }
        }
    }
    std::vector<Amplitude> amps(std::uint64_t{1} << n);
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        amps[i] = weights_[0] * branch[0].amplitudes()[i] + weights_[1] * branch[1].amplitudes()[i];
    }
    return StateVector::from_amplitudes(std::move(amps), max_sites);
}

double BranchPairState::norm() const {
    double total = 0.0;
    for (int b = 0; b < 2; ++b) {
        double local = 1.0;
        for (const auto &s : slots_) {
            local *= s.local[b].norm() * s.local[b].norm();
        }
        total += std::norm(weights_[b]) * local;
    }
    return std::sqrt(total);
}

}  // namespace telecomp::ghz
