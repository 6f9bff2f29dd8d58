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

/**
 * @file
 * Two-branch (cat state) representation of many processors sharing one
 * entangled resource.
 *
 * The represented global state is
 *
 *   a0 * |0...0>_cat (x) local0_0 (x) ... (x) local0_{eta-1}
 * + a1 * |1...1>_cat (x) local1_0 (x) ... (x) local1_{eta-1}
 *
 * where every slot contributes its cat bit (while unmeasured) followed by its
 * local register. Local registers stay normalized; norm factors from local
 * measurements are folded into a0/a1. Storage and per-operation cost are
 * linear in the number of slots.
 */

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "telecomp/qsim.hpp"
#include "telecomp/random.hpp"

namespace telecomp::ghz {

using qsim::Amplitude;

enum class Branch : int { kZero = 0, kOne = 1 };

inline constexpr double kDisposalOverlapTolerance = 1e-8;

struct CatMeasurementRecord {
    std::size_t slot = 0;
    int bit = 0;
    /// True iff the observed bit is 1, i.e. the a1 branch changed sign.
    bool sign_flipped = false;
    double probability = 0.0;
};

struct LocalMeasurementRecord {
    std::size_t slot = 0;
    std::vector<std::size_t> sites;
    std::vector<int> bits;
    double probability = 0.0;

    bool all_zero() const;
};

class BranchPairState {
  public:
    /// (|0>^eta + |1>^eta)/sqrt 2 with empty local registers.
    static BranchPairState new_cat(std::size_t eta);

    std::size_t eta() const noexcept { return slots_.size(); }
    std::size_t cat_bits_remaining() const noexcept { return cat_remaining_; }
    bool has_cat_bit(std::size_t slot) const;
    bool has_local_register(std::size_t slot) const;
    std::size_t local_sites(std::size_t slot) const;
    Amplitude weight(Branch branch) const noexcept { return weights_[index(branch)]; }
    const qsim::StateVector &local(std::size_t slot, Branch branch) const;

    /// Gives `slot` a |0...0> register of `num_local_sites` on both branches.
    void attach_local_register(std::size_t slot, std::size_t num_local_sites);

    /// Applies `unitary` to the slot's local register on one branch only,
    /// i.e. the operation conditioned on the slot's cat bit. Sites in
    /// `unitary` are local indices.
    void apply_local_on_branch(std::size_t slot, Branch branch, const qsim::Circuit &unitary);

    void rotate_branch_phase(Branch branch, double angle);

    /// Projective measurement of local sites of one slot on both branches.
    LocalMeasurementRecord measure_local(std::size_t slot, const std::vector<std::size_t> &sites, RandomStream &rng);
    LocalMeasurementRecord project_local(std::size_t slot, const std::vector<std::size_t> &sites,
                                         const std::vector<int> &bits);

    /// Applies M to the slot's cat bit and measures it. Outcome 1 maps
    /// a1 -> -a1. The slot's local registers must agree across branches.
    CatMeasurementRecord m_and_measure_cat_bit(std::size_t slot, RandomStream &rng);
    CatMeasurementRecord project_cat_bit(std::size_t slot, int bit);

    /// Single qubit left when exactly one cat bit remains and all local
    /// registers agree across branches: a0|0> + a1|1> (local phases folded).
    qsim::StateVector remaining_qubit() const;

    /// Dense expansion in slot order: [cat bit][local sites] per slot;
    /// measured cat bits are omitted.
    qsim::StateVector to_dense(std::size_t max_sites = qsim::kDefaultMaxSites) const;
    std::size_t dense_sites() const;
    /// Dense site index of the slot's cat bit / first local site.
    std::size_t dense_cat_site(std::size_t slot) const;
    std::size_t dense_local_offset(std::size_t slot) const;

    /// |a0|^2 + |a1|^2 with the local norms included.
    double norm() const;

  private:
    struct Slot {
        bool cat_bit = true;
        bool has_register = false;
        std::array<qsim::StateVector, 2> local{qsim::StateVector(0), qsim::StateVector(0)};
    };

    static int index(Branch b) noexcept { return static_cast<int>(b); }
    Slot &slot_at(std::size_t slot);
    const Slot &slot_at(std::size_t slot) const;
    void fold_scalar_register(Slot &s, int b);
    // Checks local0 ~ local1 up to a phase and folds that phase into a1.
    void merge_local_branches(Slot &s, std::size_t slot);

    std::array<Amplitude, 2> weights_{};
    std::vector<Slot> slots_;
    std::size_t cat_remaining_ = 0;
};

}  // namespace telecomp::ghz
