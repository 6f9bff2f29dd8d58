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

#include <gtest/gtest.h>

#include <bit>
#include <numbers>

#include "telecomp/error.hpp"
#include "telecomp/ghz_branch.hpp"

namespace {

using namespace telecomp;
using ghz::Branch;
using ghz::BranchPairState;
using qsim::Amplitude;
using qsim::Circuit;
using qsim::StateVector;
using std::numbers::pi;

// Dense cat state built gate by gate: M on site 0, then a CNOT chain.
StateVector dense_cat(std::size_t eta) {
    StateVector s(eta);
    s.apply_m(0);
    for (std::size_t k = 1; k < eta; ++k) s.apply_cnot(0, k);
    return s;
}

Circuit random_local_circuit(std::size_t n, RandomStream &rng) {
    Circuit c;
    for (int g = 0; g < 12; ++g) {
        const std::size_t a = rng.below(n);
        switch (rng.below(3)) {
            case 0: c.push(qsim::m_gate(a)); break;
            case 1: c.push(qsim::basis_phase({a}, 1, rng.uniform(-pi, pi))); break;
            default:
                if (n > 1) c.push(qsim::cnot(a, (a + 1) % n));
                break;
        }
    }
    return c;
}

TEST(BranchPair, NewCatMatchesDenseConstruction) {
    for (std::size_t eta = 1; eta <= 6; ++eta) {
        const auto s = BranchPairState::new_cat(eta);
        EXPECT_EQ(s.cat_bits_remaining(), eta);
        EXPECT_LE(qsim::max_abs_diff(s.to_dense(), dense_cat(eta)), 1e-15);
    }
    EXPECT_THROW(BranchPairState::new_cat(0), Error);
}

// Branch-conditioned local work equals a controlled circuit on the dense
// register [cat0][local0][cat1][local1][cat2].
TEST(BranchPair, ConditionedLocalWorkMatchesControlledDenseCircuit) {
    RandomStream rng(77);
    for (int trial = 0; trial < 25; ++trial) {
        auto s = BranchPairState::new_cat(3);
        s.attach_local_register(0, 2);
        s.attach_local_register(1, 1);
        const Circuit c0 = random_local_circuit(2, rng);
        const Circuit c1 = random_local_circuit(1, rng);
        const Circuit c0b = random_local_circuit(2, rng);
        s.apply_local_on_branch(0, Branch::kOne, c0);
        s.apply_local_on_branch(1, Branch::kOne, c1);
        s.apply_local_on_branch(0, Branch::kZero, c0b);

        // Dense: cat on sites 0, 3, 5; slot 0 register on 1..2, slot 1 on 4.
        StateVector d(6);
        d.apply_m(0);
        d.apply_cnot(0, 3);
        d.apply_cnot(0, 5);
        d.apply(qsim::controlled(qsim::shifted(c0, 1), qsim::Control{0, true}));
        d.apply(qsim::controlled(qsim::shifted(c1, 4), qsim::Control{3, true}));
        d.apply(qsim::controlled(qsim::shifted(c0b, 1), qsim::Control{0, false}));
        EXPECT_LE(qsim::max_abs_diff(s.to_dense(), d), 1e-12);
        EXPECT_NEAR(s.norm(), 1.0, 1e-12);
    }
}

TEST(BranchPair, CatMeasurementMatchesDenseProjection) {
    for (int bit = 0; bit < 2; ++bit) {
        auto s = BranchPairState::new_cat(3);
        s.rotate_branch_phase(Branch::kZero, 0.4);
        s.rotate_branch_phase(Branch::kOne, -0.1);
        StateVector d = s.to_dense();
        const auto rec = s.project_cat_bit(1, bit);
        EXPECT_EQ(rec.bit, bit);
        EXPECT_EQ(rec.sign_flipped, bit == 1);
        EXPECT_DOUBLE_EQ(rec.probability, 0.5);

        d.apply_m(1);
        const auto proj = d.project_sites({1}, {bit});
        EXPECT_NEAR(proj.probability, 0.5, 1e-15);
        const StateVector expect = qsim::remove_site(proj.posterior, 1, bit);
        EXPECT_LE(qsim::max_abs_diff(s.to_dense(), expect), 1e-15);
    }
}

// Every one of the 2^(eta-1) outcome patterns: the recovered qubit carries
// sign (-1)^(number of ones) on |1>.
TEST(BranchPair, ParitySignOverAllOutcomes) {
    for (std::size_t eta = 2; eta <= 5; ++eta) {
        for (std::uint64_t pattern = 0; pattern < (1ULL << (eta - 1)); ++pattern) {
            auto s = BranchPairState::new_cat(eta);
            for (std::size_t j = 1; j < eta; ++j) s.project_cat_bit(j, static_cast<int>((pattern >> (j - 1)) & 1U));
            const StateVector q = s.remaining_qubit();
            const double sign = std::popcount(pattern) % 2 == 0 ? 1.0 : -1.0;
            EXPECT_LE(std::abs(q.amplitude(1) / q.amplitude(0) - Amplitude(sign)), 1e-15)
                << "eta=" << eta << " pattern=" << pattern;
        }
    }
}

TEST(BranchPair, SampledCatBitsAreFair) {
    RandomStream rng(4);
    int ones = 0;
    constexpr int kTrials = 4000;
    for (int t = 0; t < kTrials; ++t) {
        auto s = BranchPairState::new_cat(2);
        ones += s.m_and_measure_cat_bit(1, rng).bit;
    }
    EXPECT_NEAR(ones / double(kTrials), 0.5, 4.0 * 0.5 / std::sqrt(double(kTrials)));
}

TEST(BranchPair, LocalMeasurementWeightsBranches) {
    // Branch 1 register rotated to |1>; branch 0 stays |0>. Measuring it
    // collapses the cat onto one branch.
    auto s = BranchPairState::new_cat(2);
    s.attach_local_register(0, 1);
    s.apply_local_on_branch(0, Branch::kOne, Circuit{qsim::m_gate(0)});
    const auto rec = s.project_local(0, {0}, {1});
    EXPECT_NEAR(rec.probability, 0.25, 1e-15);
    EXPECT_NEAR(std::abs(s.weight(Branch::kZero)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.weight(Branch::kOne)), 1.0, 1e-15);

    RandomStream rng(8);
    int zeros = 0;
    for (int t = 0; t < 4000; ++t) {
        auto u = BranchPairState::new_cat(2);
        u.attach_local_register(1, 1);
        u.apply_local_on_branch(1, Branch::kOne, Circuit{qsim::m_gate(0)});
        zeros += u.measure_local(1, {0}, rng).all_zero() ? 1 : 0;
    }
    EXPECT_NEAR(zeros / 4000.0, 0.75, 4.0 * std::sqrt(0.75 * 0.25 / 4000));
}

TEST(BranchPair, ContractsAreEnforced) {
    auto s = BranchPairState::new_cat(2);
    EXPECT_THROW(s.project_cat_bit(2, 0), Error);
    s.project_cat_bit(1, 0);
    EXPECT_THROW(s.project_cat_bit(1, 0), Error);        // already consumed
    EXPECT_THROW(s.project_cat_bit(0, 0), Error);        // last cat bit carries the result
    EXPECT_THROW(s.apply_local_on_branch(1, Branch::kOne, Circuit{qsim::m_gate(0)}), Error);
    EXPECT_THROW(s.project_local(0, {0}, {0}), Error);  // no register, no remaining partner bit

    auto t = BranchPairState::new_cat(3);
    t.attach_local_register(0, 1);
    EXPECT_THROW(t.attach_local_register(0, 1), Error);
    EXPECT_THROW(t.apply_local_on_branch(0, Branch::kOne, Circuit{qsim::m_gate(1)}), Error);
    // Entangled local register cannot be released by measuring its cat bit.
    t.apply_local_on_branch(0, Branch::kOne, Circuit{qsim::m_gate(0)});
    EXPECT_THROW(t.project_cat_bit(0, 0), Error);
    EXPECT_THROW(t.remaining_qubit(), Error);
}

TEST(BranchPair, StorageIsLinearInSlots) {
    auto s = BranchPairState::new_cat(200);
    for (std::size_t j = 0; j < 200; ++j) s.attach_local_register(j, 2);
    EXPECT_EQ(s.dense_sites(), 600u);
    EXPECT_THROW(s.to_dense(), Error);
    for (std::size_t j = 1; j < 200; ++j) s.project_cat_bit(j, static_cast<int>(j % 2));
    EXPECT_NEAR(std::abs(s.remaining_qubit().amplitude(1)), 1.0 / std::numbers::sqrt2, 1e-15);
}

}  // namespace
