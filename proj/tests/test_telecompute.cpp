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
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "dense_reference.hpp"
#include "oracle.hpp"
#include "telecomp/error.hpp"
#include "telecomp/telecompute.hpp"

namespace {

using namespace telecomp;
using namespace telecomp::net;
using qsim::Amplitude;
using namespace dense;
using std::numbers::pi;

Dataset random_dataset(std::size_t n, RandomStream &rng) {
    std::vector<double> v(n);
    for (auto &x : v) x = rng.uniform(-1.0, 1.0);
    return Dataset(v);
}

// ------------------------------------------------------------------ XOR

TEST(Xor, RandomGroupingsEqualFlatFold) {
    RandomStream rng(12);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = 1 + rng.below(40);
        std::vector<int> bits(n);
        int parity = 0;
        for (auto &b : bits) {
            b = static_cast<int>(rng.below(2));
            parity ^= b;
        }
        EXPECT_EQ(xor_flat(bits), parity);
        EXPECT_EQ(xor_aggregate(bits, random_xor_tree(n, rng)), parity);
        EXPECT_EQ(xor_aggregate(bits, flat_xor_tree(n)), parity);
    }
}

TEST(Xor, MalformedTreesAreRejected) {
    const std::vector<int> bits{1, 0, 1};
    const XorTree dup = XorTree::make_pair(XorTree::make_leaf(0), XorTree::make_pair(XorTree::make_leaf(1), XorTree::make_leaf(1)));
    EXPECT_THROW(xor_aggregate(bits, dup), Error);
    const XorTree missing = XorTree::make_pair(XorTree::make_leaf(0), XorTree::make_leaf(1));
    EXPECT_THROW(xor_aggregate(bits, missing), Error);
    EXPECT_THROW(xor_flat({0, 2}), Error);
}

// ------------------------------------------------------------------ EPR

TEST(Epr, EveryBranchMatchesDenseSimulation) {
    RandomStream gen(21);
    for (std::size_t n = 2; n <= 8; ++n) {
        const Dataset d = random_dataset(n, gen);
        const double theta = 0.7;
        for (std::uint64_t pattern = 0; pattern < (1ULL << (n - 1)); ++pattern) {
            RoundOptions opt;
            opt.forced_bits = bits_of(pattern, n - 1);
            RandomStream rng(1);
            const RoundResult rr = epr_round(d, theta, rng, 0, nullptr, opt);
            const StateVector expect = dense_epr(d, theta, *opt.forced_bits);
            EXPECT_LE(phase_invariant_distance(rr.qubit, expect), 1e-10);
            EXPECT_LE(std::abs(oracle::wrap(relative_phase(rr.qubit) - relative_phase(expect))), 1e-10);
            EXPECT_NEAR(oracle::wrap(relative_phase(rr.qubit) + theta * theta * d.mean()), 0.0, 1e-12);
            EXPECT_EQ(rr.parity, std::popcount(pattern) % 2);
        }
    }
}

TEST(Epr, TraceCarriesOneBitPerNonBaseParticle) {
    const Dataset d({0.1, -0.4, 0.3, 0.9, 0.0});
    EprConfig cfg;
    cfg.theta = 0.5;
    cfg.ideal = true;
    const auto out = run_epr_mean_protocol(d, cfg, 3);
    EXPECT_EQ(out.trace.count(EventKind::kBit), d.size() - 1);
    for (const auto &m : out.trace.entries()) EXPECT_TRUE(*m.bit == 0 || *m.bit == 1);
    EXPECT_NEAR(out.report.mu_e, d.mean(), 1e-12);
    EXPECT_EQ(out.report.branch_convention, 0);
}

TEST(Epr, SampledEstimateAndTrace) {
    const Dataset d = generate_uniform_with_mean(6, 0.4, 2);
    EprConfig cfg;
    cfg.theta = 1.0;
    cfg.alpha = 2000;
    const auto out = run_epr_mean_protocol(d, cfg, 8);
    EXPECT_LE(std::abs(out.report.mu_e - 0.4), out.report.half_width);
    EXPECT_EQ(out.trace.count(EventKind::kBit), 2000u * 5u);
    EXPECT_EQ(out.trace.count(EventKind::kMeasure), 2000u);
    for (std::uint64_t round : {0u, 1u, 1999u}) EXPECT_EQ(out.trace.count(EventKind::kBit, round), 5u);
    EXPECT_EQ(out.trace.to_jsonl(), run_epr_mean_protocol(d, cfg, 8).trace.to_jsonl());
}

// ------------------------------------------------------------ distributed

TEST(Distributed, BranchPairMatchesDenseRegister) {
    RandomStream gen(44);
    for (std::size_t eta = 1; eta <= 3; ++eta) {
        for (std::size_t n : {2u, 4u, 8u}) {
            const Dataset d = random_dataset(n, gen);
            DistributedConfig cfg;
            cfg.theta = 0.4;
            cfg.eta = eta;
            const std::uint64_t r = 2;
            const auto nodes = distributed_nodes(d, cfg, r);
            for (std::uint64_t pattern = 0; pattern < (1ULL << (eta - 1)); ++pattern) {
                RoundOptions opt;
                opt.forced_bits = bits_of(pattern, eta - 1);
                opt.force_success = true;
                RandomStream rng(0);
                const RoundResult rr = distributed_round(nodes, rng, 0, nullptr, opt);
                const StateVector expect = dense_distributed(*nodes[0].program, eta, r, *opt.forced_bits);
                EXPECT_LE(phase_invariant_distance(rr.qubit, expect), 1e-10) << eta << " " << n;
                EXPECT_LE(std::abs(oracle::wrap(relative_phase(rr.qubit) - relative_phase(expect))), 1e-10);
            }
        }
    }
}

TEST(Distributed, PhaseMultipliesByEtaOnUniformData) {
    const Dataset d = generate_constant(8, 0.35);
    const double theta = 0.3;
    const std::uint64_t r = 5;
    const kick::KickProgram prog(d, theta, kick::GammaMode::kExactArcsin);
    RandomStream srng(1);
    const double serial = kick::run_pipeline(prog, r, 0, srng).theta_raw;
    for (std::size_t eta : {2u, 4u}) {
        DistributedConfig cfg;
        cfg.theta = theta;
        cfg.eta = eta;
        const auto nodes = distributed_nodes(d, cfg, r);
        RandomStream rng(7);
        RoundOptions opt;
        opt.max_restarts = 0;  // uniform data never fails
        const RoundResult rr = distributed_round(nodes, rng, 0, nullptr, opt);
        EXPECT_NEAR(oracle::wrap(relative_phase(rr.qubit) - double(eta) * serial), 0.0, 1e-9);
        EXPECT_EQ(rr.restarts, 0u);
    }
}

// Every local post-selection succeeds with probability (1 + |D0|^(2 eta r))/2;
// restarts per round are geometric.
TEST(Distributed, RestartFrequencyMatchesExactSuccessProbability) {
    const Dataset d({0.9, -0.8, 0.7, -0.2});
    DistributedConfig cfg;
    cfg.theta = 0.8;
    cfg.eta = 3;
    const std::uint64_t r = 2;
    const auto nodes = distributed_nodes(d, cfg, r);
    const double q = nodes[0].program->branch_success_probability();
    const double p = 0.5 * (1.0 + std::pow(q, double(cfg.eta * r)));
    ASSERT_LT(p, 0.9);
    constexpr int kRounds = 3000;
    std::uint64_t restarts = 0;
    for (int t = 0; t < kRounds; ++t) {
        RandomStream rng(derive_seed(5, t));
        restarts += distributed_round(nodes, rng, t, nullptr).restarts;
    }
    const double mean = restarts / double(kRounds);
    const double expect = (1.0 - p) / p;
    const double sd = std::sqrt((1.0 - p) / (p * p) / kRounds);
    EXPECT_NEAR(mean, expect, 4.0 * sd);
}

TEST(Distributed, FailureConstantMatchesClosedForm) {
    const Dataset d({0.5, -0.25, 1.0, 0.0});
    for (double theta : {0.1, 0.3}) {
        const kick::KickProgram prog(d, theta, kick::GammaMode::kExactArcsin);
        std::vector<double> g;
        for (double v : d.values()) g.push_back(std::asin(theta * v));
        const double k = 0.5 * (1.0 - std::norm(oracle::kick_zero_closed_form(g))) / std::pow(theta, 4);
        EXPECT_NEAR(failure_constant(prog), k, 1e-9 * k);
    }
    EXPECT_LE(failure_constant(kick::KickProgram(generate_constant(4, 0.2), 0.5, kick::GammaMode::kExactArcsin)), 1e-12);
}

TEST(Distributed, EtaBoundScalesAsThetaToMinusFour) {
    const double c = 0.37;
    std::uint64_t prev = 0;
    for (double theta : {0.4, 0.2, 0.1, 0.05}) {
        const std::uint64_t b = eta_bound(theta, c);
        EXPECT_NEAR(double(b), c / std::pow(theta, 4), 1.0);
        EXPECT_GT(b, prev);
        if (prev > 100) {
            EXPECT_NEAR(double(b) / double(prev), 16.0, 0.2);
        }
        prev = b;
    }
    EXPECT_EQ(eta_bound(0.1, std::numeric_limits<double>::infinity()), std::numeric_limits<std::uint64_t>::max());
    EXPECT_NEAR(eta_budget_coeff(2.0, 10, 0.5), 0.025, 1e-15);
}

TEST(Distributed, BoundViolationUnlessForced) {
    const Dataset d({1.0, -1.0, 1.0, 1.0});
    DistributedConfig cfg;
    cfg.theta = 1.0;
    cfg.params.r = 1;
    const kick::KickProgram prog(d, cfg.theta, kick::GammaMode::kExactArcsin);
    const std::uint64_t bound = eta_bound(cfg.theta, eta_budget_coeff(failure_constant(prog), 1, cfg.failure_budget));
    ASSERT_LT(bound, 50u);
    cfg.eta = bound + 1;
    try {
        run_distributed_estimator(d, cfg, 1);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kBoundViolation);
    }
    cfg.eta = bound;
    cfg.params.alpha = 20;
    EXPECT_EQ(run_distributed_estimator(d, cfg, 1).report.eta_bound, bound);
}

TEST(Distributed, IdealModeEstimatesArcsinMean) {
    const Dataset d = generate_constant(4, -0.3);
    for (std::uint64_t eta : {1u, 2u, 3u}) {
        DistributedConfig cfg;
        cfg.theta = 0.2;
        cfg.eta = eta;
        cfg.params.r = 3;
        cfg.params.ideal = true;
        const auto out = run_distributed_estimator(d, cfg, 0);
        EXPECT_NEAR(out.report.mu_e, std::asin(-0.06) / 0.2, 1e-12) << eta;
    }
}

TEST(Distributed, TraceIsDeterministicAndOneBitPerNode) {
    const Dataset d = generate_uniform_with_mean(8, 0.02, 6);
    DistributedConfig cfg;
    cfg.theta = 0.3;
    cfg.eta = 4;
    cfg.params.r = 3;
    cfg.params.alpha = 50;
    cfg.force = true;
    const auto a = run_distributed_estimator(d, cfg, 17);
    const auto b = run_distributed_estimator(d, cfg, 17);
    EXPECT_EQ(a.trace.to_jsonl(), b.trace.to_jsonl());
    EXPECT_EQ(a.report.mu_e, b.report.mu_e);
    EXPECT_EQ(a.trace.count(EventKind::kBit), 50u * 3u);
    for (std::uint64_t round = 0; round < 50; ++round) EXPECT_EQ(a.trace.count(EventKind::kBit, round), 3u);
    for (const auto &m : a.trace.entries()) {
        if (m.event == EventKind::kRestart) {
            EXPECT_FALSE(m.bit.has_value());
        } else {
            EXPECT_TRUE(*m.bit == 0 || *m.bit == 1);
        }
    }
    const std::string line = a.trace.to_jsonl().substr(0, a.trace.to_jsonl().find('\n'));
    EXPECT_NE(line.find("\"event\""), std::string::npos);
    EXPECT_EQ(a.trace.to_jsonl().back(), '\n');
}

TEST(Distributed, ShardsMustBePowersOfTwo) {
    DistributedConfig cfg;
    cfg.eta = 3;
    cfg.shard = true;
    EXPECT_THROW(distributed_nodes(generate_constant(8, 0.1), cfg, 1), Error);
    cfg.eta = 2;
    EXPECT_EQ(distributed_nodes(generate_constant(8, 0.1), cfg, 1)[1].program->data_sites(), 2u);
}

// ---------------------------------------------------------------- ladder

TEST(Ladder, PairStepDoublesAgainstExplicitMatrices) {
    RandomStream rng(3);
    for (int t = 0; t < 50; ++t) {
        const double a = rng.uniform(-pi, pi), b = rng.uniform(-pi, pi);
        // CNOT (first controls second) on (|0> + e^{ia}|1>)(|0> + e^{ib}|1>)/2.
        const oracle::Vec in{0.5, 0.5 * std::polar(1.0, b), 0.5 * std::polar(1.0, a), 0.5 * std::polar(1.0, a + b)};
        oracle::Mat cnot(4);
        cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
        const oracle::Vec out = cnot * in;
        // Second qubit reads 0: components 00 and 10.
        const double p0 = std::norm(out[0]) + std::norm(out[2]);
        const auto res = ladder_pair_project(phase_qubit(a), phase_qubit(b), 0);
        EXPECT_NEAR(res.probability, p0, 1e-15);
        EXPECT_NEAR(res.probability, 0.5, 1e-15);
        EXPECT_NEAR(oracle::wrap(relative_phase(res.first) - std::arg(out[2] / out[0])), 0.0, 1e-12);
        EXPECT_NEAR(oracle::wrap(relative_phase(res.first) - (a + b)), 0.0, 1e-12);
    }
}

TEST(Ladder, EqualPhasesDoubleAndHalfSurvive) {
    RandomStream rng(10);
    const std::vector<double> phases(64, 0.05);
    const LadderReport rep = cnot_doubling_ladder(phases, 3, rng);
    for (const auto &lv : rep.levels) {
        EXPECT_LE(lv.max_phase_error, 1e-12);
        for (double ph : lv.survivor_phases) EXPECT_NEAR(ph, 0.05 * double(1ULL << (lv.level + 1)), 1e-12);
    }
    std::size_t pairs = 0, wins = 0;
    for (int t = 0; t < 2000; ++t) {
        RandomStream r(derive_seed(99, t));
        const auto x = cnot_doubling_ladder({0.3, -0.2}, 1, r);
        pairs += x.total_pairs;
        wins += x.total_successes;
    }
    EXPECT_NEAR(wins / double(pairs), 0.5, 4.0 * 0.5 / std::sqrt(double(pairs)));
}

TEST(Ladder, OddCountDiscardsLeftover) {
    RandomStream rng(1);
    const auto rep = cnot_doubling_ladder({0.1, 0.2, 0.3}, 1, rng);
    ASSERT_EQ(rep.levels.size(), 1u);
    EXPECT_TRUE(rep.levels[0].leftover_discarded);
    EXPECT_EQ(rep.levels[0].pairs, 1u);
}

}  // namespace
