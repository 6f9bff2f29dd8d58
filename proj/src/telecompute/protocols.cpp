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
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "telecomp/error.hpp"
#include "telecomp/telecompute.hpp"

namespace telecomp::net {

using ghz::Branch;
using ghz::BranchPairState;
using std::numbers::pi;

LocalWorkResult processor_quantum_work(const ProcessorNode &node, BranchPairState &state, RandomStream &rng,
                                       bool force_success) {
    if (!state.has_cat_bit(node.slot)) fail(ErrorCode::kContract,
            "processor " + std::to_string(node.id) + ": cat bit already consumed");
    if (node.role == NodeRole::kEprParticle) {
        state.rotate_branch_phase(Branch::kZero, node.theta * node.theta * node.value / static_cast<double>(node.particles));
        return LocalWorkResult{true, 0};
    }
    require(node.program != nullptr, ErrorCode::kInvalidArgument, "kick processor without a program");
    const kick::KickProgram &prog = *node.program;
    const std::size_t n = prog.data_sites();
    if (!state.has_local_register(node.slot)) state.attach_local_register(node.slot, n);
    std::vector<std::size_t> sites(n);
    std::iota(sites.begin(), sites.end(), 0);
    const std::vector<int> zeros(n, 0);
    LocalWorkResult out;
    for (std::uint64_t it = 0; it < node.r; ++it) {
        ++out.iterations;
        state.apply_local_on_branch(node.slot, Branch::kOne, prog.local_circuit());
        const auto rec = force_success ? state.project_local(node.slot, sites, zeros)
                                       : state.measure_local(node.slot, sites, rng);
        if (!rec.all_zero()) {
            out.success = false;
            return out;
        }
    }
    return out;
}

ClassicalMessage processor_local_step(const ProcessorNode &node, BranchPairState &state, RandomStream &rng,
                                      std::uint64_t round, std::optional<int> forced_bit) {
    if (!state.has_cat_bit(node.slot)) fail(ErrorCode::kContract,
            "processor " + std::to_string(node.id) + ": cat bit already consumed");
    const auto rec = forced_bit ? state.project_cat_bit(node.slot, *forced_bit) : state.m_and_measure_cat_bit(node.slot, rng);
    return ClassicalMessage{EventKind::kBit, node.id, round, rec.bit};
}

namespace {

std::vector<RandomStream> node_streams(std::size_t count, const RandomStream &round_rng) {
    std::vector<RandomStream> out;
    out.reserve(count);
    for (std::size_t j = 1; j < count; ++j) out.emplace_back(derive_seed(round_rng.seed(), j));
    return out;
}

// Node 0 uses the round stream itself.
RandomStream &stream_for(std::size_t j, RandomStream &round_rng, std::vector<RandomStream> &others) {
    return j == 0 ? round_rng : others[j - 1];
}

// Measurement and messaging half of a round, shared by both protocols.
RoundResult finish_round(const std::vector<ProcessorNode> &nodes, BranchPairState &state, RandomStream &round_rng,
                         std::vector<RandomStream> &others, std::uint64_t round, NetworkTrace *trace,
                         const RoundOptions &options) {
    if (options.forced_bits) {
        require(options.forced_bits->size() + 1 == nodes.size(), ErrorCode::kInvalidArgument,
                "forced bits must cover nodes 1..eta-1");
    }
    BaseStationState base;
    RoundResult out{StateVector(0), {}, 0, 0, {}};
    for (std::size_t j = 1; j < nodes.size(); ++j) {
        std::optional<int> forced;
        if (options.forced_bits) forced = (*options.forced_bits)[j - 1];
        const ClassicalMessage m = processor_local_step(nodes[j], state, stream_for(j, round_rng, others), round, forced);
        if (trace != nullptr) trace->record(m);
        base.receive(m);
        out.bits.push_back(*m.bit);
    }
    StateVector q = state.remaining_qubit();
    // Odd parity: the |1> amplitude picked up a net sign; undo it.
    if (base.parity == 1) q.rotate_basis_phase(1, pi);
    base.qubit = q;
    out.parity = base.parity;
    out.qubit = std::move(q);
    return out;
}

}  // namespace

std::vector<ProcessorNode> epr_nodes(const Dataset &data, double theta) {
    require(data.size() >= 2, ErrorCode::kInvalidArgument, "the particle protocol needs at least two data values");
    require(std::isfinite(theta) && theta > 0.0 && theta <= 1.0, ErrorCode::kInvalidArgument, "theta must lie in (0, 1]");
    std::vector<ProcessorNode> nodes(data.size());
    for (std::size_t j = 0; j < data.size(); ++j) {
        nodes[j].id = j;
        nodes[j].slot = j;
        nodes[j].role = NodeRole::kEprParticle;
        nodes[j].theta = theta;
        nodes[j].r = 1;
        nodes[j].value = data[j];
        nodes[j].particles = data.size();
    }
    return nodes;
}

RoundResult epr_round(const Dataset &data, double theta, RandomStream &rng, std::uint64_t round, NetworkTrace *trace,
                      const RoundOptions &options) {
    const auto nodes = epr_nodes(data, theta);
    auto others = node_streams(nodes.size(), rng);
    BranchPairState state = BranchPairState::new_cat(nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j) processor_quantum_work(nodes[j], state, stream_for(j, rng, others));
    RoundResult out = finish_round(nodes, state, rng, others, round, trace, options);
    out.node_iterations.assign(nodes.size(), 1);
    return out;
}

namespace {

void fill_common(EstimateReport &rep, double theta, std::uint64_t seed, std::uint64_t n, bool ideal) {
    rep.theta = theta;
    rep.theta_schedule = {theta};
    rep.seed = seed;
    rep.n = n;
    rep.ideal = ideal;
}

}  // namespace

ProtocolOutput run_epr_mean_protocol(const Dataset &data, const EprConfig &config, std::uint64_t seed) {
    epr_nodes(data, config.theta);  // validates
    ProtocolOutput out;
    EstimateReport &rep = out.report;
    rep.protocol = "epr";
    fill_common(rep, config.theta, seed, data.size(), config.ideal);
    rep.r = 1;
    rep.eta = data.size();
    rep.branch_convention = 0;
    const double t2 = config.theta * config.theta;
    // Per round: one rotation per particle and M on every non-base particle.
    const std::uint64_t steps_per_round = 2 * data.size() - 1;
    RandomStream rng(seed);
    double theta_hat = 0.0;
    std::uint64_t rounds = 0;
    if (config.ideal) {
        theta_hat = relative_phase(epr_round(data, config.theta, rng, 0, &out.trace).qubit);
        rounds = 1;
        rep.alpha = 1;
    } else {
        const kick::QubitPreparer prep = [&](std::uint64_t t, RandomStream &trial_rng) {
            return epr_round(data, config.theta, trial_rng, t, &out.trace).qubit;
        };
        const auto ro = kick::readout_phase(prep, config.alpha, rng, [&](std::uint64_t t, int bit) {
            out.trace.record(ClassicalMessage{EventKind::kMeasure, 0, t, bit});
        });
        theta_hat = ro.theta_hat;
        rounds = config.alpha;
        rep.alpha = config.alpha;
        rep.phase_half_width = ro.half_width;
    }
    // Branch 0 carries the signal: arg(a1/a0) = -theta^2 mu.
    const double signal = kick::wrap_phase(-theta_hat);
    if (!(std::abs(signal) <= pi - rep.phase_half_width)) fail(ErrorCode::kUnwrapWindow,
            "recovered phase is within one half-width of +-pi");
    rep.phase_estimate = signal;
    rep.mu_e = signal / t2;
    rep.half_width = rep.phase_half_width / t2;
    rep.iterations_executed = rounds;
    rep.elementary_step_count = rounds * steps_per_round;
    rep.steps_per_processor = rounds * 2;
    rep.step_bound = kick::step_bound(rep.alpha, data.size(), 1);
    rep.within_step_bound = rep.elementary_step_count <= rep.step_bound;
    return out;
}

std::vector<ProcessorNode> distributed_nodes(const Dataset &data, const DistributedConfig &config, std::uint64_t r) {
    require(config.eta >= 1, ErrorCode::kInvalidArgument, "eta must be at least 1");
    data.require_power_of_two("distributed estimator");
    std::vector<ProcessorNode> nodes(config.eta);
    std::shared_ptr<const kick::KickProgram> shared;
    if (!config.shard) {
        shared = std::make_shared<kick::KickProgram>(data, config.theta, config.params.gamma_mode,
                                                     config.params.corrupt_gamma_sign);
    }
    for (std::size_t j = 0; j < config.eta; ++j) {
        ProcessorNode &nd = nodes[j];
        nd.id = j;
        nd.slot = j;
        nd.role = NodeRole::kKickProcessor;
        nd.theta = config.theta;
        nd.r = r;
        if (config.shard) {
            const Dataset piece = data.shard(j, config.eta);
            piece.require_power_of_two("distributed shard");
            nd.program = std::make_shared<kick::KickProgram>(piece, config.theta, config.params.gamma_mode,
                                                             config.params.corrupt_gamma_sign);
        } else {
            nd.program = shared;
        }
    }
    return nodes;
}

RoundResult distributed_round(const std::vector<ProcessorNode> &nodes, RandomStream &rng, std::uint64_t round,
                              NetworkTrace *trace, const RoundOptions &options) {
    require(!nodes.empty(), ErrorCode::kInvalidArgument, "distributed round needs at least one node");
    auto others = node_streams(nodes.size(), rng);
    std::vector<std::uint64_t> iterations(nodes.size(), 0);
    std::uint64_t restarts = 0;
    for (;;) {
        BranchPairState state = BranchPairState::new_cat(nodes.size());
        bool ok = true;
        for (std::size_t j = 0; j < nodes.size() && ok; ++j) {
            const auto work = processor_quantum_work(nodes[j], state, stream_for(j, rng, others), options.force_success);
            iterations[j] += work.iterations;
            if (!work.success) {
                ok = false;
                ++restarts;
                if (trace != nullptr) trace->record(ClassicalMessage{EventKind::kRestart, nodes[j].id, round, std::nullopt});
                if (restarts > options.max_restarts) fail(ErrorCode::kCapExceeded,
                        "distributed round exceeded " + std::to_string(options.max_restarts) + " restarts");
            }
        }
        if (!ok) continue;
        RoundResult out = finish_round(nodes, state, rng, others, round, trace, options);
        out.restarts = restarts;
        out.node_iterations = std::move(iterations);
        return out;
    }
}

double failure_constant(const kick::KickProgram &program) {
    const double t4 = std::pow(program.theta(), 4);
    return std::max(0.0, 0.5 * (1.0 - program.branch_success_probability())) / t4;
}

double eta_budget_coeff(double failure_constant, std::uint64_t r, double budget) {
    require(budget > 0.0, ErrorCode::kInvalidArgument, "failure budget must be positive");
    const double denom = failure_constant * static_cast<double>(r);
    return denom > 0.0 ? budget / denom : std::numeric_limits<double>::infinity();
}

std::uint64_t eta_bound(double theta, double budget_coeff) {
    require(std::isfinite(theta) && theta > 0.0 && theta <= 1.0, ErrorCode::kInvalidArgument, "theta must lie in (0, 1]");
    const double b = std::floor(budget_coeff / std::pow(theta, 4));
    if (!(b < 1.8e19)) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(b);
}

ProtocolOutput run_distributed_estimator(const Dataset &data, const DistributedConfig &config, std::uint64_t seed) {
    const std::uint64_t r = kick::resolve_r(config.params, config.theta);
    const auto nodes = distributed_nodes(data, config, r);
    const std::uint64_t eta = config.eta;

    double worst_k = 0.0;
    for (const auto &nd : nodes) worst_k = std::max(worst_k, failure_constant(*nd.program));
    const std::uint64_t bound = eta_bound(config.theta, eta_budget_coeff(worst_k, r, config.failure_budget));
    if (!(eta <= bound || config.force)) fail(ErrorCode::kBoundViolation,
            "eta = " + std::to_string(eta) + " exceeds the bound " + std::to_string(bound) +
                " at this theta (predicted failure budget " + std::to_string(config.failure_budget) + ")");

    ProtocolOutput out;
    EstimateReport &rep = out.report;
    rep.protocol = "distributed";
    fill_common(rep, config.theta, seed, data.size(), config.params.ideal);
    rep.r = r;
    rep.eta = eta;
    if (bound != std::numeric_limits<std::uint64_t>::max()) rep.eta_bound = bound;
    rep.branch_convention = 1;
    // eta * r * pi modulo 2 pi.
    rep.r_odd = ((eta % 2) * (r % 2)) == 1;
    rep.r_pi_correction = rep.r_odd ? pi : 0.0;

    RoundOptions opts;
    opts.max_restarts = config.params.max_restarts;
    std::vector<std::uint64_t> node_iters(eta, 0);
    auto absorb = [&](const RoundResult &rr) {
        rep.restarts += rr.restarts;
        for (std::size_t j = 0; j < eta; ++j) node_iters[j] += rr.node_iterations[j];
    };
    RandomStream rng(seed);
    double theta_hat = 0.0;
    if (config.params.ideal) {
        const RoundResult rr = distributed_round(nodes, rng, 0, &out.trace, opts);
        absorb(rr);
        theta_hat = relative_phase(rr.qubit);
        rep.alpha = 1;
    } else {
        require(config.params.alpha >= 2, ErrorCode::kInvalidArgument, "alpha must be at least 2");
        const kick::QubitPreparer prep = [&](std::uint64_t t, RandomStream &trial_rng) {
            RoundResult rr = distributed_round(nodes, trial_rng, t, &out.trace, opts);
            absorb(rr);
            return std::move(rr.qubit);
        };
        const auto ro = kick::readout_phase(prep, config.params.alpha, rng, [&](std::uint64_t t, int bit) {
            out.trace.record(ClassicalMessage{EventKind::kMeasure, 0, t, bit});
        });
        theta_hat = ro.theta_hat;
        rep.alpha = config.params.alpha;
        rep.phase_half_width = ro.half_width;
    }
    const double signal = kick::wrap_phase(theta_hat - rep.r_pi_correction);
    if (!(std::abs(signal) <= pi - rep.phase_half_width)) fail(ErrorCode::kUnwrapWindow,
            "signal phase " + std::to_string(signal) + " is within one half-width of +-pi; reduce r or eta");
    const double scale = 2.0 * static_cast<double>(r) * static_cast<double>(eta) * config.theta;
    rep.phase_estimate = signal;
    rep.mu_e = signal / scale;
    rep.half_width = rep.phase_half_width / scale;

    std::uint64_t total = 0, worst = 0, bound_steps = 0;
    for (std::size_t j = 0; j < eta; ++j) {
        const std::uint64_t s = node_iters[j] * nodes[j].program->per_iteration_steps();
        total += s;
        worst = std::max(worst, s);
        bound_steps += kick::step_bound(rep.alpha, std::size_t{1} << nodes[j].program->data_sites(), r);
        rep.iterations_executed += node_iters[j];
    }
    rep.elementary_step_count = total;
    rep.steps_per_processor = worst;
    rep.step_bound = bound_steps;
    rep.within_step_bound = total <= bound_steps;
    return out;
}

}  // namespace telecomp::net
