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
 * Distributed protocols over a simulated classical network.
 *
 * Processors share a cat state, one cat bit per processor. Each processor
 * does its quantum work conditioned on its own cat bit, then applies M to the
 * cat bit, measures it and sends the single bit to the base station
 * (processor 0). The base XORs the bits; odd parity means the recovered
 * qubit's |1> amplitude changed sign and is fixed with a pi rotation.
 *
 * Processors run in id order. Node 0 draws from the round stream itself and
 * node j >= 1 from derive_seed(round seed, j), so a one-node run replays the
 * serial pipeline exactly.
 */

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "telecomp/dataset.hpp"
#include "telecomp/ghz_branch.hpp"
#include "telecomp/phase_kick.hpp"
#include "telecomp/random.hpp"
#include "telecomp/report.hpp"

namespace telecomp::net {

using qsim::StateVector;

// ---------------------------------------------------------------- network

enum class EventKind { kBit, kRestart, kMeasure };

const char *event_name(EventKind kind);

/// One trace line. `bit` is empty for restart events.
struct ClassicalMessage {
    EventKind event = EventKind::kBit;
    std::uint64_t from = 0;
    std::uint64_t round = 0;
    std::optional<int> bit;
};

/// Ordered log of messages and protocol events.
class NetworkTrace {
  public:
    void record(ClassicalMessage m) { entries_.push_back(m); }
    const std::vector<ClassicalMessage> &entries() const noexcept { return entries_; }
    std::size_t count(EventKind kind) const;
    std::size_t count(EventKind kind, std::uint64_t round) const;
    /// JSON lines {"event":..,"from":..,"round":..,"bit":..}, newline-terminated.
    std::string to_jsonl() const;

  private:
    std::vector<ClassicalMessage> entries_;
};

/// Binary grouping tree over bit indices. A leaf holds one index; an inner
/// node holds exactly two children.
struct XorTree {
    std::optional<std::size_t> leaf;
    std::vector<XorTree> children;

    static XorTree make_leaf(std::size_t index);
    static XorTree make_pair(XorTree left, XorTree right);
};

/// Left-deep tree over 0..n-1 (the flat fold).
XorTree flat_xor_tree(std::size_t n);
/// Random binary tree over a random permutation of 0..n-1.
XorTree random_xor_tree(std::size_t n, RandomStream &rng);

/// Parity of `bits` evaluated along `grouping`. Throws kInvalidArgument
/// unless the tree is binary and covers every index exactly once.
int xor_aggregate(const std::vector<int> &bits, const XorTree &grouping);
int xor_flat(const std::vector<int> &bits);

struct BaseStationState {
    std::vector<ClassicalMessage> received;
    int parity = 0;
    /// Recovered qubit after parity correction.
    std::optional<StateVector> qubit;

    void receive(const ClassicalMessage &m);
};

// ------------------------------------------------------------- processors

enum class NodeRole {
    /// One particle per datum: rotate branch 0 by theta^2 v / N.
    kEprParticle,
    /// Full phase-kick pipeline on a local register, conditioned on branch 1.
    kKickProcessor,
};

struct ProcessorNode {
    std::uint64_t id = 0;
    std::size_t slot = 0;
    NodeRole role = NodeRole::kKickProcessor;
    std::uint64_t seed = 0;
    double theta = 0.0;
    std::uint64_t r = 1;
    /// kEprParticle: the datum and the particle count.
    double value = 0.0;
    std::size_t particles = 1;
    /// kKickProcessor: the prebuilt iteration for this node's data view.
    std::shared_ptr<const kick::KickProgram> program;
};

struct LocalWorkResult {
    bool success = true;
    std::uint64_t iterations = 0;
};

/// The node's quantum work on its slot. A kick processor attaches its
/// register on first use and runs r iterations with post-selection; it stops
/// at the first failure. `force_success` projects onto the success outcome
/// instead of sampling (branch enumeration).
LocalWorkResult processor_quantum_work(const ProcessorNode &node, ghz::BranchPairState &state, RandomStream &rng,
                                       bool force_success = false);

/// M on the node's cat bit, measurement, and the one-bit message to the
/// base. `forced_bit` projects instead of sampling. Throws kContract when
/// the slot was already consumed.
ClassicalMessage processor_local_step(const ProcessorNode &node, ghz::BranchPairState &state, RandomStream &rng,
                                      std::uint64_t round, std::optional<int> forced_bit = std::nullopt);

// -------------------------------------------------------------- protocols

/// One round of a protocol with optional forced branches.
struct RoundOptions {
    /// Cat bits of nodes 1..eta-1 in order.
    std::optional<std::vector<int>> forced_bits;
    /// Post-select every local measurement onto success.
    bool force_success = false;
    std::uint64_t max_restarts = 10'000;
};

struct RoundResult {
    /// Recovered qubit after parity correction.
    StateVector qubit;
    std::vector<int> bits;
    int parity = 0;
    std::uint64_t restarts = 0;
    /// Per-node iterations executed, restarts included.
    std::vector<std::uint64_t> node_iterations;
};

struct EprConfig {
    double theta = 0.1;
    std::uint64_t alpha = 400;
    bool ideal = false;
};

/// Particles for the N-particle protocol, one per datum.
std::vector<ProcessorNode> epr_nodes(const Dataset &data, double theta);

/// The base station's view of one N-particle round. Relative phase of the
/// returned qubit is -theta^2 * mean (branch 0 carries the signal).
RoundResult epr_round(const Dataset &data, double theta, RandomStream &rng, std::uint64_t round, NetworkTrace *trace,
                      const RoundOptions &options = {});

struct ProtocolOutput {
    EstimateReport report;
    NetworkTrace trace;
};

ProtocolOutput run_epr_mean_protocol(const Dataset &data, const EprConfig &config, std::uint64_t seed);

struct DistributedConfig {
    double theta = 0.1;
    std::uint64_t eta = 2;
    kick::KickParams params;
    /// Each node holds an equal contiguous shard instead of all data.
    bool shard = false;
    /// Allow eta above eta_bound.
    bool force = false;
    /// Budget on the predicted per-round failure probability used by the
    /// eta bound check.
    double failure_budget = 0.5;
};

/// Kick processors for eta nodes. Shards must themselves be powers of two.
std::vector<ProcessorNode> distributed_nodes(const Dataset &data, const DistributedConfig &config, std::uint64_t r);

/// One distributed round; any failed post-selection restarts every node.
RoundResult distributed_round(const std::vector<ProcessorNode> &nodes, RandomStream &rng, std::uint64_t round,
                              NetworkTrace *trace, const RoundOptions &options = {});

ProtocolOutput run_distributed_estimator(const Dataset &data, const DistributedConfig &config, std::uint64_t seed);

// ------------------------------------------------------------- eta bound

/// K = (1/2)(1 - |D0|^2) / theta^4: the per-iteration failure probability
/// of the cat-conditioned post-selection divided by theta^4, from the exact
/// one-iteration response. Zero for refocusing (uniform) data.
double failure_constant(const kick::KickProgram &program);

/// Budget coefficient c such that eta = c / theta^4 processors running r
/// iterations each have predicted failure eta * r * K * theta^4 = budget.
double eta_budget_coeff(double failure_constant, std::uint64_t r, double budget = 0.5);

/// floor(budget_coeff / theta^4); UINT64_MAX when the coefficient is
/// infinite.
std::uint64_t eta_bound(double theta, double budget_coeff);

// ----------------------------------------------------------------- ladder

struct LadderLevel {
    std::size_t level = 0;
    std::size_t inputs = 0;
    std::size_t pairs = 0;
    std::size_t successes = 0;
    /// A single system left without a partner, discarded.
    bool leftover_discarded = false;
    std::vector<double> survivor_phases;
    /// max |phase - (parent phase sum)| over survivors, exact amplitudes.
    double max_phase_error = 0.0;
};

struct LadderReport {
    std::vector<LadderLevel> levels;
    std::size_t total_pairs = 0;
    std::size_t total_successes = 0;
    bool ended_early = false;
    std::vector<double> final_phases;

    double success_rate() const;
};

/// Pairs survivors in order, applies CNOT (first controls second), measures
/// the second qubit in the computational basis. Bit 0 keeps the first qubit
/// with phase phi1 + phi2 (probability 1/2); bit 1 discards the pair.
/// Runs up to `levels` levels; fewer than two survivors ends it early.
LadderReport cnot_doubling_ladder(const std::vector<double> &phases, std::size_t levels, RandomStream &rng);

/// Two-system step on explicit states, for oracle checks.
struct LadderPairOutcome {
    int bit = 0;
    double probability = 0.0;
    /// First qubit after projection, second site removed.
    StateVector first;
};
LadderPairOutcome ladder_pair_project(const StateVector &q1, const StateVector &q2, int bit);

/// (|0> + e^{i phi}|1>)/sqrt 2
StateVector phase_qubit(double phi);
/// arg(a1 / a0) of a one-site state.
double relative_phase(const StateVector &q);

}  // namespace telecomp::net
