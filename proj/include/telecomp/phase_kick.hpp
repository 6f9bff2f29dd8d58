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
 * Serial phase-kick mean estimator.
 *
 * One iteration acts on an n-site data register (N = 2^n values), conditioned
 * on an ancilla:
 *
 *   (i)   WH                      -> uniform amplitude 1/sqrt N
 *   (ii)  basis state j gains gamma_j, sin gamma_j = theta * v_j
 *   (iii) WH
 *   (iv)  basis state 0 gains pi
 *   (v)   WH
 *   (vi)  basis state j gains gamma_j (same sign as (ii))
 *   (vii) WH
 *   (viii) measure whether the register is back in |0...0>; on failure the
 *         whole pipeline restarts.
 *
 * The branch carrying the condition picks up a phase of pi + 2<x> + O(theta^3)
 * per iteration, with <x> = theta * mean. r iterations accumulate
 * r*pi + 2r<x>; the r*pi term is removed at readout.
 */

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

#include "telecomp/dataset.hpp"
#include "telecomp/qsim.hpp"
#include "telecomp/random.hpp"
#include "telecomp/report.hpp"

namespace telecomp::kick {

using qsim::Amplitude;
using qsim::StateVector;

enum class GammaMode { kExactArcsin, kLinear };

inline constexpr double kDefaultKappa = std::numbers::pi / 4.0;
/// Documented constant C of the step budget
///   elementary_step_count <= C * alpha * N * log2(N) * r.
inline constexpr double kStepBoundConstant = 8.0;

/// Phase for scaled datum x: arcsin(x) (exact) or x (linear).
double gamma_of(double x, GammaMode mode = GammaMode::kExactArcsin);

/// Wraps an angle into (-pi, pi].
double wrap_phase(double angle);

struct KickParams {
    /// Iteration count; 0 derives r = max(1, floor(kappa / theta^3)).
    std::uint64_t r = 0;
    /// Upper clamp on the derived r; 0 means none.
    std::uint64_t r_cap = 0;
    std::uint64_t alpha = 400;
    double kappa = kDefaultKappa;
    std::uint64_t max_restarts = 10'000;
    GammaMode gamma_mode = GammaMode::kExactArcsin;
    /// Read the phase from the exact amplitudes instead of sampling.
    bool ideal = false;
    /// Test hook: flips the sign of the step (vi) rotation.
    bool corrupt_gamma_sign = false;
};

std::uint64_t resolve_r(const KickParams &params, double theta);

/// Validates theta in (0, 1] and theta * max|v| <= 1.
void validate_scale(const Dataset &data, double theta);

/// The seven unitary steps of one iteration, prebuilt for reuse.
class KickProgram {
  public:
    /// Steps act on local sites 0..n-1 of a bare data register.
    KickProgram(const Dataset &data, double theta, GammaMode mode, bool corrupt_gamma_sign = false);

    std::size_t data_sites() const noexcept { return data_sites_; }
    double theta() const noexcept { return theta_; }
    const std::array<qsim::Circuit, 7> &local_steps() const noexcept { return local_steps_; }
    /// All seven steps on the bare register.
    const qsim::Circuit &local_circuit() const noexcept { return local_circuit_; }
    /// Steps on sites 1..n controlled by site 0 (ancilla).
    const std::array<qsim::Circuit, 7> &controlled_steps() const noexcept { return controlled_steps_; }

    /// Gates of one iteration plus the n-site measurement of step (viii).
    std::uint64_t per_iteration_steps() const noexcept { return local_circuit_.cost() + data_sites_; }

    /// Steps (i)..(vii) applied to |0...0>: the conditioned branch's data
    /// register after one iteration.
    const StateVector &zero_response() const noexcept { return zero_response_; }
    /// Component 0 of zero_response(): the branch factor on success.
    Amplitude branch_factor() const { return zero_response_.amplitude(0); }
    /// Probability that step (viii) finds |0...0> on the conditioned branch.
    double branch_success_probability() const { return std::norm(branch_factor()); }

  private:
    std::size_t data_sites_;
    double theta_;
    std::array<qsim::Circuit, 7> local_steps_;
    qsim::Circuit local_circuit_;
    std::array<qsim::Circuit, 7> controlled_steps_;
    StateVector zero_response_;
};

/// Conditional data-register amplitudes after each of steps (i)..(vii),
/// divided by the ancilla-1 |0...0> amplitude at entry.
struct IterationTrace {
    std::array<std::vector<Amplitude>, 7> steps;
    /// Probability that step (viii) finds |0...0> on the conditioned branch.
    double branch_success_probability = 0.0;

    const std::vector<Amplitude> &a() const { return steps[1]; }
    const std::vector<Amplitude> &w() const { return steps[2]; }
    Amplitude final_zero_amplitude() const { return steps[6].at(0); }
};

/// Register layout: ancilla on site 0, data on sites 1..n.
StateVector initial_pipeline_state(std::size_t data_sites);

/// Steps (i)..(vii) conditioned on the ancilla. The data register must be
/// |0...0> on both ancilla branches at entry.
void kick_iteration(StateVector &state, const KickProgram &program, IterationTrace *trace = nullptr);
void kick_iteration(StateVector &state, const Dataset &data, double theta, GammaMode mode = GammaMode::kExactArcsin,
                    IterationTrace *trace = nullptr);

struct PostselectResult {
    bool success = false;
    /// Exact probability of finding the data register in |0...0>.
    double success_probability = 0.0;
    StateVector posterior;
};

/// Step (viii): measures the data register (sites 1..n).
PostselectResult postselect_zero(const StateVector &state, RandomStream &rng);

struct PipelineResult {
    /// (a0|0> + a1|1>), ancilla after r successful iterations.
    StateVector qubit;
    std::uint64_t r = 0;
    /// arg(a1 / a0), wrapped.
    double theta_raw = 0.0;
    /// r*pi wrapped.
    double r_pi = 0.0;
    /// theta_raw - r*pi, wrapped.
    double theta_signal = 0.0;
    std::uint64_t restarts = 0;
    std::uint64_t iterations_executed = 0;
    std::uint64_t elementary_steps = 0;
};

/// kDense simulates ancilla plus data register gate by gate. kReduced keeps
/// only the ancilla: after a successful step (viii) the data register is
/// |0...0> on both branches, so every iteration starts from the same product
/// state and its effect is the precomputed zero_response(). Both engines draw
/// one uniform per step (viii) with the same decision rule and agree to
/// rounding.
enum class PipelineEngine { kReduced, kDense };

/// Runs r iterations with post-selection; any failure restarts from
/// iteration 1. Throws kCapExceeded after max_restarts restarts.
PipelineResult run_pipeline(const KickProgram &program, std::uint64_t r, std::uint64_t max_restarts, RandomStream &rng,
                            PipelineEngine engine = PipelineEngine::kReduced);
PipelineResult run_pipeline(const Dataset &data, double theta, const KickParams &params, RandomStream &rng,
                            PipelineEngine engine = PipelineEngine::kReduced);

/// Signal phase of r successful iterations, r * arg(-branch_factor), without
/// wrapping. This is the noise-free readout used by ideal mode.
double ideal_signal_phase(const KickProgram &program, std::uint64_t r);

/// Yields a fresh single-qubit system for readout trial `trial`.
using QubitPreparer = std::function<StateVector(std::uint64_t trial, RandomStream &rng)>;

struct PhaseReadout {
    double theta_hat = 0.0;
    double half_width = 0.0;
    std::uint64_t alpha = 0;
    std::uint64_t trials_offset0 = 0;
    std::uint64_t zeros_offset0 = 0;
    std::uint64_t trials_offset90 = 0;
    std::uint64_t zeros_offset90 = 0;
};

/// Interference readout of the relative phase of (|0> + e^{i Theta}|1>).
///
/// Even trials measure after M directly (P0 = cos^2(Theta/2)); odd trials add
/// a known pi/2 first (P0 = (1 - sin Theta)/2), which fixes sign and quadrant.
/// Trial t draws from its own stream seeded by derive_seed(master, t), where
/// master is the next value of `rng`.
/// `on_measure`, when set, sees (trial, observed bit) after each measurement.
PhaseReadout readout_phase(const QubitPreparer &preparer, std::uint64_t alpha, RandomStream &rng,
                           const std::function<void(std::uint64_t, int)> &on_measure = nullptr);

/// Half-width constant c of c/sqrt(alpha) (two standard deviations of the
/// worst-case readout error).
inline constexpr double kReadoutHalfWidthConstant = 2.0 * std::numbers::sqrt2;

/// Step budget C * alpha * N * log2(N) * r (log2 N taken as at least 1).
std::uint64_t step_bound(std::uint64_t alpha, std::size_t n_values, std::uint64_t r);

/// Serial estimate mu_e = Theta_signal / (2 r theta). Throws kUnwrapWindow
/// when the read signal phase lies within one half-width of +-pi.
/// Ideal mode takes the phase from ideal_signal_phase() and reports zero
/// half-width; r may then be arbitrarily large.
EstimateReport estimate_mean_serial(const Dataset &data, double theta, const KickParams &params, std::uint64_t seed);

struct ScheduleParams {
    double theta0 = 0.5;
    double factor = 1.5;
    double threshold_coeff = 0.1;
    double theta_floor = 1e-6;
};

struct ScheduleResult {
    double theta = 0.0;
    double mu_e = 0.0;
    std::uint64_t reductions = 0;
    bool floor_reached = false;
    std::vector<double> thetas;
    std::vector<double> estimates;
};

/// Lowers theta by `factor` until |estimate(theta)| > threshold_coeff * theta^2.
ScheduleResult theta_schedule(const std::function<double(double)> &estimator, const ScheduleParams &params = {});

/// Closed-form per-step aggregates of one iteration, by direct summation.
struct AmplitudeOracle {
    /// a_j = e^{i gamma_j} / sqrt N after step (ii).
    std::vector<Amplitude> a;
    /// Zeroth amplitude after step (iii): <e^{i gamma}>.
    Amplitude w0;
    /// Amplitudes after step (v): a_j - 2 w0 / sqrt N.
    std::vector<Amplitude> after_v;
    /// Zeroth amplitude after step (vii): <e^{2 i gamma}> - 2 w0^2.
    Amplitude final_zero;
    /// 1 - |final_zero|^2, failure probability of step (viii) on the branch.
    double failure_probability = 0.0;
    /// Mean of the scaled data, <x>.
    double mean_x = 0.0;
};

AmplitudeOracle amplitude_oracle(const Dataset &data, double theta, GammaMode mode = GammaMode::kExactArcsin);

}  // namespace telecomp::kick
