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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "telecomp/dataset.hpp"
#include "telecomp/phase_kick.hpp"
#include "telecomp/qsim.hpp"
#include "telecomp/telecompute.hpp"

namespace telecomp::exp {

// ------------------------------------------------------------ slope fits

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::size_t points = 0;
    /// False when fewer than two points are above the numerical floor.
    bool defined = false;
    /// Every value at or below the numerical floor.
    bool exact = false;
};

inline constexpr double kNumericalFloor = 1e-13;

/// Least-squares fit of log(y) = slope * log(x) + intercept over the
/// points with y above kNumericalFloor.
SlopeFit fit_loglog(const std::vector<double> &x, const std::vector<double> &y);

// --------------------------------------------------------------- theta sweep

/// Fixed skewed zero-mean base: b_j = 0.7 * (2u^2 - 1 - mean).
Dataset sweep_base_dataset(std::size_t n, std::uint64_t seed);
/// v = (1 - theta^2) b + theta^2, so mean(v) = theta^2 when mean(b) = 0.
Dataset rescaled_for_theta(const Dataset &base, double theta);

struct ThetaSweepPoint {
    double theta = 0.0;
    double mean = 0.0;
    double mean_x = 0.0;
    /// |Theta_1 - (pi + 2<x>)| for one iteration, from exact amplitudes.
    double phase_error = 0.0;
    /// |Theta_1 - (pi + 2<gamma>)|.
    double phase_error_gamma = 0.0;
    /// 1 - |D0|^2 on the conditioned branch.
    double failure_probability = 0.0;
    std::uint64_t r = 0;
    std::uint64_t steps_per_iteration = 0;
    /// r * steps_per_iteration: one successful preparation.
    std::uint64_t step_count = 0;
};

struct ThetaSweepResult {
    std::vector<ThetaSweepPoint> points;
    SlopeFit phase_slope;
    SlopeFit failure_slope;
    bool rescaled = true;
};

/// With `rescale` the base is mapped through rescaled_for_theta at every
/// point; otherwise `data` is used as given. Needs at least 3 points.
ThetaSweepResult sweep_theta(const Dataset &data, const std::vector<double> &thetas, bool rescale,
                             const kick::KickParams &params);

// ----------------------------------------------------------------- eta sweep

struct EtaSweepPoint {
    std::uint64_t eta = 0;
    /// Signal phase of the distributed run (wrapped).
    double distributed_phase = 0.0;
    /// eta times the serial pipeline's signal phase, wrapped.
    double expected_phase = 0.0;
    double deviation = 0.0;
    double mu_e = 0.0;
    std::uint64_t steps_total = 0;
    std::uint64_t steps_per_processor = 0;
    std::uint64_t restarts = 0;
};

struct EtaSweepResult {
    double theta = 0.0;
    std::uint64_t r = 0;
    double serial_phase = 0.0;
    std::uint64_t serial_steps = 0;
    std::vector<EtaSweepPoint> points;
};

/// Runs the serial pipeline once and the distributed estimator for every
/// eta (bound overridden), both seeded by `seed`.
EtaSweepResult sweep_eta(const Dataset &data, double theta, const std::vector<std::uint64_t> &etas,
                         const kick::KickParams &params, std::uint64_t seed);

// -------------------------------------------------------------- dense oracles

/// Dense full-register run of the distributed protocol on one branch:
/// every post-selection succeeds, cat bits of nodes 1..eta-1 read `bits`.
/// Layout per slot: [cat bit][n local sites]. Returns the recovered qubit
/// after parity correction.
qsim::StateVector dense_distributed_qubit(const kick::KickProgram &program, std::size_t eta, std::uint64_t r,
                                          const std::vector<int> &bits);

/// Dense run of the N-particle protocol on the branch with cat bits `bits`.
qsim::StateVector dense_epr_qubit(const Dataset &data, double theta, const std::vector<int> &bits);

// --------------------------------------------------------------- oracle check

struct OracleCheckItem {
    std::string name;
    double max_deviation = 0.0;
    bool passed = false;
};

struct OracleCheckReport {
    std::vector<OracleCheckItem> items;
    double tolerance = 1e-10;
    bool passed = false;
};

struct OracleCheckConfig {
    double theta = 0.1;
    kick::GammaMode gamma_mode = kick::GammaMode::kExactArcsin;
    /// Test hook: simulation flips the step (vi) rotation sign.
    bool corrupt_gamma_sign = false;
    /// Dense vs branch-pair comparison; skipped when it exceeds the dense limit.
    std::size_t eta = 2;
    std::uint64_t r = 2;
    double tolerance = 1e-10;
};

/// Traced amplitudes vs amplitude_oracle, and dense vs branch-pair on every
/// measurement branch. N <= 256.
OracleCheckReport oracle_check(const Dataset &data, const OracleCheckConfig &config);

}  // namespace telecomp::exp
