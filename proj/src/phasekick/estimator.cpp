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
#include <cstdint>
#include <string>

#include "telecomp/error.hpp"
#include "telecomp/phase_kick.hpp"

namespace telecomp::kick {

using std::numbers::pi;

PhaseReadout readout_phase(const QubitPreparer &preparer, std::uint64_t alpha, RandomStream &rng,
                           const std::function<void(std::uint64_t, int)> &on_measure) {
    require(alpha >= 2, ErrorCode::kInvalidArgument, "readout_phase: alpha must be at least 2");
    PhaseReadout out;
    out.alpha = alpha;
    const std::uint64_t master = rng.next_u64();
    for (std::uint64_t t = 0; t < alpha; ++t) {
        RandomStream trial_rng(derive_seed(master, t));
        StateVector q = preparer(t, trial_rng);
        require(q.num_sites() == 1, ErrorCode::kInternal, "readout_phase: preparer must yield one site");
        const bool shifted = (t % 2) == 1;
        if (shifted) q.rotate_basis_phase(1, pi / 2.0);
        q.apply_m(0);
        const int bit = q.measure_sites({0}, trial_rng).bits[0];
        if (on_measure) on_measure(t, bit);
        const bool zero = bit == 0;
        if (shifted) {
            ++out.trials_offset90;
            out.zeros_offset90 += zero ? 1 : 0;
        } else {
            ++out.trials_offset0;
            out.zeros_offset0 += zero ? 1 : 0;
        }
    }
    const double f0 = static_cast<double>(out.zeros_offset0) / static_cast<double>(out.trials_offset0);
    const double f90 = static_cast<double>(out.zeros_offset90) / static_cast<double>(out.trials_offset90);
    // P0 = (1 + cos Theta)/2 at offset 0 and (1 - sin Theta)/2 at offset pi/2.
    out.theta_hat = wrap_phase(std::atan2(1.0 - 2.0 * f90, 2.0 * f0 - 1.0));
    out.half_width = kReadoutHalfWidthConstant / std::sqrt(static_cast<double>(alpha));
    return out;
}

std::uint64_t step_bound(std::uint64_t alpha, std::size_t n_values, std::uint64_t r) {
    std::uint64_t log2n = 0;
    while ((std::uint64_t{1} << log2n) < n_values) ++log2n;
    const double bound = kStepBoundConstant * static_cast<double>(alpha) * static_cast<double>(n_values) *
                         static_cast<double>(std::max<std::uint64_t>(1, log2n)) * static_cast<double>(r);
    return bound >= 1.8e19 ? UINT64_MAX : static_cast<std::uint64_t>(bound);
}

EstimateReport estimate_mean_serial(const Dataset &data, double theta, const KickParams &params, std::uint64_t seed) {
    data.require_power_of_two("estimate_mean_serial");
    const KickProgram program(data, theta, params.gamma_mode, params.corrupt_gamma_sign);
    const std::uint64_t r = resolve_r(params, theta);

    EstimateReport rep;
    rep.protocol = "serial";
    rep.theta = theta;
    rep.theta_schedule = {theta};
    rep.r = r;
    rep.seed = seed;
    rep.n = data.size();
    rep.eta = 1;
    rep.ideal = params.ideal;
    rep.branch_convention = 1;
    rep.r_odd = (r % 2) == 1;
    rep.r_pi_correction = rep.r_odd ? pi : 0.0;

    double signal = 0.0;
    if (params.ideal) {
        signal = ideal_signal_phase(program, r);
        rep.alpha = 1;
        rep.iterations_executed = r;
        rep.phase_half_width = 0.0;
    } else {
        require(params.alpha >= 2, ErrorCode::kInvalidArgument, "alpha must be at least 2");
        RandomStream rng(seed);
        std::uint64_t restarts = 0, iterations = 0;
        const QubitPreparer preparer = [&](std::uint64_t, RandomStream &trial_rng) {
            auto run = run_pipeline(program, r, params.max_restarts, trial_rng);
            restarts += run.restarts;
            iterations += run.iterations_executed;
            return run.qubit;
        };
        const PhaseReadout ro = readout_phase(preparer, params.alpha, rng);
        signal = wrap_phase(ro.theta_hat - rep.r_pi_correction);
        rep.alpha = params.alpha;
        rep.restarts = restarts;
        rep.iterations_executed = iterations;
        rep.phase_half_width = ro.half_width;
        if (!(std::abs(signal) <= pi - ro.half_width)) fail(ErrorCode::kUnwrapWindow,
                "signal phase " + std::to_string(signal) +
                    " is within one half-width of +-pi; the promise |mu| <= theta^2 is violated or r is too large");
    }
    rep.phase_estimate = signal;
    rep.mu_e = signal / (2.0 * static_cast<double>(r) * theta);
    rep.half_width = rep.phase_half_width / (2.0 * static_cast<double>(r) * theta);
    rep.elementary_step_count = rep.iterations_executed * program.per_iteration_steps();
    rep.steps_per_processor = rep.elementary_step_count;
    rep.step_bound = step_bound(rep.alpha, data.size(), r);
    rep.within_step_bound = rep.elementary_step_count <= rep.step_bound;
    return rep;
}

ScheduleResult theta_schedule(const std::function<double(double)> &estimator, const ScheduleParams &params) {
    require(params.theta0 > 0.0 && params.theta0 <= 1.0, ErrorCode::kInvalidArgument, "schedule: theta0 must lie in (0, 1]");
    require(params.factor > 1.0, ErrorCode::kInvalidArgument, "schedule: factor must exceed 1");
    require(params.theta_floor > 0.0, ErrorCode::kInvalidArgument, "schedule: theta floor must be positive");
    ScheduleResult out;
    double theta = params.theta0;
    for (;;) {
        const double est = estimator(theta);
        out.thetas.push_back(theta);
        out.estimates.push_back(est);
        out.theta = theta;
        out.mu_e = est;
        if (std::abs(est) > params.threshold_coeff * theta * theta) return out;
        const double next = theta / params.factor;
        if (next < params.theta_floor) {
            out.floor_reached = true;
            return out;
        }
        theta = next;
        ++out.reductions;
    }
}

}  // namespace telecomp::kick
