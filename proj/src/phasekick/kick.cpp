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

#include <cmath>
#include <numeric>
#include <string>

#include "telecomp/error.hpp"
#include "telecomp/phase_kick.hpp"

namespace telecomp::kick {

using std::numbers::pi;

double gamma_of(double x, GammaMode mode) {
    if (!(std::isfinite(x) && std::abs(x) <= 1.0)) fail(ErrorCode::kInvalidArgument,
            "gamma_of: |x| = " + std::to_string(std::abs(x)) + " exceeds 1");
    return mode == GammaMode::kExactArcsin ? std::asin(x) : x;
}

double wrap_phase(double angle) {
    double w = std::remainder(angle, 2.0 * pi);
    if (w <= -pi) w += 2.0 * pi;
    return w;
}

std::uint64_t resolve_r(const KickParams &params, double theta) {
    if (params.r > 0) return params.r;
    require(theta > 0.0, ErrorCode::kInvalidArgument, "resolve_r: theta must be positive");
    const double raw = std::floor(params.kappa / (theta * theta * theta));
    require(raw < 1e19, ErrorCode::kInvalidArgument, "resolve_r: derived r does not fit 64 bits");
    std::uint64_t r = raw < 1.0 ? 1 : static_cast<std::uint64_t>(raw);
    if (params.r_cap > 0 && r > params.r_cap) r = params.r_cap;
    return r;
}

void validate_scale(const Dataset &data, double theta) {
    if (!(std::isfinite(theta) && theta > 0.0 && theta <= 1.0)) fail(ErrorCode::kInvalidArgument,
            "theta must lie in (0, 1], got " + std::to_string(theta));
    require(theta * data.max_abs() <= 1.0, ErrorCode::kInvalidArgument, "theta * max|v| exceeds 1");
}

namespace {

std::vector<std::size_t> site_range(std::size_t first, std::size_t count) {
    std::vector<std::size_t> s(count);
    std::iota(s.begin(), s.end(), first);
    return s;
}

}  // namespace

KickProgram::KickProgram(const Dataset &data, double theta, GammaMode mode, bool corrupt_gamma_sign)
    : data_sites_(data.log2_size()), theta_(theta), zero_response_(data.log2_size()) {
    validate_scale(data, theta);
    const auto sites = site_range(0, data_sites_);
    std::vector<double> gammas(data.size());
    for (std::size_t j = 0; j < data.size(); ++j) gammas[j] = gamma_of(theta * data[j], mode);
    std::vector<double> second = gammas;
    if (corrupt_gamma_sign) {
        for (double &g : second) g = -g;
    }
    local_steps_[0] = qsim::wh(sites);
    local_steps_[1] = qsim::Circuit{qsim::diagonal_phase(sites, gammas)};
    local_steps_[2] = qsim::wh(sites);
    local_steps_[3] = qsim::Circuit{qsim::basis_phase(sites, 0, pi)};
    local_steps_[4] = qsim::wh(sites);
    local_steps_[5] = qsim::Circuit{qsim::diagonal_phase(sites, std::move(second))};
    local_steps_[6] = qsim::wh(sites);
    for (std::size_t k = 0; k < local_steps_.size(); ++k) {
        local_circuit_.append(local_steps_[k]);
        controlled_steps_[k] = qsim::controlled(qsim::shifted(local_steps_[k], 1), qsim::Control{0, true});
    }
    zero_response_.apply(local_circuit_);
}

StateVector initial_pipeline_state(std::size_t data_sites) {
    StateVector s(data_sites + 1);
    s.apply_m(0);
    return s;
}

namespace {

std::vector<Amplitude> branch_one_register(const StateVector &state, std::size_t data_sites, Amplitude scale) {
    const std::uint64_t n_values = std::uint64_t{1} << data_sites;
    std::vector<Amplitude> out(n_values);
    for (std::uint64_t j = 0; j < n_values; ++j) out[j] = state.amplitude(n_values + j) / scale;
    return out;
}

}  // namespace

void kick_iteration(StateVector &state, const KickProgram &program, IterationTrace *trace) {
    const std::size_t n = program.data_sites();
    if (state.num_sites() != n + 1) fail(ErrorCode::kInvalidArgument,
            "kick_iteration: state must hold one ancilla and " + std::to_string(n) + " data sites");
    const auto data = site_range(1, n);
    const double p_zero = state.probability_of_bits(data, std::vector<int>(n, 0));
    require(std::abs(p_zero - 1.0) <= 1e-10, ErrorCode::kContract, "kick_iteration: data register is not |0...0> at entry");

    const std::uint64_t n_values = std::uint64_t{1} << n;
    const Amplitude entry = state.amplitude(n_values);
    if (trace != nullptr) {
        require(std::abs(entry) > 0.0, ErrorCode::kContract, "kick_iteration: nothing to trace on the ancilla-1 branch");
    }
    for (std::size_t k = 0; k < 7; ++k) {
        state.apply(program.controlled_steps()[k]);
        if (trace != nullptr) trace->steps[k] = branch_one_register(state, n, entry);
    }
    if (trace != nullptr) trace->branch_success_probability = std::norm(trace->steps[6][0]);
}

void kick_iteration(StateVector &state, const Dataset &data, double theta, GammaMode mode, IterationTrace *trace) {
    kick_iteration(state, KickProgram(data, theta, mode), trace);
}

PostselectResult postselect_zero(const StateVector &state, RandomStream &rng) {
    const std::size_t n = state.num_sites() - 1;
    const auto data = site_range(1, n);
    const auto dist = state.outcome_distribution(data);
    const std::size_t pick = qsim::sample_index(dist, rng);
    const double total = std::accumulate(dist.begin(), dist.end(), 0.0);
    const double p = dist[0] / total;
    if (pick != 0) return PostselectResult{false, p, StateVector(0)};
    return PostselectResult{true, p, state.project_sites(data, std::vector<int>(n, 0)).posterior};
}

namespace {

// One uniform per step (viii), the same rule sample_index uses for index 0.
bool draw_zero(double p_zero, double total, RandomStream &rng) {
    const double u = rng.uniform() * total;
    return p_zero > 0.0 && u < p_zero;
}

void finish(PipelineResult &out, const KickProgram &program, Amplitude a0, Amplitude a1) {
    out.qubit = StateVector::from_amplitudes({a0, a1});
    out.theta_raw = wrap_phase(std::arg(a1) - std::arg(a0));
    out.r_pi = wrap_phase(static_cast<double>(out.r % 2) * pi);
    out.theta_signal = wrap_phase(out.theta_raw - out.r_pi);
    out.elementary_steps = out.iterations_executed * program.per_iteration_steps();
}

void bump_restarts(PipelineResult &out, std::uint64_t max_restarts) {
    ++out.restarts;
    if (out.restarts > max_restarts) fail(ErrorCode::kCapExceeded,
            "pipeline exceeded " + std::to_string(max_restarts) + " restarts");
}

PipelineResult run_reduced(const KickProgram &program, std::uint64_t r, std::uint64_t max_restarts, RandomStream &rng) {
    PipelineResult out;
    out.r = r;
    const Amplitude d0 = program.branch_factor();
    const double q = std::norm(d0);
    const double h = 1.0 / std::numbers::sqrt2;
    Amplitude a0{h, 0.0};
    Amplitude a1{h, 0.0};
    std::uint64_t done = 0;
    while (done < r) {
        ++out.iterations_executed;
        const double w0 = std::norm(a0);
        const double w1 = std::norm(a1);
        const double p_zero = w0 + w1 * q;
        // The remaining outcomes share the weight w1 * (1 - q).
        const double total = w0 + w1;
        if (draw_zero(p_zero, total, rng)) {
            const double s = 1.0 / std::sqrt(p_zero);
            a0 *= s;
            a1 *= d0 * s;
            ++done;
        } else {
            bump_restarts(out, max_restarts);
            a0 = Amplitude{h, 0.0};
            a1 = Amplitude{h, 0.0};
            done = 0;
        }
    }
    finish(out, program, a0, a1);
    return out;
}

PipelineResult run_dense(const KickProgram &program, std::uint64_t r, std::uint64_t max_restarts, RandomStream &rng) {
    PipelineResult out;
    out.r = r;
    const std::size_t n = program.data_sites();
    StateVector state = initial_pipeline_state(n);
    std::uint64_t done = 0;
    while (done < r) {
        ++out.iterations_executed;
        kick_iteration(state, program);
        auto post = postselect_zero(state, rng);
        if (post.success) {
            state = std::move(post.posterior);
            ++done;
        } else {
            bump_restarts(out, max_restarts);
            state = initial_pipeline_state(n);
            done = 0;
        }
    }
    const std::uint64_t n_values = std::uint64_t{1} << n;
    finish(out, program, state.amplitude(0), state.amplitude(n_values));
    return out;
}

}  // namespace

PipelineResult run_pipeline(const KickProgram &program, std::uint64_t r, std::uint64_t max_restarts, RandomStream &rng,
                            PipelineEngine engine) {
    require(r >= 1, ErrorCode::kInvalidArgument, "run_pipeline: r must be at least 1");
    return engine == PipelineEngine::kDense ? run_dense(program, r, max_restarts, rng)
                                            : run_reduced(program, r, max_restarts, rng);
}

PipelineResult run_pipeline(const Dataset &data, double theta, const KickParams &params, RandomStream &rng,
                            PipelineEngine engine) {
    data.require_power_of_two("run_pipeline");
    const KickProgram program(data, theta, params.gamma_mode, params.corrupt_gamma_sign);
    return run_pipeline(program, resolve_r(params, theta), params.max_restarts, rng, engine);
}

double ideal_signal_phase(const KickProgram &program, std::uint64_t r) {
    // arg(-D0) keeps full relative precision for tiny signals, unlike
    // arg(D0) - pi.
    return static_cast<double>(r) * std::arg(-program.branch_factor());
}

AmplitudeOracle amplitude_oracle(const Dataset &data, double theta, GammaMode mode) {
    data.require_power_of_two("amplitude_oracle");
    validate_scale(data, theta);
    const std::size_t n_values = data.size();
    const double inv_n = 1.0 / static_cast<double>(n_values);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n_values));
    AmplitudeOracle o;
    o.a.resize(n_values);
    o.after_v.resize(n_values);
    double re = 0.0, im = 0.0, mean_x = 0.0;
    Amplitude mean_e2{0.0, 0.0};
    for (std::size_t j = 0; j < n_values; ++j) {
        const double x = theta * data[j];
        const double g = gamma_of(x, mode);
        o.a[j] = Amplitude{std::cos(g), std::sin(g)} * inv_sqrt_n;
        re += std::cos(g);
        im += std::sin(g);
        mean_x += x;
        mean_e2 += Amplitude{std::cos(2.0 * g), std::sin(2.0 * g)};
    }
    o.w0 = Amplitude{re * inv_n, im * inv_n};
    o.mean_x = mean_x * inv_n;
    for (std::size_t j = 0; j < n_values; ++j) o.after_v[j] = o.a[j] - 2.0 * o.w0 * inv_sqrt_n;
    o.final_zero = mean_e2 * inv_n - 2.0 * o.w0 * o.w0;
    o.failure_probability = 1.0 - std::norm(o.final_zero);
    return o;
}

}  // namespace telecomp::kick
