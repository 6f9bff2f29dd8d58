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
#include <numeric>
#include <string>

#include "telecomp/error.hpp"
#include "telecomp/experiments.hpp"

namespace telecomp::exp {

using kick::wrap_phase;
using qsim::Amplitude;
using qsim::StateVector;
using std::numbers::pi;

SlopeFit fit_loglog(const std::vector<double> &x, const std::vector<double> &y) {
    require(x.size() == y.size(), ErrorCode::kInvalidArgument, "fit_loglog: size mismatch");
    SlopeFit fit;
    std::vector<double> lx, ly;
    for (std::size_t k = 0; k < x.size(); ++k) {
        require(x[k] > 0.0, ErrorCode::kInvalidArgument, "fit_loglog: x must be positive");
        if (y[k] > kNumericalFloor) {
            lx.push_back(std::log(x[k]));
            ly.push_back(std::log(y[k]));
        }
    }
    fit.points = lx.size();
    fit.exact = lx.empty();
    if (lx.size() < 2) return fit;
    const double n = static_cast<double>(lx.size());
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
        sxy += (lx[k] - mx) * (ly[k] - my);
        sxx += (lx[k] - mx) * (lx[k] - mx);
    }
    if (sxx <= 0.0) return fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.defined = true;
    return fit;
}

Dataset sweep_base_dataset(std::size_t n, std::uint64_t seed) {
    require(n >= 2, ErrorCode::kInvalidArgument, "sweep base needs at least two values");
    RandomStream rng(seed);
    std::vector<double> b(n);
    for (double &x : b) {
        const double u = rng.uniform();
        x = 2.0 * u * u - 1.0;
    }
    const double m = std::accumulate(b.begin(), b.end(), 0.0) / static_cast<double>(n);
    // Values land inside [-0.5, 0.95].
    for (double &x : b) x = 0.7 * (x - m);
    return Dataset(std::move(b));
}

Dataset rescaled_for_theta(const Dataset &base, double theta) {
    const double t2 = theta * theta;
    std::vector<double> v(base.size());
    for (std::size_t j = 0; j < base.size(); ++j) v[j] = (1.0 - t2) * base[j] + t2;
    return Dataset(std::move(v));
}

ThetaSweepResult sweep_theta(const Dataset &data, const std::vector<double> &thetas, bool rescale,
                             const kick::KickParams &params) {
    require(thetas.size() >= 3, ErrorCode::kInvalidArgument, "a sweep needs at least 3 points");
    for (std::size_t k = 0; k < thetas.size(); ++k) {
        for (std::size_t m = 0; m < k; ++m) {
            require(thetas[k] != thetas[m], ErrorCode::kInvalidArgument, "sweep points must be distinct");
        }
    }
    ThetaSweepResult out;
    out.rescaled = rescale;
    std::vector<double> xs, pe, fp;
    for (double theta : thetas) {
        const Dataset d = rescale ? rescaled_for_theta(data, theta) : data;
        const kick::KickProgram prog(d, theta, params.gamma_mode, params.corrupt_gamma_sign);
        const Amplitude d0 = prog.branch_factor();
        double mean_x = 0.0, mean_g = 0.0;
        for (double v : d.values()) {
            mean_x += theta * v;
            mean_g += kick::gamma_of(theta * v, params.gamma_mode);
        }
        mean_x /= static_cast<double>(d.size());
        mean_g /= static_cast<double>(d.size());
        ThetaSweepPoint p;
        p.theta = theta;
        p.mean = d.mean();
        p.mean_x = mean_x;
        // arg(-D0) is the per-iteration signal with the pi removed.
        p.phase_error = std::abs(std::arg(-d0) - 2.0 * mean_x);
        p.phase_error_gamma = std::abs(std::arg(-d0) - 2.0 * mean_g);
        p.failure_probability = std::max(0.0, 1.0 - std::norm(d0));
        p.r = kick::resolve_r(params, theta);
        p.steps_per_iteration = prog.per_iteration_steps();
        p.step_count = p.r * p.steps_per_iteration;
        out.points.push_back(p);
        xs.push_back(theta);
        pe.push_back(p.phase_error);
        fp.push_back(p.failure_probability);
    }
    out.phase_slope = fit_loglog(xs, pe);
    out.failure_slope = fit_loglog(xs, fp);
    return out;
}

EtaSweepResult sweep_eta(const Dataset &data, double theta, const std::vector<std::uint64_t> &etas,
                         const kick::KickParams &params, std::uint64_t seed) {
    require(!etas.empty(), ErrorCode::kInvalidArgument, "eta sweep needs at least one point");
    EtaSweepResult out;
    out.theta = theta;
    const kick::KickProgram prog(data, theta, params.gamma_mode, params.corrupt_gamma_sign);
    out.r = kick::resolve_r(params, theta);
    RandomStream rng(seed);
    const auto serial = kick::run_pipeline(prog, out.r, params.max_restarts, rng);
    out.serial_phase = serial.theta_signal;
    out.serial_steps = serial.elementary_steps;
    for (auto eta : etas) {
        net::DistributedConfig cfg;
        cfg.theta = theta;
        cfg.eta = eta;
        cfg.params = params;
        cfg.params.ideal = true;
        cfg.force = true;
        const auto run = net::run_distributed_estimator(data, cfg, seed);
        EtaSweepPoint p;
        p.eta = eta;
        p.distributed_phase = run.report.phase_estimate;
        p.expected_phase = wrap_phase(static_cast<double>(eta) * out.serial_phase);
        p.deviation = std::abs(wrap_phase(p.distributed_phase - p.expected_phase));
        p.mu_e = run.report.mu_e;
        p.steps_total = run.report.elementary_step_count;
        p.steps_per_processor = run.report.steps_per_processor;
        p.restarts = run.report.restarts;
        out.points.push_back(p);
    }
    return out;
}

namespace {

StateVector extract_qubit(const StateVector &s, std::size_t cat0, const std::vector<std::size_t> &cat_sites,
                          const std::vector<int> &bits) {
    std::uint64_t base = 0;
    for (std::size_t k = 0; k < bits.size(); ++k) {
        if (bits[k] != 0) base |= s.site_mask(cat_sites[k]);
    }
    const Amplitude a0 = s.amplitude(base);
    const Amplitude a1 = s.amplitude(base | s.site_mask(cat0));
    const double kept = std::norm(a0) + std::norm(a1);
    require(std::abs(kept - 1.0) <= 1e-9, ErrorCode::kInternal, "dense oracle: state is not a product with the qubit");
    StateVector q = StateVector::from_amplitudes({a0 / std::sqrt(kept), a1 / std::sqrt(kept)});
    int parity = 0;
    for (int b : bits) parity ^= b;
    if (parity == 1) q.rotate_basis_phase(1, pi);
    return q;
}

void make_cat(StateVector &s, const std::vector<std::size_t> &cat_sites) {
    s.apply_m(cat_sites[0]);
    for (std::size_t k = 1; k < cat_sites.size(); ++k) s.apply_cnot(cat_sites[0], cat_sites[k]);
}

StateVector measure_cats(StateVector s, const std::vector<std::size_t> &cat_sites, const std::vector<int> &bits) {
    for (std::size_t k = 1; k < cat_sites.size(); ++k) {
        s.apply_m(cat_sites[k]);
        s = s.project_sites({cat_sites[k]}, {bits[k - 1]}).posterior;
    }
    return s;
}

}  // namespace

StateVector dense_distributed_qubit(const kick::KickProgram &program, std::size_t eta, std::uint64_t r,
                                    const std::vector<int> &bits) {
    require(eta >= 1 && bits.size() + 1 == eta, ErrorCode::kInvalidArgument, "dense oracle: need eta-1 bits");
    const std::size_t n = program.data_sites();
    const std::size_t total = eta * (1 + n);
    require(total <= qsim::kDefaultMaxSites, ErrorCode::kOutOfRange, "dense oracle: register too large");
    StateVector s(total);
    std::vector<std::size_t> cats(eta);
    for (std::size_t j = 0; j < eta; ++j) cats[j] = j * (1 + n);
    make_cat(s, cats);
    for (std::size_t j = 0; j < eta; ++j) {
        const qsim::Circuit step =
            qsim::controlled(qsim::shifted(program.local_circuit(), cats[j] + 1), qsim::Control{cats[j], true});
        std::vector<std::size_t> local(n);
        std::iota(local.begin(), local.end(), cats[j] + 1);
        for (std::uint64_t it = 0; it < r; ++it) {
            s.apply(step);
            if (n > 0) s = s.project_sites(local, std::vector<int>(n, 0)).posterior;
        }
    }
    s = measure_cats(std::move(s), cats, bits);
    std::vector<std::size_t> measured(cats.begin() + 1, cats.end());
    return extract_qubit(s, cats[0], measured, bits);
}

StateVector dense_epr_qubit(const Dataset &data, double theta, const std::vector<int> &bits) {
    const std::size_t n = data.size();
    require(n >= 2 && bits.size() + 1 == n, ErrorCode::kInvalidArgument, "dense oracle: need N-1 bits");
    require(n <= qsim::kDefaultMaxSites, ErrorCode::kOutOfRange, "dense oracle: too many particles");
    StateVector s(n);
    std::vector<std::size_t> cats(n);
    std::iota(cats.begin(), cats.end(), 0);
    make_cat(s, cats);
    for (std::size_t j = 0; j < n; ++j) {
        // Rotate the |0> state of particle j.
        s.apply(qsim::basis_phase({j}, 0, theta * theta * data[j] / static_cast<double>(n)));
    }
    s = measure_cats(std::move(s), cats, bits);
    std::vector<std::size_t> measured(cats.begin() + 1, cats.end());
    return extract_qubit(s, cats[0], measured, bits);
}

namespace {

double max_diff(const std::vector<Amplitude> &a, const std::vector<Amplitude> &b) {
    require(a.size() == b.size(), ErrorCode::kInternal, "oracle vectors differ in length");
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

std::vector<int> bits_of(std::uint64_t pattern, std::size_t count) {
    std::vector<int> bits(count);
    for (std::size_t k = 0; k < count; ++k) bits[k] = static_cast<int>((pattern >> k) & 1U);
    return bits;
}

}  // namespace

OracleCheckReport oracle_check(const Dataset &data, const OracleCheckConfig &config) {
    data.require_power_of_two("oracle_check");
    require(data.size() <= 256, ErrorCode::kInvalidArgument, "oracle_check traces at most 256 values");
    OracleCheckReport rep;
    rep.tolerance = config.tolerance;
    auto add = [&](std::string name, double dev) {
        rep.items.push_back(OracleCheckItem{std::move(name), dev, dev <= config.tolerance});
    };

    const kick::KickProgram prog(data, config.theta, config.gamma_mode, config.corrupt_gamma_sign);
    const auto oracle = kick::amplitude_oracle(data, config.theta, config.gamma_mode);
    StateVector state = kick::initial_pipeline_state(prog.data_sites());
    kick::IterationTrace trace;
    kick::kick_iteration(state, prog, &trace);
    add("a_j after step (ii)", max_diff(trace.a(), oracle.a));
    add("w0 after step (iii)", std::abs(trace.w()[0] - oracle.w0));
    add("amplitudes after step (v)", max_diff(trace.steps[4], oracle.after_v));
    add("zeroth amplitude after step (vii)", std::abs(trace.final_zero_amplitude() - oracle.final_zero));
    add("step (viii) failure probability",
        std::abs((1.0 - trace.branch_success_probability) - oracle.failure_probability));

    const std::size_t eta = std::max<std::size_t>(1, config.eta);
    if (eta * (1 + prog.data_sites()) <= qsim::kDefaultMaxSites) {
        net::DistributedConfig dc;
        dc.theta = config.theta;
        dc.eta = eta;
        dc.params.gamma_mode = config.gamma_mode;
        dc.params.corrupt_gamma_sign = config.corrupt_gamma_sign;
        const auto nodes = net::distributed_nodes(data, dc, config.r);
        double dev = 0.0;
        for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << (eta - 1)); ++pattern) {
            net::RoundOptions opts;
            opts.forced_bits = bits_of(pattern, eta - 1);
            opts.force_success = true;
            RandomStream rng(pattern);
            const auto bp = net::distributed_round(nodes, rng, 0, nullptr, opts);
            const auto dense = dense_distributed_qubit(*nodes[0].program, eta, config.r, *opts.forced_bits);
            dev = std::max(dev, qsim::max_abs_diff(bp.qubit, dense));
        }
        add("distributed: branch-pair vs dense, every branch", dev);
    }
    if (data.size() >= 2 && data.size() <= 12) {
        double dev = 0.0;
        for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << (data.size() - 1)); ++pattern) {
            net::RoundOptions opts;
            opts.forced_bits = bits_of(pattern, data.size() - 1);
            RandomStream rng(pattern);
            const auto bp = net::epr_round(data, config.theta, rng, 0, nullptr, opts);
            dev = std::max(dev, qsim::max_abs_diff(bp.qubit, dense_epr_qubit(data, config.theta, *opts.forced_bits)));
        }
        add("particle protocol: branch-pair vs dense, every branch", dev);
    }
    rep.passed = std::all_of(rep.items.begin(), rep.items.end(), [](const OracleCheckItem &i) { return i.passed; });
    return rep;
}

}  // namespace telecomp::exp
