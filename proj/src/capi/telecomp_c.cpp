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

#include "telecomp/telecomp.h"

#include <new>
#include <string>
#include <vector>

#include "telecomp/baseline.hpp"
#include "telecomp/error.hpp"
#include "telecomp/experiments.hpp"
#include "telecomp/io.hpp"
#include "telecomp/phase_kick.hpp"
#include "telecomp/telecompute.hpp"

struct tc_dataset {
    telecomp::Dataset data;
};

struct tc_result {
    std::string json;
    std::string csv;
    std::string trace;
    double value = 0.0;
    int passed = 1;
};

struct tc_state {
    telecomp::qsim::StateVector sv;
};

namespace {

using namespace telecomp;

thread_local std::string g_last_error;

tc_status to_status(ErrorCode c) {
    switch (c) {
        case ErrorCode::kInvalidArgument: return TC_INVALID_ARGUMENT;
        case ErrorCode::kOutOfRange: return TC_OUT_OF_RANGE;
        case ErrorCode::kCapExceeded: return TC_CAP_EXCEEDED;
        case ErrorCode::kUnwrapWindow: return TC_UNWRAP_WINDOW;
        case ErrorCode::kIo: return TC_IO;
        case ErrorCode::kBoundViolation: return TC_BOUND_VIOLATION;
        case ErrorCode::kContract: return TC_CONTRACT;
        case ErrorCode::kInternal: return TC_INTERNAL;
    }
    return TC_INTERNAL;
}

// Runs `f`, translating exceptions into status codes.
template <class F>
tc_status guard(F &&f) {
    try {
        f();
        g_last_error.clear();
        return TC_OK;
    } catch (const Error &e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc &) {
        g_last_error = "out of memory";
        return TC_INTERNAL;
    } catch (const std::exception &e) {
        g_last_error = e.what();
        return TC_INTERNAL;
    }
}

void need(const void *p, const char *what) {
    if (p == nullptr) fail(ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

kick::KickParams to_params(const tc_kick_options *o) {
    tc_kick_options d;
    tc_kick_options_default(&d);
    if (o == nullptr) o = &d;
    kick::KickParams p;
    p.r = o->r;
    p.r_cap = o->r_cap;
    p.alpha = o->alpha;
    p.kappa = o->kappa;
    p.max_restarts = o->max_restarts;
    p.gamma_mode = o->gamma_linear != 0 ? kick::GammaMode::kLinear : kick::GammaMode::kExactArcsin;
    p.ideal = o->ideal != 0;
    p.corrupt_gamma_sign = o->corrupt_gamma_sign != 0;
    return p;
}

tc_result *finish(tc_result **out, tc_result r) {
    *out = new tc_result(std::move(r));
    return *out;
}

}  // namespace

extern "C" {

const char *tc_version(void) { return "1.0.0"; }

const char *tc_status_name(tc_status status) {
    switch (status) {
        case TC_OK: return "ok";
        case TC_INVALID_ARGUMENT: return "invalid_argument";
        case TC_OUT_OF_RANGE: return "out_of_range";
        case TC_CAP_EXCEEDED: return "cap_exceeded";
        case TC_UNWRAP_WINDOW: return "unwrap_window";
        case TC_IO: return "io";
        case TC_BOUND_VIOLATION: return "bound_violation";
        case TC_CONTRACT: return "contract";
        case TC_INTERNAL: return "internal";
    }
    return "unknown";
}

const char *tc_last_error(void) { return g_last_error.c_str(); }

// ------------------------------------------------------------------ datasets

tc_status tc_dataset_from_values(const double *values, size_t n, tc_dataset **out) {
    return guard([&] {
        need(out, "out");
        if (n > 0) need(values, "values");
        *out = new tc_dataset{Dataset(std::vector<double>(values, values + n))};
    });
}

tc_status tc_dataset_load(const char *path, tc_dataset **out) {
    return guard([&] {
        need(path, "path");
        need(out, "out");
        *out = new tc_dataset{io::load_dataset(path)};
    });
}

tc_status tc_dataset_generate(const char *spec, uint64_t default_seed, tc_dataset **out) {
    return guard([&] {
        need(spec, "spec");
        need(out, "out");
        *out = new tc_dataset{io::generate_from_spec(spec, default_seed)};
    });
}

tc_status tc_dataset_truncate_pow2(tc_dataset *ds, size_t *dropped) {
    return guard([&] {
        need(ds, "dataset");
        const std::size_t before = ds->data.size();
        ds->data = ds->data.truncated_to_power_of_two();
        if (dropped != nullptr) *dropped = before - ds->data.size();
    });
}

size_t tc_dataset_size(const tc_dataset *ds) { return ds == nullptr ? 0 : ds->data.size(); }

double tc_dataset_mean(const tc_dataset *ds) { return ds == nullptr ? 0.0 : ds->data.mean(); }

tc_status tc_dataset_values(const tc_dataset *ds, double *out, size_t capacity) {
    return guard([&] {
        need(ds, "dataset");
        need(out, "out");
        require(capacity >= ds->data.size(), ErrorCode::kOutOfRange, "output buffer too small");
        const auto v = ds->data.values();
        std::copy(v.begin(), v.end(), out);
    });
}

void tc_dataset_free(tc_dataset *ds) { delete ds; }

// ---------------------------------------------------------------- estimators

void tc_kick_options_default(tc_kick_options *opts) {
    if (opts == nullptr) return;
    const kick::KickParams p;
    opts->r = p.r;
    opts->r_cap = p.r_cap;
    opts->alpha = p.alpha;
    opts->kappa = p.kappa;
    opts->max_restarts = p.max_restarts;
    opts->gamma_linear = 0;
    opts->ideal = 0;
    opts->corrupt_gamma_sign = 0;
}

tc_status tc_estimate_serial(const tc_dataset *ds, double theta, const tc_kick_options *opts, uint64_t seed,
                             tc_result **out) {
    return guard([&] {
        need(ds, "dataset");
        need(out, "out");
        const auto rep = kick::estimate_mean_serial(ds->data, theta, to_params(opts), seed);
        tc_result r;
        r.json = io::dump(io::to_json(rep));
        r.csv = io::to_csv(rep);
        r.value = rep.mu_e;
        finish(out, std::move(r));
    });
}

void tc_schedule_options_default(tc_schedule_options *opts) {
    if (opts == nullptr) return;
    const kick::ScheduleParams p;
    opts->theta0 = p.theta0;
    opts->factor = p.factor;
    opts->threshold_coeff = p.threshold_coeff;
    opts->theta_floor = p.theta_floor;
}

tc_status tc_estimate_schedule(const tc_dataset *ds, const tc_schedule_options *sched, const tc_kick_options *opts,
                               uint64_t seed, tc_result **out) {
    return guard([&] {
        need(ds, "dataset");
        need(out, "out");
        tc_schedule_options so;
        tc_schedule_options_default(&so);
        if (sched != nullptr) so = *sched;
        const kick::ScheduleParams sp{so.theta0, so.factor, so.threshold_coeff, so.theta_floor};
        const kick::KickParams params = to_params(opts);
        // The report is the final step's, with totals over every step.
        std::uint64_t step = 0, total_steps = 0, restarts = 0, iterations = 0, bound = 0;
        EstimateReport last;
        const auto res = kick::theta_schedule(
            [&](double theta) {
                last = kick::estimate_mean_serial(ds->data, theta, params, derive_seed(seed, step++));
                total_steps += last.elementary_step_count;
                restarts += last.restarts;
                iterations += last.iterations_executed;
                bound = last.step_bound > UINT64_MAX - bound ? UINT64_MAX : bound + last.step_bound;
                return last.mu_e;
            },
            sp);
        last.theta_schedule = res.thetas;
        last.elementary_step_count = total_steps;
        last.steps_per_processor = total_steps;
        last.restarts = restarts;
        last.iterations_executed = iterations;
        last.step_bound = bound;
        last.within_step_bound = total_steps <= bound;
        last.seed = seed;
        io::Json j = io::to_json(last);
        j["reductions"] = res.reductions;
        j["floor_reached"] = res.floor_reached;
        j["schedule_estimates"] = res.estimates;
        tc_result r;
        r.json = io::dump(j);
        r.csv = io::to_csv(last);
        r.value = res.mu_e;
        finish(out, std::move(r));
    });
}

tc_status tc_estimate_epr(const tc_dataset *ds, double theta, uint64_t alpha, int ideal, uint64_t seed,
                          tc_result **out) {
    return guard([&] {
        need(ds, "dataset");
        need(out, "out");
        net::EprConfig cfg;
        cfg.theta = theta;
        cfg.alpha = alpha;
        cfg.ideal = ideal != 0;
        const auto po = net::run_epr_mean_protocol(ds->data, cfg, seed);
        tc_result r;
        r.json = io::dump(io::to_json(po.report));
        r.csv = io::to_csv(po.report);
        r.trace = po.trace.to_jsonl();
        r.value = po.report.mu_e;
        finish(out, std::move(r));
    });
}

void tc_distributed_options_default(tc_distributed_options *opts) {
    if (opts == nullptr) return;
    const net::DistributedConfig c;
    opts->eta = c.eta;
    opts->shard = c.shard ? 1 : 0;
    opts->force = c.force ? 1 : 0;
    opts->failure_budget = c.failure_budget;
}

tc_status tc_estimate_distributed(const tc_dataset *ds, double theta, const tc_distributed_options *dopts,
                                  const tc_kick_options *opts, uint64_t seed, tc_result **out) {
    return guard([&] {
        need(ds, "dataset");
        need(out, "out");
        tc_distributed_options d;
        tc_distributed_options_default(&d);
        if (dopts != nullptr) d = *dopts;
        net::DistributedConfig cfg;
        cfg.theta = theta;
        cfg.eta = d.eta;
        cfg.shard = d.shard != 0;
        cfg.force = d.force != 0;
        cfg.failure_budget = d.failure_budget;
        cfg.params = to_params(opts);
        const auto po = net::run_distributed_estimator(ds->data, cfg, seed);
        tc_result r;
        r.json = io::dump(io::to_json(po.report));
        r.csv = io::to_csv(po.report);
        r.trace = po.trace.to_jsonl();
        r.value = po.report.mu_e;
        finish(out, std::move(r));
    });
}

// --------------------------------------------------------------- experiments

tc_status tc_sweep_theta(const tc_dataset *ds, const double *thetas, size_t count, int rescale,
                         const tc_kick_options *opts, tc_result **out) {
    return guard([&] {
        need(ds, "dataset");
        need(out, "out");
        if (count > 0) need(thetas, "thetas");
        const auto res = exp::sweep_theta(ds->data, std::vector<double>(thetas, thetas + count), rescale != 0,
                                          to_params(opts));
        tc_result r;
        r.json = io::dump(io::to_json(res));
        r.csv = io::to_csv(res);
        r.value = res.phase_slope.slope;
        finish(out, std::move(r));
    });
}

tc_status tc_sweep_eta(const tc_dataset *ds, double theta, const uint64_t *etas, size_t count,
                       const tc_kick_options *opts, uint64_t seed, tc_result **out) {
    return guard([&] {
        need(ds, "dataset");
        need(out, "out");
        if (count > 0) need(etas, "etas");
        const auto res =
            exp::sweep_eta(ds->data, theta, std::vector<std::uint64_t>(etas, etas + count), to_params(opts), seed);
        tc_result r;
        r.json = io::dump(io::to_json(res));
        r.csv = io::to_csv(res);
        r.value = res.serial_phase;
        finish(out, std::move(r));
    });
}

void tc_oracle_options_default(tc_oracle_options *opts) {
    if (opts == nullptr) return;
    const exp::OracleCheckConfig c;
    opts->theta = c.theta;
    opts->gamma_linear = 0;
    opts->corrupt_gamma_sign = 0;
    opts->eta = c.eta;
    opts->r = c.r;
    opts->tolerance = c.tolerance;
}

tc_status tc_oracle_check(const tc_dataset *ds, const tc_oracle_options *opts, tc_result **out) {
    return guard([&] {
        need(ds, "dataset");
        need(out, "out");
        tc_oracle_options o;
        tc_oracle_options_default(&o);
        if (opts != nullptr) o = *opts;
        exp::OracleCheckConfig c;
        c.theta = o.theta;
        c.gamma_mode = o.gamma_linear != 0 ? kick::GammaMode::kLinear : kick::GammaMode::kExactArcsin;
        c.corrupt_gamma_sign = o.corrupt_gamma_sign != 0;
        c.eta = o.eta;
        c.r = o.r;
        c.tolerance = o.tolerance;
        const auto rep = exp::oracle_check(ds->data, c);
        tc_result r;
        r.json = io::dump(io::to_json(rep));
        r.passed = rep.passed ? 1 : 0;
        double worst = 0.0;
        for (const auto &it : rep.items) worst = std::max(worst, it.max_deviation);
        r.value = worst;
        finish(out, std::move(r));
    });
}

tc_status tc_baseline(const tc_dataset *ds, uint64_t n_samples, uint64_t repeats, int exhaustive, uint64_t seed,
                      tc_result **out) {
    return guard([&] {
        need(ds, "dataset");
        need(out, "out");
        baseline::BaselineReport rep;
        if (exhaustive != 0) {
            RandomStream rng(seed);
            rep = baseline::classical_mean_estimate(ds->data, n_samples, rng, baseline::SamplingMode::kExhaustive);
            rep.seed = seed;
        } else {
            rep = baseline::repeated_estimate(ds->data, n_samples, repeats, seed);
        }
        tc_result r;
        r.json = io::dump(io::to_json(rep));
        r.csv = io::to_csv(rep);
        r.value = rep.estimate;
        finish(out, std::move(r));
    });
}

tc_status tc_required_samples(double epsilon, double coeff, uint64_t *out) {
    return guard([&] {
        need(out, "out");
        *out = baseline::required_samples(epsilon, coeff);
    });
}

tc_status tc_ladder(const double *phases, size_t count, size_t levels, uint64_t seed, tc_result **out) {
    return guard([&] {
        need(out, "out");
        if (count > 0) need(phases, "phases");
        RandomStream rng(seed);
        const auto rep = net::cnot_doubling_ladder(std::vector<double>(phases, phases + count), levels, rng);
        tc_result r;
        r.json = io::dump(io::to_json(rep));
        r.value = rep.success_rate();
        finish(out, std::move(r));
    });
}

// ------------------------------------------------------------------- results

const char *tc_result_json(const tc_result *res) { return res == nullptr ? "" : res->json.c_str(); }
const char *tc_result_csv(const tc_result *res) { return res == nullptr ? "" : res->csv.c_str(); }
const char *tc_result_trace(const tc_result *res) { return res == nullptr ? "" : res->trace.c_str(); }
double tc_result_value(const tc_result *res) { return res == nullptr ? 0.0 : res->value; }
int tc_result_passed(const tc_result *res) { return res == nullptr ? 0 : res->passed; }
void tc_result_free(tc_result *res) { delete res; }

// -------------------------------------------------------------- state vector

tc_status tc_state_new(size_t num_sites, tc_state **out) {
    return guard([&] {
        need(out, "out");
        *out = new tc_state{qsim::StateVector(num_sites)};
    });
}

tc_status tc_state_from_amplitudes(const double *re, const double *im, size_t dim, tc_state **out) {
    return guard([&] {
        need(re, "re");
        need(im, "im");
        need(out, "out");
        std::vector<qsim::Amplitude> a(dim);
        for (size_t i = 0; i < dim; ++i) a[i] = qsim::Amplitude(re[i], im[i]);
        *out = new tc_state{qsim::StateVector::from_amplitudes(std::move(a))};
    });
}

size_t tc_state_num_sites(const tc_state *s) { return s == nullptr ? 0 : s->sv.num_sites(); }

tc_status tc_state_apply_m(tc_state *s, size_t site) {
    return guard([&] {
        need(s, "state");
        s->sv.apply_m(site);
    });
}

tc_status tc_state_apply_wh(tc_state *s, const size_t *sites, size_t count) {
    return guard([&] {
        need(s, "state");
        if (count > 0) need(sites, "sites");
        s->sv.apply_wh(std::vector<std::size_t>(sites, sites + count));
    });
}

tc_status tc_state_apply_cnot(tc_state *s, size_t control, size_t target) {
    return guard([&] {
        need(s, "state");
        s->sv.apply_cnot(control, target);
    });
}

tc_status tc_state_rotate_basis_phase(tc_state *s, uint64_t index, double angle) {
    return guard([&] {
        need(s, "state");
        s->sv.rotate_basis_phase(index, angle);
    });
}

tc_status tc_state_amplitude(const tc_state *s, uint64_t index, double *re, double *im) {
    return guard([&] {
        need(s, "state");
        need(re, "re");
        need(im, "im");
        const qsim::Amplitude a = s->sv.amplitude(index);
        *re = a.real();
        *im = a.imag();
    });
}

tc_status tc_state_measure(tc_state *s, const size_t *sites, size_t count, uint64_t seed, int *bits) {
    return guard([&] {
        need(s, "state");
        if (count > 0) {
            need(sites, "sites");
            need(bits, "bits");
        }
        RandomStream rng(seed);
        auto outcome = s->sv.measure_sites(std::vector<std::size_t>(sites, sites + count), rng);
        for (size_t k = 0; k < count; ++k) bits[k] = outcome.bits[k];
        s->sv = std::move(outcome.posterior);
    });
}

void tc_state_free(tc_state *s) { delete s; }

}  // extern "C"
