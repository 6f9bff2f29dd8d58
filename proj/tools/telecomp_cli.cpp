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

// Experiment driver. Talks to the library only through telecomp.h.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "telecomp/telecomp.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;  // oracle check failed, internal error
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

int exit_code(tc_status s) {
    switch (s) {
        case TC_OK: return kExitOk;
        case TC_CAP_EXCEEDED:
        case TC_UNWRAP_WINDOW: return kExitRuntime;
        case TC_INTERNAL: return kExitFailed;
        default: return kExitValidation;
    }
}

struct CliError {
    int code;
    std::string message;
};

void check(tc_status s) {
    if (s != TC_OK) throw CliError{exit_code(s), std::string(tc_status_name(s)) + ": " + tc_last_error()};
}

struct DatasetDeleter {
    void operator()(tc_dataset *d) const { tc_dataset_free(d); }
};
struct ResultDeleter {
    void operator()(tc_result *r) const { tc_result_free(r); }
};
using DatasetPtr = std::unique_ptr<tc_dataset, DatasetDeleter>;
using ResultPtr = std::unique_ptr<tc_result, ResultDeleter>;

struct Config {
    std::string data;
    std::string gen;
    bool truncate = false;
    std::optional<double> theta;
    std::uint64_t r = 0;
    std::uint64_t r_cap = 0;
    std::uint64_t alpha = 400;
    double kappa = 0.0;
    std::optional<std::uint64_t> max_restarts;
    std::string gamma = "arcsin";
    std::uint64_t eta = 1;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "json";
    std::string trace;
    bool force = false;
    bool ideal = false;
    bool shard = false;
    double failure_budget = 0.5;
    std::string config;

    // estimate-serial --schedule
    bool schedule = false;
    double theta0 = 0.5;
    double factor = 1.5;
    double threshold = 0.1;
    double theta_floor = 1e-6;

    // sweep
    std::vector<double> thetas;
    std::vector<std::uint64_t> etas;
    bool no_rescale = false;

    // oracle-check
    std::uint64_t oracle_eta = 2;
    std::uint64_t oracle_r = 2;
    double tolerance = 1e-10;
    bool corrupt_gamma_sign = false;

    // baseline
    std::uint64_t samples = 100;
    std::uint64_t repeats = 1;
    bool exhaustive = false;

    // ladder
    double phase = 0.1;
    std::uint64_t count = 16;
    std::uint64_t levels = 4;
};

// Values from --config fill any option not given on the command line.
void apply_config_file(const Config &in, Config &cfg, CLI::App &sub) {
    if (in.config.empty()) return;
    std::ifstream f(in.config);
    if (!f) throw CliError{kExitValidation, "cannot open config '" + in.config + "'"};
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception &e) {
        throw CliError{kExitValidation, std::string("config: ") + e.what()};
    }
    if (!j.is_object()) throw CliError{kExitValidation, "config must be a JSON object"};
    auto given = [&](const std::string &flag) {
        const CLI::Option *o = sub.get_option_no_throw(flag);
        return o != nullptr && o->count() > 0;
    };
    const std::map<std::string, std::pair<std::string, std::function<void(const nlohmann::json &)>>> keys = {
        {"theta", {"--theta", [&](const nlohmann::json &v) { cfg.theta = v.get<double>(); }}},
        {"eta", {"--eta", [&](const nlohmann::json &v) { cfg.eta = v.get<std::uint64_t>(); }}},
        {"r", {"--r", [&](const nlohmann::json &v) { cfg.r = v.get<std::uint64_t>(); }}},
        {"r_cap", {"--r-cap", [&](const nlohmann::json &v) { cfg.r_cap = v.get<std::uint64_t>(); }}},
        {"alpha", {"--alpha", [&](const nlohmann::json &v) { cfg.alpha = v.get<std::uint64_t>(); }}},
        {"seed", {"--seed", [&](const nlohmann::json &v) { cfg.seed = v.get<std::uint64_t>(); }}},
        {"force", {"--force", [&](const nlohmann::json &v) { cfg.force = v.get<bool>(); }}},
        {"ideal", {"--ideal", [&](const nlohmann::json &v) { cfg.ideal = v.get<bool>(); }}},
        {"data", {"--data", [&](const nlohmann::json &v) { cfg.data = v.get<std::string>(); }}},
        {"gen", {"--gen", [&](const nlohmann::json &v) { cfg.gen = v.get<std::string>(); }}},
        {"failure_budget", {"--failure-budget", [&](const nlohmann::json &v) { cfg.failure_budget = v.get<double>(); }}},
    };
    for (const auto &[key, value] : j.items()) {
        const auto it = keys.find(key);
        if (it == keys.end()) throw CliError{kExitValidation, "config: unknown key '" + key + "'"};
        if (given(it->second.first)) continue;
        try {
            it->second.second(value);
        } catch (const nlohmann::json::exception &e) {
            throw CliError{kExitValidation, "config key '" + key + "': " + e.what()};
        }
    }
}

DatasetPtr load_data(const Config &cfg) {
    if (cfg.data.empty() == cfg.gen.empty()) throw CliError{kExitValidation, "give exactly one of --data or --gen"};
    tc_dataset *raw = nullptr;
    if (!cfg.data.empty()) {
        check(tc_dataset_load(cfg.data.c_str(), &raw));
    } else {
        check(tc_dataset_generate(cfg.gen.c_str(), cfg.seed, &raw));
    }
    DatasetPtr ds(raw);
    if (cfg.truncate) {
        std::size_t dropped = 0;
        check(tc_dataset_truncate_pow2(ds.get(), &dropped));
        if (dropped > 0) {
            std::cerr << "warning: dropped " << dropped << " trailing values to reach N = " << tc_dataset_size(ds.get())
                      << "; the mean is now " << tc_dataset_mean(ds.get()) << "\n";
        }
    }
    return ds;
}

tc_kick_options kick_options(const Config &cfg) {
    tc_kick_options o;
    tc_kick_options_default(&o);
    o.r = cfg.r;
    o.r_cap = cfg.r_cap;
    o.alpha = cfg.alpha;
    if (cfg.kappa > 0.0) o.kappa = cfg.kappa;
    if (cfg.max_restarts) o.max_restarts = *cfg.max_restarts;
    o.gamma_linear = cfg.gamma == "linear" ? 1 : 0;
    o.ideal = cfg.ideal ? 1 : 0;
    o.corrupt_gamma_sign = cfg.corrupt_gamma_sign ? 1 : 0;
    return o;
}

double need_theta(const Config &cfg) {
    if (!cfg.theta) throw CliError{kExitValidation, "--theta is required"};
    return *cfg.theta;
}

void write_output(const std::string &path, const std::string &text) {
    std::string body = text;
    if (body.empty() || body.back() != '\n') body.push_back('\n');
    if (path.empty() || path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw CliError{kExitValidation, "cannot open '" + path + "' for writing"};
    f << body;
    if (!f) throw CliError{kExitValidation, "write to '" + path + "' failed"};
}

void emit(const Config &cfg, const tc_result *res) {
    std::string body = tc_result_json(res);
    if (cfg.format == "csv") {
        body = tc_result_csv(res);
        if (body.empty()) throw CliError{kExitValidation, "this command has no CSV form; use --format json"};
    }
    write_output(cfg.out, body);
    if (!cfg.trace.empty()) {
        std::string t = tc_result_trace(res);
        std::ofstream f(cfg.trace, std::ios::binary);
        if (!f) throw CliError{kExitValidation, "cannot open '" + cfg.trace + "' for writing"};
        f << t;
    }
}

void add_data_options(CLI::App *sub, Config &cfg) {
    sub->add_option("--data", cfg.data, "dataset file: JSON array or one value per line");
    sub->add_option("--gen", cfg.gen, "generator: uniform:mu=..,n=..[,seed=..] | constant:c=..,n=.. | skewed:n=.. | list:a,b,..");
    sub->add_flag("--truncate", cfg.truncate, "keep the leading power-of-two prefix (changes the mean)");
}

void add_common(CLI::App *sub, Config &cfg) {
    sub->add_option("--seed", cfg.seed, "master seed");
    sub->add_option("--out", cfg.out, "report path (default stdout)");
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--config", cfg.config, "JSON document with theta, eta, r, alpha, seed, force, ...");
}

void add_kick_options(CLI::App *sub, Config &cfg) {
    sub->add_option("--r", cfg.r, "iterations per preparation (0: floor(kappa/theta^3))");
    sub->add_option("--r-cap", cfg.r_cap, "upper clamp on the derived r");
    sub->add_option("--alpha", cfg.alpha, "readout trials");
    sub->add_option("--kappa", cfg.kappa, "r = floor(kappa/theta^3)");
    sub->add_option("--max-restarts", cfg.max_restarts, "restart cap per preparation");
    sub->add_option("--gamma", cfg.gamma, "arcsin or linear")->check(CLI::IsMember({"arcsin", "linear"}));
    sub->add_flag("--ideal", cfg.ideal, "read the phase from exact amplitudes");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Phase-kick mean estimation and cat-state telecomputation experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tc_version()));
    Config cfg;

    auto *serial = app.add_subcommand("estimate-serial", "serial phase-kick estimate");
    add_data_options(serial, cfg);
    add_common(serial, cfg);
    add_kick_options(serial, cfg);
    serial->add_option("--theta", cfg.theta, "scale theta in (0, 1]");
    serial->add_flag("--schedule", cfg.schedule, "shrink theta until the estimate clears the threshold");
    serial->add_option("--theta0", cfg.theta0, "schedule start");
    serial->add_option("--factor", cfg.factor, "schedule shrink factor");
    serial->add_option("--threshold", cfg.threshold, "stop when |mu_e| > threshold * theta^2");
    serial->add_option("--theta-floor", cfg.theta_floor, "schedule gives up below this theta");

    auto *epr = app.add_subcommand("estimate-epr", "one cat particle per value");
    add_data_options(epr, cfg);
    add_common(epr, cfg);
    epr->add_option("--theta", cfg.theta, "scale theta in (0, 1]");
    epr->add_option("--alpha", cfg.alpha, "readout rounds");
    epr->add_flag("--ideal", cfg.ideal, "read the phase from exact amplitudes");
    epr->add_option("--trace", cfg.trace, "network trace path (JSON lines)");

    auto *dist = app.add_subcommand("estimate-distributed", "eta processors sharing one cat state");
    add_data_options(dist, cfg);
    add_common(dist, cfg);
    add_kick_options(dist, cfg);
    dist->add_option("--theta", cfg.theta, "scale theta in (0, 1]");
    dist->add_option("--eta", cfg.eta, "processor count");
    dist->add_flag("--force", cfg.force, "run even when eta exceeds the failure bound");
    dist->add_flag("--shard", cfg.shard, "each processor holds a contiguous slice of the data");
    dist->add_option("--failure-budget", cfg.failure_budget, "restart probability allowed per round");
    dist->add_option("--trace", cfg.trace, "network trace path (JSON lines)");

    auto *sweep = app.add_subcommand("sweep", "theta or eta sweep with log-log fits");
    add_data_options(sweep, cfg);
    add_common(sweep, cfg);
    add_kick_options(sweep, cfg);
    auto *thetas_opt = sweep->add_option("--thetas", cfg.thetas, "theta points")->delimiter(',');
    auto *etas_opt = sweep->add_option("--etas", cfg.etas, "eta points (uses --theta)")->delimiter(',');
    thetas_opt->excludes(etas_opt);
    sweep->add_option("--theta", cfg.theta, "theta for an eta sweep");
    sweep->add_flag("--no-rescale", cfg.no_rescale, "use the dataset as given at every theta");

    auto *oracle = app.add_subcommand("oracle-check", "simulation vs closed forms and dense reference");
    add_data_options(oracle, cfg);
    add_common(oracle, cfg);
    oracle->add_option("--theta", cfg.theta, "scale theta");
    oracle->add_option("--eta", cfg.oracle_eta, "processors in the dense comparison");
    oracle->add_option("--r", cfg.oracle_r, "iterations per processor in the dense comparison");
    oracle->add_option("--tolerance", cfg.tolerance, "maximum allowed deviation");
    oracle->add_option("--gamma", cfg.gamma, "arcsin or linear")->check(CLI::IsMember({"arcsin", "linear"}));
    oracle->add_flag("--corrupt-gamma-sign", cfg.corrupt_gamma_sign, "negative control: flip the second rotation");

    auto *base = app.add_subcommand("baseline", "classical sampling estimate");
    add_data_options(base, cfg);
    add_common(base, cfg);
    base->add_option("--samples", cfg.samples, "samples per estimate");
    base->add_option("--repeats", cfg.repeats, "independent repeats");
    base->add_flag("--exhaustive", cfg.exhaustive, "one ordered pass over all values");

    auto *ladder = app.add_subcommand("ladder", "CNOT phase-doubling ladder");
    ladder->add_option("--phase", cfg.phase, "common input phase");
    ladder->add_option("--count", cfg.count, "input systems");
    ladder->add_option("--levels", cfg.levels, "doubling levels");
    ladder->add_option("--seed", cfg.seed, "master seed");
    ladder->add_option("--out", cfg.out, "report path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        CLI::App *sub = app.get_subcommands().front();
        const Config given = cfg;
        if (sub != ladder) apply_config_file(given, cfg, *sub);
        const tc_kick_options kopts = kick_options(cfg);
        tc_result *raw = nullptr;

        if (sub == serial) {
            const DatasetPtr ds = load_data(cfg);
            if (cfg.schedule) {
                if (cfg.format == "csv") throw CliError{kExitValidation, "the schedule report is JSON only"};
                tc_schedule_options so{cfg.theta0, cfg.factor, cfg.threshold, cfg.theta_floor};
                check(tc_estimate_schedule(ds.get(), &so, &kopts, cfg.seed, &raw));
            } else {
                check(tc_estimate_serial(ds.get(), need_theta(cfg), &kopts, cfg.seed, &raw));
            }
        } else if (sub == epr) {
            const DatasetPtr ds = load_data(cfg);
            check(tc_estimate_epr(ds.get(), need_theta(cfg), cfg.alpha, cfg.ideal ? 1 : 0, cfg.seed, &raw));
        } else if (sub == dist) {
            const DatasetPtr ds = load_data(cfg);
            tc_distributed_options d;
            tc_distributed_options_default(&d);
            d.eta = cfg.eta;
            d.force = cfg.force ? 1 : 0;
            d.shard = cfg.shard ? 1 : 0;
            d.failure_budget = cfg.failure_budget;
            check(tc_estimate_distributed(ds.get(), need_theta(cfg), &d, &kopts, cfg.seed, &raw));
        } else if (sub == sweep) {
            const DatasetPtr ds = load_data(cfg);
            if (!cfg.thetas.empty()) {
                check(tc_sweep_theta(ds.get(), cfg.thetas.data(), cfg.thetas.size(), cfg.no_rescale ? 0 : 1, &kopts,
                                     &raw));
            } else if (!cfg.etas.empty()) {
                if (cfg.etas.size() < 3) throw CliError{kExitValidation, "a sweep needs at least 3 points"};
                check(tc_sweep_eta(ds.get(), need_theta(cfg), cfg.etas.data(), cfg.etas.size(), &kopts, cfg.seed, &raw));
            } else {
                throw CliError{kExitValidation, "give --thetas or --etas"};
            }
        } else if (sub == oracle) {
            const DatasetPtr ds = load_data(cfg);
            tc_oracle_options o;
            tc_oracle_options_default(&o);
            if (cfg.theta) o.theta = *cfg.theta;
            o.eta = cfg.oracle_eta;
            o.r = cfg.oracle_r;
            o.tolerance = cfg.tolerance;
            o.gamma_linear = cfg.gamma == "linear" ? 1 : 0;
            o.corrupt_gamma_sign = cfg.corrupt_gamma_sign ? 1 : 0;
            check(tc_oracle_check(ds.get(), &o, &raw));
        } else if (sub == base) {
            const DatasetPtr ds = load_data(cfg);
            check(tc_baseline(ds.get(), cfg.samples, cfg.repeats, cfg.exhaustive ? 1 : 0, cfg.seed, &raw));
        } else if (sub == ladder) {
            const std::vector<double> phases(cfg.count, cfg.phase);
            check(tc_ladder(phases.data(), phases.size(), cfg.levels, cfg.seed, &raw));
        }

        const ResultPtr res(raw);
        emit(cfg, res.get());
        if (tc_result_passed(res.get()) == 0) {
            std::cerr << "oracle check failed\n";
            return kExitFailed;
        }
        return kExitOk;
    } catch (const CliError &e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    }
}
