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

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "telecomp/error.hpp"
#include "telecomp/io.hpp"

namespace telecomp::io {

namespace {

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string &raw, const std::string &what) {
    const std::string s = trim(raw);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (!(ec == std::errc() && ptr == s.data() + s.size() && !s.empty())) fail(ErrorCode::kInvalidArgument,
            what + ": cannot parse '" + s + "' as a number");
    return v;
}

std::uint64_t parse_count(const std::string &raw, const std::string &what) {
    const std::string s = trim(raw);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (!(ec == std::errc() && ptr == s.data() + s.size() && !s.empty())) fail(ErrorCode::kInvalidArgument,
            what + ": cannot parse '" + s + "' as a non-negative integer");
    return v;
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

}  // namespace

Dataset parse_dataset(const std::string &text) {
    const std::string t = trim(text);
    std::vector<double> values;
    if (!t.empty() && t.front() == '[') {
        Json j;
        try {
            j = Json::parse(t);
        } catch (const nlohmann::json::exception &e) {
            fail(ErrorCode::kInvalidArgument, std::string("dataset JSON: ") + e.what());
        }
        require(j.is_array(), ErrorCode::kInvalidArgument, "dataset JSON must be an array of numbers");
        for (const auto &v : j) {
            require(v.is_number(), ErrorCode::kInvalidArgument, "dataset JSON must contain only numbers");
            values.push_back(v.get<double>());
        }
    } else {
        std::istringstream in(text);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::string s = trim(line);
            if (s.empty() || s.front() == '#') continue;
            values.push_back(parse_double(s, "dataset line " + std::to_string(lineno)));
        }
    }
    return Dataset(std::move(values));
}

std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) fail(ErrorCode::kIo, "cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Dataset load_dataset(const std::string &path) { return parse_dataset(read_text_file(path)); }

void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out.good()) fail(ErrorCode::kIo, "cannot open '" + path + "' for writing");
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
    if (!out.good()) fail(ErrorCode::kIo, "write to '" + path + "' failed");
}

Dataset generate_from_spec(const std::string &spec, std::uint64_t default_seed) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) fail(ErrorCode::kInvalidArgument,
            "generator spec '" + spec + "' must look like kind:args");
    const std::string kind = spec.substr(0, colon);
    const std::string args = spec.substr(colon + 1);
    if (kind == "list") {
        std::vector<double> v;
        for (const auto &item : split(args, ',')) v.push_back(parse_double(item, "list generator"));
        return Dataset(std::move(v));
    }
    std::map<std::string, std::string> kv;
    for (const auto &item : split(args, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) fail(ErrorCode::kInvalidArgument, "generator argument '" + item + "' needs key=value");
        kv[trim(item.substr(0, eq))] = item.substr(eq + 1);
    }
    auto take = [&](const std::string &key) -> std::string {
        const auto it = kv.find(key);
        if (it == kv.end()) fail(ErrorCode::kInvalidArgument, kind + " generator needs '" + key + "='");
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    Dataset out = Dataset({0.0});
    if (kind == "uniform") {
        const double mu = parse_double(take("mu"), "uniform generator mu");
        const std::uint64_t n = parse_count(take("n"), "uniform generator n");
        std::uint64_t seed = default_seed;
        if (kv.count("seed")) seed = parse_count(take("seed"), "uniform generator seed");
        out = generate_uniform_with_mean(n, mu, seed);
    } else if (kind == "constant") {
        const double c = parse_double(take("c"), "constant generator c");
        const std::uint64_t n = parse_count(take("n"), "constant generator n");
        out = generate_constant(n, c);
    } else if (kind == "skewed") {
        const std::uint64_t n = parse_count(take("n"), "skewed generator n");
        std::uint64_t seed = default_seed;
        if (kv.count("seed")) seed = parse_count(take("seed"), "skewed generator seed");
        out = exp::sweep_base_dataset(n, seed);
    } else {
        fail(ErrorCode::kInvalidArgument, "unknown generator kind '" + kind + "' (uniform, constant, skewed, list)");
    }
    if (!kv.empty()) fail(ErrorCode::kInvalidArgument, "unknown generator argument '" + (kv.empty() ? "" : kv.begin()->first) + "'");
    return out;
}

namespace {

Json optional_u64(const std::optional<std::uint64_t> &v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const EstimateReport &r) {
    Json j;
    j["mu_e"] = r.mu_e;
    j["theta"] = r.theta;
    j["r"] = r.r;
    j["alpha"] = r.alpha;
    j["restarts"] = r.restarts;
    j["elementary_step_count"] = r.elementary_step_count;
    j["seed"] = r.seed;
    j["half_width"] = r.half_width;
    j["protocol"] = r.protocol;
    j["rng"] = r.rng;
    j["n"] = r.n;
    j["eta"] = r.eta;
    j["eta_bound"] = optional_u64(r.eta_bound);
    j["theta_schedule"] = r.theta_schedule;
    j["iterations_executed"] = r.iterations_executed;
    j["steps_per_processor"] = r.steps_per_processor;
    j["step_bound"] = r.step_bound;
    j["step_bound_constant"] = kick::kStepBoundConstant;
    j["within_step_bound"] = r.within_step_bound;
    j["phase_estimate"] = r.phase_estimate;
    j["phase_half_width"] = r.phase_half_width;
    j["r_pi_correction"] = r.r_pi_correction;
    j["r_odd"] = r.r_odd;
    j["branch_convention"] = r.branch_convention;
    j["ideal"] = r.ideal;
    return j;
}

Json to_json(const baseline::BaselineReport &r) {
    Json j;
    j["estimate"] = r.estimate;
    j["n_samples"] = r.n_samples;
    j["empirical_std"] = r.empirical_std;
    j["repeats"] = r.repeats;
    j["samples_drawn"] = r.samples_drawn;
    j["seed"] = r.seed;
    j["mode"] = r.mode == baseline::SamplingMode::kExhaustive ? "exhaustive" : "with_replacement";
    j["rng"] = RandomStream::kName;
    return j;
}

Json to_json(const net::LadderReport &r) {
    Json j;
    j["total_pairs"] = r.total_pairs;
    j["total_successes"] = r.total_successes;
    j["success_rate"] = r.success_rate();
    j["ended_early"] = r.ended_early;
    j["final_phases"] = r.final_phases;
    Json levels = Json::array();
    for (const auto &lv : r.levels) {
        Json l;
        l["level"] = lv.level;
        l["inputs"] = lv.inputs;
        l["pairs"] = lv.pairs;
        l["successes"] = lv.successes;
        l["leftover_discarded"] = lv.leftover_discarded;
        l["survivor_phases"] = lv.survivor_phases;
        l["max_phase_error"] = lv.max_phase_error;
        levels.push_back(l);
    }
    j["levels"] = levels;
    return j;
}

namespace {

Json fit_json(const exp::SlopeFit &f) {
    Json j;
    j["slope"] = f.defined ? Json(f.slope) : Json(nullptr);
    j["intercept"] = f.defined ? Json(f.intercept) : Json(nullptr);
    j["points"] = f.points;
    j["defined"] = f.defined;
    j["exact"] = f.exact;
    return j;
}

}  // namespace

Json to_json(const exp::ThetaSweepResult &r) {
    Json j;
    j["kind"] = "theta";
    j["rescaled"] = r.rescaled;
    Json rows = Json::array();
    for (const auto &p : r.points) {
        Json row;
        row["theta"] = p.theta;
        row["mean"] = p.mean;
        row["mean_x"] = p.mean_x;
        row["phase_error"] = p.phase_error;
        row["phase_error_gamma"] = p.phase_error_gamma;
        row["failure_probability"] = p.failure_probability;
        row["r"] = p.r;
        row["steps_per_iteration"] = p.steps_per_iteration;
        row["step_count"] = p.step_count;
        rows.push_back(row);
    }
    j["points"] = rows;
    j["phase_error_slope"] = fit_json(r.phase_slope);
    j["failure_slope"] = fit_json(r.failure_slope);
    return j;
}

Json to_json(const exp::EtaSweepResult &r) {
    Json j;
    j["kind"] = "eta";
    j["theta"] = r.theta;
    j["r"] = r.r;
    j["serial_phase"] = r.serial_phase;
    j["serial_steps"] = r.serial_steps;
    Json rows = Json::array();
    for (const auto &p : r.points) {
        Json row;
        row["eta"] = p.eta;
        row["distributed_phase"] = p.distributed_phase;
        row["expected_phase"] = p.expected_phase;
        row["deviation"] = p.deviation;
        row["mu_e"] = p.mu_e;
        row["steps_total"] = p.steps_total;
        row["steps_per_processor"] = p.steps_per_processor;
        row["restarts"] = p.restarts;
        rows.push_back(row);
    }
    j["points"] = rows;
    return j;
}

Json to_json(const exp::OracleCheckReport &r) {
    Json j;
    j["passed"] = r.passed;
    j["tolerance"] = r.tolerance;
    Json items = Json::array();
    for (const auto &i : r.items) {
        Json it;
        it["name"] = i.name;
        it["max_deviation"] = i.max_deviation;
        it["passed"] = i.passed;
        items.push_back(it);
    }
    j["checks"] = items;
    return j;
}

Json to_json(const kick::ScheduleResult &r) {
    Json j;
    j["theta"] = r.theta;
    j["mu_e"] = r.mu_e;
    j["reductions"] = r.reductions;
    j["floor_reached"] = r.floor_reached;
    j["thetas"] = r.thetas;
    j["estimates"] = r.estimates;
    return j;
}

Json state_to_json(const qsim::StateVector &s) {
    Json j;
    j["num_sites"] = s.num_sites();
    Json amps = Json::array();
    const auto a = s.amplitudes();
    for (std::uint64_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i]) > 1e-14) amps.push_back(Json::array({i, a[i].real(), a[i].imag()}));
    }
    j["amplitudes"] = amps;
    return j;
}

namespace {

std::string num(double v) {
    // Shortest round-trip form, identical to the JSON output.
    return Json(v).dump();
}

}  // namespace

std::string to_csv(const EstimateReport &r) {
    std::ostringstream o;
    o << "protocol,mu_e,theta,r,alpha,eta,restarts,elementary_step_count,seed,half_width,phase_estimate,ideal\n";
    o << r.protocol << ',' << num(r.mu_e) << ',' << num(r.theta) << ',' << r.r << ',' << r.alpha << ',' << r.eta << ','
      << r.restarts << ',' << r.elementary_step_count << ',' << r.seed << ',' << num(r.half_width) << ','
      << num(r.phase_estimate) << ',' << (r.ideal ? "true" : "false") << '\n';
    return o.str();
}

std::string to_csv(const baseline::BaselineReport &r) {
    std::ostringstream o;
    o << "estimate,n_samples,empirical_std,repeats,samples_drawn,seed\n";
    o << num(r.estimate) << ',' << r.n_samples << ',' << num(r.empirical_std) << ',' << r.repeats << ','
      << r.samples_drawn << ',' << r.seed << '\n';
    return o.str();
}

std::string to_csv(const exp::ThetaSweepResult &r) {
    std::ostringstream o;
    o << "theta,mean,phase_error,phase_error_gamma,failure_probability,r,step_count\n";
    for (const auto &p : r.points) {
        o << num(p.theta) << ',' << num(p.mean) << ',' << num(p.phase_error) << ',' << num(p.phase_error_gamma) << ','
          << num(p.failure_probability) << ',' << p.r << ',' << p.step_count << '\n';
    }
    o << "# phase_error_slope=" << (r.phase_slope.defined ? num(r.phase_slope.slope) : std::string("exact"))
      << " failure_slope=" << (r.failure_slope.defined ? num(r.failure_slope.slope) : std::string("exact")) << '\n';
    return o.str();
}

std::string to_csv(const exp::EtaSweepResult &r) {
    std::ostringstream o;
    o << "eta,distributed_phase,expected_phase,deviation,mu_e,steps_total,steps_per_processor,restarts\n";
    for (const auto &p : r.points) {
        o << p.eta << ',' << num(p.distributed_phase) << ',' << num(p.expected_phase) << ',' << num(p.deviation) << ','
          << num(p.mu_e) << ',' << p.steps_total << ',' << p.steps_per_processor << ',' << p.restarts << '\n';
    }
    return o.str();
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

}  // namespace telecomp::io
