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

#include "telecomp/error.hpp"
#include "telecomp/telecompute.hpp"

namespace telecomp::net {

StateVector phase_qubit(double phi) {
    const double h = 1.0 / std::numbers::sqrt2;
    return StateVector::from_amplitudes({qsim::Amplitude{h, 0.0}, std::polar(h, phi)});
}

double relative_phase(const StateVector &q) {
    require(q.num_sites() == 1, ErrorCode::kInvalidArgument, "relative_phase: expected a single site");
    return std::arg(q.amplitude(1) * std::conj(q.amplitude(0)));
}

double LadderReport::success_rate() const {
    return total_pairs == 0 ? 0.0 : static_cast<double>(total_successes) / static_cast<double>(total_pairs);
}

LadderPairOutcome ladder_pair_project(const StateVector &q1, const StateVector &q2, int bit) {
    StateVector s = qsim::kron(q1, q2);
    s.apply_cnot(0, 1);
    auto out = s.project_sites({1}, {bit});
    return LadderPairOutcome{bit, out.probability, qsim::remove_site(out.posterior, 1, bit)};
}

namespace {

struct System {
    StateVector q;
    // Sum of the leaf phases this system descends from.
    double expected;
};

}  // namespace

LadderReport cnot_doubling_ladder(const std::vector<double> &phases, std::size_t levels, RandomStream &rng) {
    require(phases.size() >= 2, ErrorCode::kInvalidArgument, "ladder needs at least two systems");
    std::vector<System> alive;
    for (double p : phases) alive.push_back(System{phase_qubit(p), p});
    LadderReport rep;
    for (std::size_t level = 0; level < levels; ++level) {
        if (alive.size() < 2) {
            rep.ended_early = true;
            break;
        }
        LadderLevel lv;
        lv.level = level;
        lv.inputs = alive.size();
        lv.pairs = alive.size() / 2;
        lv.leftover_discarded = (alive.size() % 2) == 1;
        std::vector<System> next;
        for (std::size_t k = 0; k + 1 < alive.size(); k += 2) {
            StateVector s = qsim::kron(alive[k].q, alive[k + 1].q);
            s.apply_cnot(0, 1);
            auto m = s.measure_sites({1}, rng);
            if (m.bits[0] != 0) continue;
            ++lv.successes;
            System child{qsim::remove_site(m.posterior, 1, 0), alive[k].expected + alive[k + 1].expected};
            const double got = relative_phase(child.q);
            lv.survivor_phases.push_back(got);
            lv.max_phase_error = std::max(lv.max_phase_error, std::abs(kick::wrap_phase(got - child.expected)));
            next.push_back(std::move(child));
        }
        rep.total_pairs += lv.pairs;
        rep.total_successes += lv.successes;
        rep.levels.push_back(std::move(lv));
        alive = std::move(next);
    }
    for (const auto &s : alive) rep.final_phases.push_back(relative_phase(s.q));
    return rep;
}

}  // namespace telecomp::net
