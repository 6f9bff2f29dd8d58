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
#include <optional>
#include <string>
#include <vector>

namespace telecomp {

/// Reproducibility record of one mean estimate.
struct EstimateReport {
    std::string protocol;  // "serial", "epr", "distributed"
    double mu_e = 0.0;
    double theta = 0.0;
    std::vector<double> theta_schedule;
    std::uint64_t r = 0;
    std::uint64_t alpha = 0;
    std::uint64_t eta = 1;
    /// Largest admissible eta at this theta; empty when not applicable or
    /// unbounded.
    std::optional<std::uint64_t> eta_bound;
    std::uint64_t restarts = 0;
    std::uint64_t iterations_executed = 0;
    std::uint64_t elementary_step_count = 0;
    /// Largest per-processor share of elementary_step_count.
    std::uint64_t steps_per_processor = 0;
    std::uint64_t step_bound = 0;
    bool within_step_bound = true;
    std::uint64_t seed = 0;
    std::string rng = "splitmix64";
    /// Half-width of the confidence interval on mu_e.
    double half_width = 0.0;
    /// Readout phase (after bookkeeping corrections) and its half-width.
    double phase_estimate = 0.0;
    double phase_half_width = 0.0;
    /// Deterministic pi-per-iteration term removed at readout, wrapped.
    double r_pi_correction = 0.0;
    bool r_odd = false;
    /// Branch whose phase carries the signal (0 or 1).
    int branch_convention = 1;
    bool ideal = false;
    std::uint64_t n = 0;
};

}  // namespace telecomp
