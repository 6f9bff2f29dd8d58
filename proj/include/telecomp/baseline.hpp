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
#include <vector>

#include "telecomp/dataset.hpp"
#include "telecomp/random.hpp"

namespace telecomp::baseline {

enum class SamplingMode {
    /// Uniform indices with replacement.
    kWithReplacement,
    /// One full pass over the data in order; n_samples must equal N.
    kExhaustive,
};

struct BaselineReport {
    double estimate = 0.0;
    std::uint64_t n_samples = 0;
    /// Standard deviation of the estimate over repeats; 0 for a single run.
    double empirical_std = 0.0;
    std::uint64_t repeats = 1;
    /// Total values read across all repeats.
    std::uint64_t samples_drawn = 0;
    std::uint64_t seed = 0;
    SamplingMode mode = SamplingMode::kWithReplacement;
};

BaselineReport classical_mean_estimate(const Dataset &data, std::uint64_t n_samples, RandomStream &rng,
                                       SamplingMode mode = SamplingMode::kWithReplacement);

/// `repeats` independent estimates, repeat k seeded by derive_seed(seed, k).
/// `estimate` is the first repeat's value; empirical_std is the sample
/// standard deviation over all repeats.
BaselineReport repeated_estimate(const Dataset &data, std::uint64_t n_samples, std::uint64_t repeats,
                                 std::uint64_t seed, std::vector<double> *estimates = nullptr);

/// ceil(coeff / epsilon^2).
std::uint64_t required_samples(double epsilon, double coeff = 1.0);

}  // namespace telecomp::baseline
