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
#include <string>

#include "telecomp/baseline.hpp"
#include "telecomp/error.hpp"

namespace telecomp::baseline {

BaselineReport classical_mean_estimate(const Dataset &data, std::uint64_t n_samples, RandomStream &rng,
                                       SamplingMode mode) {
    require(n_samples >= 1, ErrorCode::kInvalidArgument, "n_samples must be at least 1");
    BaselineReport rep;
    rep.n_samples = n_samples;
    rep.mode = mode;
    rep.seed = rng.seed();
    double sum = 0.0;
    if (mode == SamplingMode::kExhaustive) {
        if (n_samples != data.size()) fail(ErrorCode::kInvalidArgument,
                "exhaustive mode reads every value once; n_samples must equal N = " + std::to_string(data.size()));
        for (double v : data.values()) sum += v;
    } else {
        for (std::uint64_t k = 0; k < n_samples; ++k) sum += data[rng.below(data.size())];
    }
    rep.estimate = sum / static_cast<double>(n_samples);
    rep.samples_drawn = n_samples;
    return rep;
}

BaselineReport repeated_estimate(const Dataset &data, std::uint64_t n_samples, std::uint64_t repeats,
                                 std::uint64_t seed, std::vector<double> *estimates) {
    require(repeats >= 1, ErrorCode::kInvalidArgument, "repeats must be at least 1");
    std::vector<double> est(repeats);
    for (std::uint64_t k = 0; k < repeats; ++k) {
        RandomStream rng(derive_seed(seed, k));
        est[k] = classical_mean_estimate(data, n_samples, rng).estimate;
    }
    double mean = 0.0;
    for (double e : est) mean += e;
    mean /= static_cast<double>(repeats);
    double var = 0.0;
    for (double e : est) var += (e - mean) * (e - mean);
    BaselineReport rep;
    rep.estimate = est.front();
    rep.n_samples = n_samples;
    rep.repeats = repeats;
    rep.empirical_std = repeats > 1 ? std::sqrt(var / static_cast<double>(repeats - 1)) : 0.0;
    rep.samples_drawn = n_samples * repeats;
    rep.seed = seed;
    if (estimates != nullptr) *estimates = std::move(est);
    return rep;
}

std::uint64_t required_samples(double epsilon, double coeff) {
    require(std::isfinite(epsilon) && epsilon > 0.0 && epsilon < 1.0, ErrorCode::kInvalidArgument,
            "epsilon must lie in (0, 1)");
    require(std::isfinite(coeff) && coeff > 0.0, ErrorCode::kInvalidArgument, "coeff must be positive");
    const double raw = coeff / (epsilon * epsilon);
    // 0.01^2 is not exact in binary; trim the rounding excess before ceil.
    return static_cast<std::uint64_t>(std::ceil(raw * (1.0 - 1e-12)));
}

}  // namespace telecomp::baseline
