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
#include <numeric>

#include "telecomp/dataset.hpp"
#include "telecomp/error.hpp"
#include "telecomp/random.hpp"

namespace telecomp {

Dataset::Dataset(std::vector<double> values) : values_(std::move(values)) {
    require(!values_.empty(), ErrorCode::kInvalidArgument, "dataset is empty");
    for (std::size_t j = 0; j < values_.size(); ++j) {
        const double v = values_[j];
        if (!(std::isfinite(v) && std::abs(v) <= 1.0)) fail(ErrorCode::kInvalidArgument,
                "dataset value " + std::to_string(j) + " = " + std::to_string(v) + " is outside [-1, 1]");
        max_abs_ = std::max(max_abs_, std::abs(v));
    }
    mean_ = std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

bool Dataset::is_power_of_two() const noexcept {
    const auto n = values_.size();
    return (n & (n - 1)) == 0;
}

std::size_t Dataset::log2_size() const {
    require_power_of_two("log2_size");
    std::size_t k = 0;
    while ((std::size_t{1} << k) < values_.size()) ++k;
    return k;
}

void Dataset::require_power_of_two(const std::string &context) const {
    if (!is_power_of_two()) fail(ErrorCode::kInvalidArgument,
            context + ": dataset length " + std::to_string(values_.size()) +
                " is not a power of two (truncate explicitly; padding would change the mean)");
}

Dataset Dataset::truncated_to_power_of_two() const {
    std::size_t n = 1;
    while (n * 2 <= values_.size()) n *= 2;
    return Dataset(std::vector<double>(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(n)));
}

Dataset Dataset::shard(std::size_t index, std::size_t count) const {
    if (!(count >= 1 && values_.size() % count == 0 && index < count)) fail(ErrorCode::kInvalidArgument,
            "shard: dataset of " + std::to_string(values_.size()) + " does not split into " + std::to_string(count) +
                " equal shards");
    const std::size_t len = values_.size() / count;
    const auto first = values_.begin() + static_cast<std::ptrdiff_t>(index * len);
    return Dataset(std::vector<double>(first, first + static_cast<std::ptrdiff_t>(len)));
}

Dataset generate_uniform_with_mean(std::size_t n, double mu, std::uint64_t seed) {
    require(n >= 1, ErrorCode::kInvalidArgument, "generator: n must be at least 1");
    require(std::abs(mu) <= 1.0, ErrorCode::kInvalidArgument, "generator: target mean outside [-1, 1]");
    RandomStream rng(seed);
    constexpr int kMaxAttempts = 1'000'000;
    // Draws sit in a band around mu and are re-centred before the fixup, so
    // the last value lands near mu instead of drifting like a random walk.
    const double w = 0.95 * (1.0 - std::abs(mu));
    std::vector<double> v(n);
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        double sum = 0.0;
        for (std::size_t j = 0; j + 1 < n; ++j) {
            v[j] = rng.uniform(mu - w, mu + w);
            sum += v[j];
        }
        if (n > 1) {
            const double shift = sum / static_cast<double>(n - 1) - mu;
            sum = 0.0;
            for (std::size_t j = 0; j + 1 < n; ++j) {
                v[j] -= shift;
                sum += v[j];
            }
        }
        const double last = static_cast<double>(n) * mu - sum;
        v[n - 1] = last;
        const bool bounded = std::all_of(v.begin(), v.end(), [](double x) { return std::abs(x) <= 1.0; });
        if (!bounded) continue;
        Dataset d(v);
        if (std::abs(d.mean() - mu) <= 1e-12) return d;
    }
    fail(ErrorCode::kCapExceeded, "generator: could not hit the target mean within the attempt cap");
}

Dataset generate_constant(std::size_t n, double c) {
    require(n >= 1, ErrorCode::kInvalidArgument, "generator: n must be at least 1");
    return Dataset(std::vector<double>(n, c));
}

}  // namespace telecomp
