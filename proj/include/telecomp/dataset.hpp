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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace telecomp {

/// The N scalar values in [-1, 1] whose mean is estimated.
///
/// Construction validates the range. The quantum estimators additionally need
/// N to be a power of two (checked by require_power_of_two); the classical
/// baseline and the one-particle-per-datum protocol do not.
class Dataset {
  public:
    explicit Dataset(std::vector<double> values);

    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t j) const { return values_[j]; }
    double mean() const noexcept { return mean_; }
    double max_abs() const noexcept { return max_abs_; }

    bool is_power_of_two() const noexcept;
    /// log2(N); throws unless N is a power of two.
    std::size_t log2_size() const;
    void require_power_of_two(const std::string &context) const;

    /// First 2^floor(log2 N) values. Truncation changes the mean; callers
    /// report the dropped count.
    Dataset truncated_to_power_of_two() const;

    /// Contiguous equal shard `index` of `count`.
    Dataset shard(std::size_t index, std::size_t count) const;

  private:
    std::vector<double> values_;
    double mean_ = 0.0;
    double max_abs_ = 0.0;
};

/// N values: N-1 uniform draws in a band around `mu`, shifted so their mean
/// is `mu`, and a last value that makes the mean exact. Draws with any value
/// outside [-1, 1] are rejected.
Dataset generate_uniform_with_mean(std::size_t n, double mu, std::uint64_t seed);
Dataset generate_constant(std::size_t n, double c);

}  // namespace telecomp
