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

#include <gtest/gtest.h>

#include <cmath>

#include "telecomp/baseline.hpp"
#include "telecomp/error.hpp"

namespace {

using namespace telecomp;
using namespace telecomp::baseline;

TEST(Baseline, ConstantDataIsExact) {
    RandomStream rng(1);
    const auto rep = classical_mean_estimate(generate_constant(16, -0.4), 7, rng);
    EXPECT_DOUBLE_EQ(rep.estimate, -0.4);
    EXPECT_EQ(rep.samples_drawn, 7u);
    EXPECT_EQ(rng.counter(), 7u);
}

TEST(Baseline, ExhaustivePassIsTheMean) {
    const Dataset d({0.1, 0.2, -0.7, 0.5, 0.3});
    RandomStream rng(1);
    const auto rep = classical_mean_estimate(d, 5, rng, SamplingMode::kExhaustive);
    EXPECT_NEAR(rep.estimate, d.mean(), 1e-15);
    EXPECT_EQ(rng.counter(), 0u);
    EXPECT_THROW(classical_mean_estimate(d, 4, rng, SamplingMode::kExhaustive), Error);
    EXPECT_THROW(classical_mean_estimate(d, 0, rng), Error);
}

TEST(Baseline, RepeatsAreSeededPerIndex) {
    const Dataset d = generate_uniform_with_mean(100, 0.1, 5);
    std::vector<double> est;
    const auto rep = repeated_estimate(d, 30, 10, 77, &est);
    ASSERT_EQ(est.size(), 10u);
    RandomStream r3(derive_seed(77, 3));
    EXPECT_EQ(est[3], classical_mean_estimate(d, 30, r3).estimate);
    EXPECT_EQ(rep.estimate, est[0]);
    EXPECT_EQ(rep.samples_drawn, 300u);
}

// Standard deviation of the sample mean is sigma / sqrt(n).
TEST(Baseline, StdFollowsCentralLimit) {
    const Dataset d = generate_uniform_with_mean(1000, 0.0, 9);
    double var = 0.0;
    for (double v : d.values()) var += (v - d.mean()) * (v - d.mean());
    const double sigma = std::sqrt(var / d.size());
    for (std::uint64_t n : {100u, 400u, 1600u}) {
        const auto rep = repeated_estimate(d, n, 400, n);
        EXPECT_NEAR(rep.empirical_std, sigma / std::sqrt(double(n)), 0.15 * sigma / std::sqrt(double(n))) << n;
    }
}

TEST(Baseline, EstimateIsUnbiased) {
    const Dataset d = generate_uniform_with_mean(64, 0.3, 2);
    std::vector<double> est;
    const auto rep = repeated_estimate(d, 50, 2000, 1, &est);
    double m = 0.0;
    for (double e : est) m += e;
    m /= est.size();
    EXPECT_NEAR(m, 0.3, 4.0 * rep.empirical_std / std::sqrt(2000.0));
}

TEST(Baseline, RequiredSamples) {
    EXPECT_EQ(required_samples(0.01), 10000u);
    EXPECT_EQ(required_samples(0.1, 2.0), 200u);
    EXPECT_EQ(required_samples(0.3), 12u);
    EXPECT_THROW(required_samples(0.0), Error);
    EXPECT_THROW(required_samples(0.1, -1.0), Error);
}

}  // namespace
