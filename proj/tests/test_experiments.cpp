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

#include "telecomp/error.hpp"
#include "telecomp/experiments.hpp"

namespace {

using namespace telecomp;
using namespace telecomp::exp;

TEST(Fit, RecoversPowerLaw) {
    const std::vector<double> x{0.1, 0.2, 0.4, 0.8};
    std::vector<double> y;
    for (double v : x) y.push_back(3.0 * std::pow(v, 2.5));
    const SlopeFit f = fit_loglog(x, y);
    EXPECT_TRUE(f.defined);
    EXPECT_NEAR(f.slope, 2.5, 1e-12);
    EXPECT_NEAR(std::exp(f.intercept), 3.0, 1e-12);
}

TEST(Fit, FloorPointsAreDropped) {
    const SlopeFit f = fit_loglog({0.1, 0.2, 0.4}, {0.0, 1e-15, 0.0});
    EXPECT_FALSE(f.defined);
    EXPECT_TRUE(f.exact);
    const SlopeFit g = fit_loglog({0.1, 0.2, 0.4}, {0.0, 0.04, 0.16});
    EXPECT_EQ(g.points, 2u);
    EXPECT_NEAR(g.slope, 2.0, 1e-12);
}

TEST(Sweep, RescaledBaseHasMeanThetaSquared) {
    const Dataset base = sweep_base_dataset(256, 1);
    EXPECT_NEAR(base.mean(), 0.0, 1e-15);
    for (double theta : {0.3, 0.05}) EXPECT_NEAR(rescaled_for_theta(base, theta).mean(), theta * theta, 1e-15);
}

TEST(Sweep, ThetaScalingLaws) {
    const auto res = sweep_theta(sweep_base_dataset(256, 1), {0.2, 0.1, 0.05, 0.025}, true, kick::KickParams{});
    ASSERT_EQ(res.points.size(), 4u);
    EXPECT_GE(res.phase_slope.slope, 2.5);
    EXPECT_GE(res.failure_slope.slope, 3.5);
    for (const auto &p : res.points) EXPECT_NEAR(p.mean, p.theta * p.theta, 1e-15);
}

TEST(Sweep, UniformDataIsExactInLinearMode) {
    kick::KickParams p;
    p.gamma_mode = kick::GammaMode::kLinear;
    const auto res = sweep_theta(generate_constant(16, 0.4), {0.4, 0.2, 0.1}, false, p);
    EXPECT_TRUE(res.phase_slope.exact);
    EXPECT_TRUE(res.failure_slope.exact);
    EXPECT_THROW(sweep_theta(generate_constant(16, 0.4), {0.4, 0.2}, false, p), Error);
}

TEST(Sweep, EtaPhasesMultiply) {
    kick::KickParams p;
    p.r = 3;
    p.alpha = 20;
    const auto res = sweep_eta(generate_constant(8, 0.2), 0.3, {1, 2, 4}, p, 5);
    ASSERT_EQ(res.points.size(), 3u);
    for (const auto &pt : res.points) EXPECT_LE(pt.deviation, 1e-9) << pt.eta;
    EXPECT_EQ(res.points[0].steps_per_processor, res.points[2].steps_per_processor);
}

TEST(OracleCheck, PassesAndCatchesCorruption) {
    const Dataset d = generate_uniform_with_mean(8, 0.1, 3);
    OracleCheckConfig cfg;
    cfg.theta = 0.3;
    const auto ok = oracle_check(d, cfg);
    EXPECT_TRUE(ok.passed);
    EXPECT_FALSE(ok.items.empty());
    cfg.corrupt_gamma_sign = true;
    EXPECT_FALSE(oracle_check(d, cfg).passed);
}

}  // namespace
