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

// Links the shared library only.

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "telecomp/telecomp.h"

namespace {

struct Ds {
    tc_dataset *p = nullptr;
    ~Ds() { tc_dataset_free(p); }
};
struct Res {
    tc_result *p = nullptr;
    ~Res() { tc_result_free(p); }
};

TEST(CApi, StatusNamesAndVersion) {
    EXPECT_STREQ(tc_status_name(TC_OK), "ok");
    EXPECT_STRNE(tc_status_name(TC_BOUND_VIOLATION), tc_status_name(TC_CAP_EXCEEDED));
    EXPECT_GT(std::strlen(tc_version()), 0u);
}

TEST(CApi, NullArgumentsAreRejected) {
    tc_dataset *ds = nullptr;
    EXPECT_EQ(tc_dataset_from_values(nullptr, 3, &ds), TC_INVALID_ARGUMENT);
    EXPECT_EQ(tc_dataset_generate(nullptr, 0, &ds), TC_INVALID_ARGUMENT);
    EXPECT_EQ(tc_estimate_serial(nullptr, 0.1, nullptr, 0, nullptr), TC_INVALID_ARGUMENT);
    EXPECT_STRNE(tc_last_error(), "");
    tc_dataset_free(nullptr);
    tc_result_free(nullptr);
    tc_state_free(nullptr);
}

TEST(CApi, DatasetLifecycle) {
    Ds ds;
    ASSERT_EQ(tc_dataset_generate("list:0.1,0.2,0.3,0.4,0.5", 0, &ds.p), TC_OK);
    EXPECT_STREQ(tc_last_error(), "");
    size_t dropped = 0;
    ASSERT_EQ(tc_dataset_truncate_pow2(ds.p, &dropped), TC_OK);
    EXPECT_EQ(dropped, 1u);
    EXPECT_EQ(tc_dataset_size(ds.p), 4u);
    std::vector<double> v(4);
    EXPECT_EQ(tc_dataset_values(ds.p, v.data(), v.size()), TC_OK);
    EXPECT_DOUBLE_EQ(v[3], 0.4);
    EXPECT_EQ(tc_dataset_values(ds.p, v.data(), 2), TC_OUT_OF_RANGE);
    EXPECT_EQ(tc_dataset_load("/nonexistent/x.csv", &ds.p), TC_IO);
}

TEST(CApi, SerialEstimateAndSchedule) {
    Ds ds;
    ASSERT_EQ(tc_dataset_generate("constant:c=2e-8,n=4", 0, &ds.p), TC_OK);
    tc_kick_options k;
    tc_kick_options_default(&k);
    k.ideal = 1;
    tc_schedule_options s;
    tc_schedule_options_default(&s);
    Res res;
    ASSERT_EQ(tc_estimate_schedule(ds.p, &s, &k, 1, &res.p), TC_OK);
    const std::string json = tc_result_json(res.p);
    EXPECT_NE(json.find("\"reductions\": 18"), std::string::npos) << json;
    EXPECT_NEAR(tc_result_value(res.p), 2e-8, 1e-10);
}

TEST(CApi, DistributedBoundViolationAndForce) {
    Ds ds;
    ASSERT_EQ(tc_dataset_generate("list:1,-1,1,1", 0, &ds.p), TC_OK);
    tc_kick_options k;
    tc_kick_options_default(&k);
    k.r = 1;
    k.alpha = 10;
    tc_distributed_options d;
    tc_distributed_options_default(&d);
    d.eta = 500;
    Res res;
    EXPECT_EQ(tc_estimate_distributed(ds.p, 1.0, &d, &k, 1, &res.p), TC_BOUND_VIOLATION);
    d.eta = 3;
    d.force = 1;
    ASSERT_EQ(tc_estimate_distributed(ds.p, 1.0, &d, &k, 1, &res.p), TC_OK);
    EXPECT_NE(std::string(tc_result_trace(res.p)).find("\"event\""), std::string::npos);
    EXPECT_NE(std::string(tc_result_csv(res.p)), "");
}

TEST(CApi, OracleCheckVerdict) {
    Ds ds;
    ASSERT_EQ(tc_dataset_generate("uniform:mu=0.1,n=8", 3, &ds.p), TC_OK);
    tc_oracle_options o;
    tc_oracle_options_default(&o);
    Res good, bad;
    ASSERT_EQ(tc_oracle_check(ds.p, &o, &good.p), TC_OK);
    EXPECT_EQ(tc_result_passed(good.p), 1);
    o.corrupt_gamma_sign = 1;
    ASSERT_EQ(tc_oracle_check(ds.p, &o, &bad.p), TC_OK);
    EXPECT_EQ(tc_result_passed(bad.p), 0);
}

TEST(CApi, BaselineLadderAndSamples) {
    Ds ds;
    ASSERT_EQ(tc_dataset_generate("constant:c=0.25,n=10", 0, &ds.p), TC_OK);
    Res b, l;
    ASSERT_EQ(tc_baseline(ds.p, 20, 5, 0, 1, &b.p), TC_OK);
    EXPECT_DOUBLE_EQ(tc_result_value(b.p), 0.25);
    const double phases[4] = {0.1, 0.1, 0.1, 0.1};
    ASSERT_EQ(tc_ladder(phases, 4, 2, 3, &l.p), TC_OK);
    uint64_t n = 0;
    ASSERT_EQ(tc_required_samples(0.01, 1.0, &n), TC_OK);
    EXPECT_EQ(n, 10000u);
    EXPECT_EQ(tc_required_samples(0.0, 1.0, &n), TC_INVALID_ARGUMENT);
}

TEST(CApi, SweepsProduceTables) {
    Ds ds;
    ASSERT_EQ(tc_dataset_generate("skewed:n=64", 1, &ds.p), TC_OK);
    tc_kick_options k;
    tc_kick_options_default(&k);
    const double thetas[3] = {0.2, 0.1, 0.05};
    Res t;
    ASSERT_EQ(tc_sweep_theta(ds.p, thetas, 3, 1, &k, &t.p), TC_OK);
    EXPECT_NE(std::string(tc_result_csv(t.p)).find('\n'), std::string::npos);
    Ds c;
    ASSERT_EQ(tc_dataset_generate("constant:c=0.2,n=4", 0, &c.p), TC_OK);
    k.r = 2;
    k.alpha = 10;
    const uint64_t etas[3] = {1, 2, 3};
    Res e;
    ASSERT_EQ(tc_sweep_eta(c.p, 0.3, etas, 3, &k, 1, &e.p), TC_OK);
}

TEST(CApi, StateHandle) {
    tc_state *s = nullptr;
    ASSERT_EQ(tc_state_new(2, &s), TC_OK);
    EXPECT_EQ(tc_state_num_sites(s), 2u);
    ASSERT_EQ(tc_state_apply_m(s, 0), TC_OK);
    ASSERT_EQ(tc_state_apply_cnot(s, 0, 1), TC_OK);
    double re = 0, im = 0;
    ASSERT_EQ(tc_state_amplitude(s, 3, &re, &im), TC_OK);
    EXPECT_NEAR(re, 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_EQ(tc_state_apply_m(s, 5), TC_OUT_OF_RANGE);
    const size_t sites[2] = {0, 1};
    int bits[2] = {-1, -1};
    ASSERT_EQ(tc_state_measure(s, sites, 2, 4, bits), TC_OK);
    EXPECT_EQ(bits[0], bits[1]);
    tc_state_free(s);

    const double r[2] = {0.6, 0.0}, i[2] = {0.0, 0.8};
    ASSERT_EQ(tc_state_from_amplitudes(r, i, 2, &s), TC_OK);
    ASSERT_EQ(tc_state_rotate_basis_phase(s, 1, M_PI / 2), TC_OK);
    ASSERT_EQ(tc_state_amplitude(s, 1, &re, &im), TC_OK);
    EXPECT_NEAR(re, -0.8, 1e-15);
    tc_state_free(s);
    EXPECT_EQ(tc_state_from_amplitudes(r, i, 3, &s), TC_INVALID_ARGUMENT);
}

}  // namespace
