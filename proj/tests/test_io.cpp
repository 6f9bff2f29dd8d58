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

#include <cstdio>
#include <filesystem>

#include "telecomp/error.hpp"
#include "telecomp/io.hpp"

namespace {

using namespace telecomp;

ErrorCode code_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    return static_cast<ErrorCode>(0);
}

TEST(Parse, JsonAndCsv) {
    EXPECT_EQ(io::parse_dataset("[0.5, -0.25, 1]").size(), 3u);
    const Dataset d = io::parse_dataset("# header\n0.5\n\n-0.25\n  1.0 \n");
    ASSERT_EQ(d.size(), 3u);
    EXPECT_DOUBLE_EQ(d[1], -0.25);
    EXPECT_EQ(code_of([] { io::parse_dataset("0.5\nabc\n"); }), ErrorCode::kInvalidArgument);
    EXPECT_EQ(code_of([] { io::parse_dataset("[0.5, \"x\"]"); }), ErrorCode::kInvalidArgument);
    EXPECT_EQ(code_of([] { io::parse_dataset("1.5\n"); }), ErrorCode::kInvalidArgument);
    EXPECT_EQ(code_of([] { io::parse_dataset(""); }), ErrorCode::kInvalidArgument);
}

TEST(Parse, MissingFileIsIoError) {
    EXPECT_EQ(code_of([] { io::load_dataset("/nonexistent/telecomp.csv"); }), ErrorCode::kIo);
}

TEST(Generators, UniformHitsMeanExactly) {
    for (double mu : {0.0, 0.2, -0.5, 0.9}) {
        for (std::size_t n : {2u, 16u, 1000u}) {
            const Dataset d = generate_uniform_with_mean(n, mu, 3);
            EXPECT_NEAR(d.mean(), mu, 1e-12);
            EXPECT_LE(d.max_abs(), 1.0);
        }
    }
    EXPECT_THROW(generate_uniform_with_mean(8, 1.5, 1), Error);
}

TEST(Generators, SpecsAndSeeds) {
    const Dataset a = io::generate_from_spec("uniform:mu=0.1,n=32", 4);
    const Dataset b = io::generate_from_spec("uniform:mu=0.1,n=32,seed=4", 99);
    ASSERT_EQ(a.size(), 32u);
    for (std::size_t j = 0; j < 32; ++j) EXPECT_EQ(a[j], b[j]);
    EXPECT_DOUBLE_EQ(io::generate_from_spec("constant:c=0.3,n=4", 0)[3], 0.3);
    EXPECT_NEAR(io::generate_from_spec("skewed:n=64", 1).mean(), 0.0, 1e-12);
    EXPECT_EQ(io::generate_from_spec("list:0.1,0.2,0.3", 0).size(), 3u);
    EXPECT_THROW(io::generate_from_spec("gaussian:n=4", 0), Error);
    EXPECT_THROW(io::generate_from_spec("uniform:mu=0.1", 0), Error);
    EXPECT_THROW(io::generate_from_spec("uniform:mu=0.1,n=4,bogus=1", 0), Error);
}

TEST(Dataset, TruncationAndShards) {
    const Dataset d({0.1, 0.2, 0.3, 0.4, 0.5, 0.6});
    const Dataset t = d.truncated_to_power_of_two();
    EXPECT_EQ(t.size(), 4u);
    EXPECT_NEAR(t.mean(), 0.25, 1e-15);
    EXPECT_FALSE(d.is_power_of_two());
    EXPECT_THROW(d.log2_size(), Error);
    EXPECT_DOUBLE_EQ(t.shard(1, 2)[0], 0.3);
    EXPECT_THROW(d.shard(0, 4), Error);
}

TEST(Files, WriteAddsTrailingNewlineAndRoundTrips) {
    const auto path = (std::filesystem::temp_directory_path() / "telecomp_io_test.csv").string();
    io::write_text_file(path, "0.5\n-0.5");
    const std::string text = io::read_text_file(path);
    EXPECT_EQ(text.back(), '\n');
    EXPECT_EQ(io::load_dataset(path).size(), 2u);
    std::remove(path.c_str());
}

TEST(Reports, EstimateJsonHasRequiredFields) {
    EstimateReport r;
    r.protocol = "serial";
    r.mu_e = 0.01;
    r.eta_bound = 12;
    const auto j = io::to_json(r);
    for (const char *k : {"mu_e", "theta", "r", "alpha", "restarts", "elementary_step_count", "seed", "half_width",
                          "protocol", "rng", "eta", "eta_bound", "theta_schedule"})
        EXPECT_TRUE(j.contains(k)) << k;
    EXPECT_EQ(j["eta_bound"], 12);
    r.eta_bound.reset();
    EXPECT_TRUE(io::to_json(r)["eta_bound"].is_null());
    EXPECT_EQ(io::dump(j).back(), '\n');
    const std::string csv = io::to_csv(r);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
}

TEST(Reports, StateJsonListsNonzeroAmplitudes) {
    qsim::StateVector s(2);
    s.apply_m(1);
    const auto j = io::state_to_json(s);
    EXPECT_EQ(j["num_sites"], 2);
    ASSERT_EQ(j["amplitudes"].size(), 2u);
    EXPECT_EQ(j["amplitudes"][1][0], 1);
}

}  // namespace
