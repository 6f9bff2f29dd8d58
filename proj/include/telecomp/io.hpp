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
#include <string>

#include <json.hpp>

#include "telecomp/baseline.hpp"
#include "telecomp/dataset.hpp"
#include "telecomp/experiments.hpp"
#include "telecomp/qsim.hpp"
#include "telecomp/report.hpp"
#include "telecomp/telecompute.hpp"

namespace telecomp::io {

using Json = nlohmann::ordered_json;

/// Parses a JSON array of numbers, or CSV text with one value per line
/// (blank lines and lines starting with '#' skipped).
Dataset parse_dataset(const std::string &text);
Dataset load_dataset(const std::string &path);

/// Generator specs:
///   uniform:mu=<m>,n=<N>[,seed=<s>]   N-1 uniforms plus an exact-mean fixup
///   constant:c=<c>,n=<N>
///   skewed:n=<N>[,seed=<s>]           zero-mean skewed sweep base
///   list:<v1>,<v2>,...
/// `default_seed` applies when a uniform spec has no seed.
Dataset generate_from_spec(const std::string &spec, std::uint64_t default_seed);

std::string read_text_file(const std::string &path);
/// Writes UTF-8 text, adding a final newline when missing.
void write_text_file(const std::string &path, const std::string &text);

Json to_json(const EstimateReport &r);
Json to_json(const baseline::BaselineReport &r);
Json to_json(const net::LadderReport &r);
Json to_json(const exp::ThetaSweepResult &r);
Json to_json(const exp::EtaSweepResult &r);
Json to_json(const exp::OracleCheckReport &r);
Json to_json(const kick::ScheduleResult &r);
/// {"num_sites": n, "amplitudes": [[index, re, im], ...]} for amplitudes
/// above 1e-14.
Json state_to_json(const qsim::StateVector &s);

/// Header line plus one row per record.
std::string to_csv(const EstimateReport &r);
std::string to_csv(const baseline::BaselineReport &r);
std::string to_csv(const exp::ThetaSweepResult &r);
std::string to_csv(const exp::EtaSweepResult &r);

/// Pretty-printed JSON with a trailing newline.
std::string dump(const Json &j);

}  // namespace telecomp::io
