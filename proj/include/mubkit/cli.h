// Copyright 2026 The mubkit Authors
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

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "mubkit/observables.h"

namespace mubkit::cli {

inline constexpr int kExitHolds = 0;
inline constexpr int kExitFails = 1;
inline constexpr int kExitInputError = 2;

/// Entry point for the `mubkit` tool. Reports go to `out` as JSON; human
/// summaries and diagnostics go to `err`.
///
///   mubkit construct {position|momentum|fourier|example5|example6} N [--out PATH]
///   mubkit check {mu|condition1|condition2|value-complementary|generalized-mu|all} A.json B.json [--tol X]
///   mubkit coarse-grain A.json "0,1|2,3" [--out PATH] [--tol X]
///   mubkit paper-suite [--tol X] [--seed S]
///
/// `MUBKIT_TOL` in the environment replaces the default tolerance 1e-9 * d.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// "0,1|2,3" -> {{"0", "1"}, {"2", "3"}}. Whitespace around labels is ignored.
/// Throws BadPartition on empty fibers.
std::vector<std::vector<std::string>> parse_partition_spec(std::string_view spec);

/// MUBKIT_TOL if set and parseable, otherwise nothing.
std::optional<double> env_tolerance();

}  // namespace mubkit::cli
