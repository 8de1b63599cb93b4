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
#include <string>
#include <vector>

#include "mubkit/oracle.h"

namespace mubkit {

struct FixtureResult {
    std::string name;
    bool passed = false;
    /// The measured deviation the fixture was judged on (0 for exact checks).
    double deviation = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

/// Runs the regression fixtures for the published worked examples: the N = 2
/// and N = 4 Fourier, position and momentum matrices, the two-outcome
/// coarse-grainings and their sequential products, the predicate verdicts
/// and witnesses, and the small unsharp trace-unbiased construction.
///
/// Each fixture normally uses its own tolerance; `tol_override` replaces all
/// of them.
std::vector<FixtureResult> run_paper_suite(std::optional<double> tol_override = std::nullopt, RngSeed seed = {});

}  // namespace mubkit
