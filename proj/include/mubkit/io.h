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

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"
#include "mubkit/analysis.h"

namespace mubkit {

// Complex numbers are always [re, im]; matrices are row-major arrays of rows.

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json &j);

nlohmann::json matrix_to_json(const ComplexMatrix &m);
/// Throws ParseError on shape or type errors.
ComplexMatrix matrix_from_json(const nlohmann::json &j);

/// {"dim": d, "matrix": [...]}
nlohmann::json matrix_file_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_file_from_json(const nlohmann::json &j);

/// {"dim": d, "outcomes": [...], "effects": [matrix, ...]}
nlohmann::json observable_to_json(const Observable &a);
/// Validates at `tol`, or default_tol(dim) when absent. Throws ParseError for
/// malformed documents and the Observable errors for invalid contents.
Observable observable_from_json(const nlohmann::json &j, std::optional<double> tol = std::nullopt);

nlohmann::json verdict_to_json(const Verdict &v);
Verdict verdict_from_json(const nlohmann::json &j);
nlohmann::json pair_report_to_json(const PairReport &r);
PairReport pair_report_from_json(const nlohmann::json &j);

struct ReportFile {
    std::string tool = "mubkit";
    std::string version;
    /// Input name -> path or constructor spec.
    std::map<std::string, std::string> inputs;
    std::string predicate;
    double tolerance = 0.0;
    PairReport report;
};

nlohmann::json report_file_to_json(const ReportFile &r);
ReportFile report_file_from_json(const nlohmann::json &j);

/// Deterministic serialization: two-space indent, trailing newline.
std::string dump(const nlohmann::json &j);

/// Throws IoError or ParseError.
nlohmann::json read_json_file(const std::filesystem::path &path);
/// Throws IoError.
void write_text_file(const std::filesystem::path &path, const std::string &text);

std::string library_version();

}  // namespace mubkit
