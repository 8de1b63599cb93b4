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

#include "mubkit/io.h"

#include <fstream>
#include <sstream>

#include "mubkit/error.h"

#ifndef MUBKIT_VERSION
#define MUBKIT_VERSION "0.0.0"
#endif

namespace mubkit {

using nlohmann::json;

namespace {

// -0.0 prints as "-0.0"; fold it so equal matrices serialize identically.
double clean(double v) {
    return v == 0.0 ? 0.0 : v;
}

[[noreturn]] void parse_error(const std::string &what) {
    raise(ErrorCode::ParseError, what);
}

const json &field(const json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        parse_error(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

double number(const json &j, const char *what) {
    if (!j.is_number()) {
        parse_error(std::string(what) + " must be a number");
    }
    return j.get<double>();
}

json optional_number(const std::optional<double> &v) {
    return v ? json(*v) : json(nullptr);
}

ComplexVector vector_from_json(const json &j) {
    if (!j.is_array()) {
        parse_error("state vector must be an array");
    }
    ComplexVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t k = 0; k < j.size(); k++) {
        v(static_cast<Eigen::Index>(k)) = complex_from_json(j[k]);
    }
    return v;
}

json vector_to_json(const ComplexVector &v) {
    json out = json::array();
    for (Eigen::Index k = 0; k < v.size(); k++) {
        out.push_back(complex_to_json(v(k)));
    }
    return out;
}

}  // namespace

json complex_to_json(Complex z) {
    return json::array({clean(z.real()), clean(z.imag())});
}

Complex complex_from_json(const json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        parse_error("complex entries must be [re, im] pairs of numbers");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const ComplexMatrix &m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.dim(); r++) {
        json row = json::array();
        for (std::size_t c = 0; c < m.dim(); c++) {
            row.push_back(complex_to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const json &j) {
    if (!j.is_array() || j.empty()) {
        parse_error("matrix must be a non-empty array of rows");
    }
    auto d = static_cast<Eigen::Index>(j.size());
    Eigen::MatrixXcd m(d, d);
    for (Eigen::Index r = 0; r < d; r++) {
        const json &row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
            parse_error("matrix must be square");
        }
        for (Eigen::Index c = 0; c < d; c++) {
            m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
        }
    }
    if (!m.allFinite()) {
        parse_error("matrix entries must be finite");
    }
    return ComplexMatrix(std::move(m));
}

json matrix_file_to_json(const ComplexMatrix &m) {
    json out = json::object();
    out["dim"] = m.dim();
    out["matrix"] = matrix_to_json(m);
    return out;
}

ComplexMatrix matrix_file_from_json(const json &j) {
    const json &dim = field(j, "dim");
    ComplexMatrix m = matrix_from_json(field(j, "matrix"));
    if (!dim.is_number_unsigned() || dim.get<std::size_t>() != m.dim()) {
        parse_error("'dim' does not match the matrix");
    }
    return m;
}

json observable_to_json(const Observable &a) {
    json out = json::object();
    out["dim"] = a.dim();
    out["outcomes"] = a.outcomes();
    json effects = json::array();
    for (const auto &e : a.effects()) {
        effects.push_back(matrix_to_json(e.matrix()));
    }
    out["effects"] = std::move(effects);
    return out;
}

Observable observable_from_json(const json &j, std::optional<double> tol) {
    const json &dim_j = field(j, "dim");
    if (!dim_j.is_number_unsigned() || dim_j.get<std::size_t>() == 0) {
        parse_error("'dim' must be a positive integer");
    }
    auto dim = dim_j.get<std::size_t>();
    const json &outcomes_j = field(j, "outcomes");
    const json &effects_j = field(j, "effects");
    if (!outcomes_j.is_array() || !effects_j.is_array()) {
        parse_error("'outcomes' and 'effects' must be arrays");
    }
    std::vector<std::string> outcomes;
    for (const auto &label : outcomes_j) {
        if (!label.is_string()) {
            parse_error("outcome labels must be strings");
        }
        outcomes.push_back(label.get<std::string>());
    }
    std::vector<ComplexMatrix> matrices;
    for (const auto &m : effects_j) {
        matrices.push_back(matrix_from_json(m));
    }
    return Observable::create(dim, std::move(outcomes), matrices, tol.value_or(default_tol(dim)));
}

json verdict_to_json(const Verdict &v) {
    json out = json::object();
    out["holds"] = v.holds;
    out["max_deviation"] = v.max_deviation;
    out["vacuous"] = v.vacuous;
    out["marginal"] = v.marginal;
    if (v.witness) {
        const Witness &w = *v.witness;
        json wj = json::object();
        wj["outcomes"] = w.outcomes;
        wj["state"] = w.state ? vector_to_json(*w.state) : json(nullptr);
        wj["observed"] = w.observed;
        wj["expected"] = w.expected;
        wj["note"] = w.note;
        out["witness"] = std::move(wj);
    } else {
        out["witness"] = nullptr;
    }
    return out;
}

Verdict verdict_from_json(const json &j) {
    Verdict v;
    try {
        v.holds = field(j, "holds").get<bool>();
        v.max_deviation = number(field(j, "max_deviation"), "max_deviation");
        v.vacuous = field(j, "vacuous").get<bool>();
        v.marginal = field(j, "marginal").get<bool>();
        const json &wj = field(j, "witness");
        if (!wj.is_null()) {
            Witness w;
            w.outcomes = field(wj, "outcomes").get<std::vector<std::string>>();
            const json &state = field(wj, "state");
            if (!state.is_null()) {
                w.state = vector_from_json(state);
            }
            w.observed = number(field(wj, "observed"), "observed");
            w.expected = number(field(wj, "expected"), "expected");
            w.note = field(wj, "note").get<std::string>();
            v.witness = std::move(w);
        }
    } catch (const json::exception &e) {
        parse_error(std::string("verdict: ") + e.what());
    }
    return v;
}

json pair_report_to_json(const PairReport &r) {
    auto opt = [](const std::optional<Verdict> &v) { return v ? verdict_to_json(*v) : json(nullptr); };
    json out = json::object();
    out["dim"] = r.dim;
    out["m"] = r.m;
    out["n"] = r.n;
    out["both_atomic"] = r.both_atomic;
    json verdicts = json::object();
    verdicts["mu"] = opt(r.mu);
    verdicts["condition1"] = opt(r.condition1);
    verdicts["condition2"] = opt(r.condition2);
    verdicts["value_complementary"] = opt(r.value_complementary);
    verdicts["generalized_mu"] = opt(r.generalized_mu);
    out["verdicts"] = std::move(verdicts);
    out["alpha"] = optional_number(r.alpha);
    return out;
}

PairReport pair_report_from_json(const json &j) {
    PairReport r;
    auto opt = [](const json &v) -> std::optional<Verdict> {
        if (v.is_null()) {
            return std::nullopt;
        }
        return verdict_from_json(v);
    };
    try {
        r.dim = field(j, "dim").get<std::size_t>();
        r.m = field(j, "m").get<std::size_t>();
        r.n = field(j, "n").get<std::size_t>();
        r.both_atomic = field(j, "both_atomic").get<bool>();
        const json &v = field(j, "verdicts");
        r.mu = opt(field(v, "mu"));
        r.condition1 = opt(field(v, "condition1"));
        r.condition2 = opt(field(v, "condition2"));
        r.value_complementary = opt(field(v, "value_complementary"));
        r.generalized_mu = opt(field(v, "generalized_mu"));
        const json &alpha = field(j, "alpha");
        if (!alpha.is_null()) {
            r.alpha = number(alpha, "alpha");
        }
    } catch (const json::exception &e) {
        parse_error(std::string("report: ") + e.what());
    }
    return r;
}

json report_file_to_json(const ReportFile &r) {
    json out = json::object();
    out["tool"] = r.tool;
    out["version"] = r.version;
    out["inputs"] = r.inputs;
    out["predicate"] = r.predicate;
    out["tolerance"] = r.tolerance;
    out["report"] = pair_report_to_json(r.report);
    return out;
}

ReportFile report_file_from_json(const json &j) {
    ReportFile r;
    try {
        r.tool = field(j, "tool").get<std::string>();
        r.version = field(j, "version").get<std::string>();
        r.inputs = field(j, "inputs").get<std::map<std::string, std::string>>();
        r.predicate = field(j, "predicate").get<std::string>();
        r.tolerance = number(field(j, "tolerance"), "tolerance");
    } catch (const json::exception &e) {
        parse_error(std::string("report file: ") + e.what());
    }
    r.report = pair_report_from_json(field(j, "report"));
    return r;
}

std::string dump(const json &j) {
    return j.dump(2) + "\n";
}

json read_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        raise(ErrorCode::IoError, "cannot open " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        raise(ErrorCode::ParseError, path.string() + ": " + e.what());
    }
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        raise(ErrorCode::IoError, "cannot write " + path.string());
    }
    out << text;
    if (!out) {
        raise(ErrorCode::IoError, "write failed for " + path.string());
    }
}

std::string library_version() {
    return MUBKIT_VERSION;
}

}  // namespace mubkit
