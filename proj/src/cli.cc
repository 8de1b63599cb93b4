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

#include "mubkit/cli.h"

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "mubkit/error.h"
#include "mubkit/fourier.h"
#include "mubkit/io.h"
#include "mubkit/paper_suite.h"

namespace mubkit::cli {

namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
    auto begin = s.find_first_not_of(" \t");
    if (begin == std::string_view::npos) {
        return "";
    }
    auto end = s.find_last_not_of(" \t");
    return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return parts;
}

double resolve_tol(const std::optional<double> &flag, std::size_t dim) {
    if (flag) {
        return *flag;
    }
    return env_tolerance().value_or(default_tol(dim));
}

void emit(const json &doc, const std::string &out_path, std::ostream &out) {
    if (out_path.empty()) {
        out << dump(doc);
    } else {
        write_text_file(out_path, dump(doc));
    }
}

struct ConstructOptions {
    std::string kind;
    std::size_t n = 0;
    std::string out;
};

int cmd_construct(const ConstructOptions &opt, std::ostream &out, std::ostream &err) {
    if (opt.kind == "position") {
        emit(observable_to_json(position_observable(opt.n)), opt.out, out);
    } else if (opt.kind == "momentum") {
        emit(observable_to_json(momentum_observable(opt.n)), opt.out, out);
    } else if (opt.kind == "fourier") {
        emit(matrix_file_to_json(fourier_matrix(opt.n)), opt.out, out);
    } else if (opt.kind == "example5" || opt.kind == "example6") {
        if (opt.n != 4) {
            raise(ErrorCode::InvalidDim, opt.kind + " is defined for N = 4 only");
        }
        auto ex = example_partitions();
        bool five = opt.kind == "example5";
        const Observable &second = five ? ex.p_parity : ex.p_adjacent;
        const char *second_name = five ? "P_prime" : "P_double_prime";
        if (opt.out.empty()) {
            json doc = json::object();
            doc["Q_prime"] = observable_to_json(ex.q_halves);
            doc[second_name] = observable_to_json(second);
            out << dump(doc);
        } else {
            std::filesystem::path dir(opt.out);
            std::error_code ec;
            std::filesystem::create_directories(dir, ec);
            if (ec) {
                raise(ErrorCode::IoError, "cannot create directory " + dir.string());
            }
            write_text_file(dir / "Q_prime.json", dump(observable_to_json(ex.q_halves)));
            write_text_file(dir / (std::string(second_name) + ".json"), dump(observable_to_json(second)));
        }
    } else {
        raise(ErrorCode::InvalidParams, "unknown kind '" + opt.kind + "'");
    }
    err << "constructed " << opt.kind << " N=" << opt.n << "\n";
    return kExitHolds;
}

struct CheckOptions {
    std::string predicate;
    std::string file_a;
    std::string file_b;
    std::optional<double> tol;
};

bool all_requested_hold(const PairReport &r) {
    for (const auto *v : {&r.mu, &r.condition1, &r.condition2, &r.value_complementary, &r.generalized_mu}) {
        if (*v && !(*v)->holds) {
            return false;
        }
    }
    return true;
}

void summarize(const std::string &name, const std::optional<Verdict> &v, std::ostream &err) {
    if (!v) {
        err << "  " << std::left << std::setw(20) << name << "n/a\n";
        return;
    }
    err << "  " << std::left << std::setw(20) << name << (v->holds ? "holds" : "fails") << "  max deviation "
        << v->max_deviation;
    if (v->vacuous) {
        err << "  [vacuous]";
    }
    if (v->marginal) {
        err << "  [marginal]";
    }
    if (v->witness) {
        err << "  witness";
        for (const auto &label : v->witness->outcomes) {
            err << " " << label;
        }
        err << ": observed " << v->witness->observed << ", expected " << v->witness->expected;
    }
    err << "\n";
}

int cmd_check(const CheckOptions &opt, std::ostream &out, std::ostream &err) {
    json ja = read_json_file(opt.file_a);
    json jb = read_json_file(opt.file_b);
    std::size_t dim = 0;
    if (ja.is_object() && ja.contains("dim") && ja["dim"].is_number_unsigned()) {
        dim = ja["dim"].get<std::size_t>();
    }
    double tol = resolve_tol(opt.tol, std::max<std::size_t>(dim, 1));
    Observable a = observable_from_json(ja, tol);
    Observable b = observable_from_json(jb, tol);
    if (a.dim() != b.dim()) {
        raise(ErrorCode::DimMismatch, "observables have different dimensions");
    }

    PairReport report;
    if (opt.predicate == "all") {
        report = classify_pair(a, b, tol);
    } else {
        report.dim = a.dim();
        report.m = a.size();
        report.n = b.size();
        report.both_atomic = is_atomic(a) && is_atomic(b);
        if (opt.predicate == "mu") {
            report.mu = check_mu(a, b, tol);
        } else if (opt.predicate == "condition1") {
            report.condition1 = check_condition1(a, b, tol);
        } else if (opt.predicate == "condition2") {
            report.condition2 = check_condition2(a, b, tol);
        } else if (opt.predicate == "value-complementary") {
            report.value_complementary = check_value_complementary(a, b, tol);
        } else if (opt.predicate == "generalized-mu") {
            report.generalized_mu = check_generalized_mu(a, b, tol);
            if (report.generalized_mu->holds) {
                report.alpha = forced_alpha(a, b);
            }
        } else {
            raise(ErrorCode::InvalidParams, "unknown predicate '" + opt.predicate + "'");
        }
    }

    ReportFile file;
    file.version = library_version();
    file.inputs = {{"a", opt.file_a}, {"b", opt.file_b}};
    file.predicate = opt.predicate;
    file.tolerance = tol;
    file.report = report;
    out << dump(report_file_to_json(file));

    err << "d=" << report.dim << " m=" << report.m << " n=" << report.n << " tol=" << tol << "\n";
    summarize("mu", report.mu, err);
    summarize("condition1", report.condition1, err);
    summarize("condition2", report.condition2, err);
    summarize("value-complementary", report.value_complementary, err);
    summarize("generalized-mu", report.generalized_mu, err);
    if (report.alpha) {
        err << "  alpha = " << *report.alpha << "\n";
    }
    return all_requested_hold(report) ? kExitHolds : kExitFails;
}

struct CoarseGrainOptions {
    std::string file;
    std::string spec;
    std::string out;
    std::optional<double> tol;
};

int cmd_coarse_grain(const CoarseGrainOptions &opt, std::ostream &out, std::ostream &err) {
    json ja = read_json_file(opt.file);
    std::size_t dim = 1;
    if (ja.is_object() && ja.contains("dim") && ja["dim"].is_number_unsigned()) {
        dim = std::max<std::size_t>(ja["dim"].get<std::size_t>(), 1);
    }
    Observable a = observable_from_json(ja, resolve_tol(opt.tol, dim));
    auto f = PartitionMap::from_fibers(a.outcomes(), parse_partition_spec(opt.spec));
    Observable b = coarse_grain(a, f);
    emit(observable_to_json(b), opt.out, out);
    err << "coarse-grained " << a.size() << " outcomes into " << b.size() << "\n";
    return kExitHolds;
}

struct SuiteOptions {
    std::optional<double> tol;
    std::uint64_t seed = 0;
};

int cmd_paper_suite(const SuiteOptions &opt, std::ostream &out, std::ostream &err) {
    std::optional<double> tol = opt.tol ? opt.tol : env_tolerance();
    auto results = run_paper_suite(tol, RngSeed{opt.seed});
    std::size_t failed = 0;
    json doc = json::array();
    for (const auto &r : results) {
        failed += !r.passed;
        err << (r.passed ? "PASS  " : "FAIL  ") << r.name;
        if (!r.passed) {
            err << "\n      " << r.detail;
        }
        err << "\n";
        json row = json::object();
        row["name"] = r.name;
        row["passed"] = r.passed;
        row["deviation"] = r.deviation;
        row["tolerance"] = r.tolerance;
        row["detail"] = r.detail;
        doc.push_back(std::move(row));
    }
    err << (results.size() - failed) << "/" << results.size() << " fixtures passed\n";
    out << dump(doc);
    return failed == 0 ? kExitHolds : kExitFails;
}

}  // namespace

std::vector<std::vector<std::string>> parse_partition_spec(std::string_view spec) {
    std::vector<std::vector<std::string>> fibers;
    for (auto part : split(spec, '|')) {
        std::vector<std::string> fiber;
        for (auto label : split(part, ',')) {
            std::string t = trim(label);
            if (t.empty()) {
                raise(ErrorCode::BadPartition, "empty label in partition spec '" + std::string(spec) + "'");
            }
            fiber.push_back(std::move(t));
        }
        fibers.push_back(std::move(fiber));
    }
    return fibers;
}

std::optional<double> env_tolerance() {
    const char *raw = std::getenv("MUBKIT_TOL");
    if (raw == nullptr || *raw == '\0') {
        return std::nullopt;
    }
    char *end = nullptr;
    double v = std::strtod(raw, &end);
    if (end == raw || *end != '\0' || !(v >= 0.0)) {
        return std::nullopt;
    }
    return v;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Effects, observables and unbiasedness predicates on finite-dimensional Hilbert spaces", "mubkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", library_version());

    ConstructOptions construct;
    auto *sc_construct = app.add_subcommand("construct", "Write a position/momentum observable, a Fourier matrix, or an N=4 example pair");
    sc_construct->add_option("kind", construct.kind, "position | momentum | fourier | example5 | example6")
        ->required()
        ->check(CLI::IsMember({"position", "momentum", "fourier", "example5", "example6"}));
    sc_construct->add_option("N", construct.n, "Dimension")->required();
    sc_construct->add_option("--out", construct.out, "Output file (a directory for example5/example6); stdout if absent");

    CheckOptions check;
    auto *sc_check = app.add_subcommand("check", "Decide a predicate for a pair of observables; JSON report on stdout");
    sc_check->add_option("predicate", check.predicate, "mu | condition1 | condition2 | value-complementary | generalized-mu | all")
        ->required()
        ->check(CLI::IsMember({"mu", "condition1", "condition2", "value-complementary", "generalized-mu", "all"}));
    sc_check->add_option("A", check.file_a, "First observable file")->required();
    sc_check->add_option("B", check.file_b, "Second observable file")->required();
    sc_check->add_option("--tol", check.tol, "Tolerance (default 1e-9 * d, or MUBKIT_TOL)");

    CoarseGrainOptions coarse;
    auto *sc_coarse = app.add_subcommand("coarse-grain", "Merge outcomes of an observable along a partition such as \"0,1|2,3\"");
    sc_coarse->add_option("A", coarse.file, "Observable file")->required();
    sc_coarse->add_option("partition", coarse.spec, "Fibers separated by '|', labels by ','")->required();
    sc_coarse->add_option("--out", coarse.out, "Output file; stdout if absent");
    sc_coarse->add_option("--tol", coarse.tol, "Validation tolerance");

    SuiteOptions suite;
    auto *sc_suite = app.add_subcommand("paper-suite", "Run the worked-example regression fixtures");
    sc_suite->add_option("--tol", suite.tol, "Override every fixture tolerance");
    sc_suite->add_option("--seed", suite.seed, "Seed for the sampling fixtures");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitHolds : kExitInputError;
    }

    try {
        if (sc_construct->parsed()) {
            return cmd_construct(construct, out, err);
        }
        if (sc_check->parsed()) {
            return cmd_check(check, out, err);
        }
        if (sc_coarse->parsed()) {
            return cmd_coarse_grain(coarse, out, err);
        }
        if (sc_suite->parsed()) {
            return cmd_paper_suite(suite, out, err);
        }
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}

}  // namespace mubkit::cli
