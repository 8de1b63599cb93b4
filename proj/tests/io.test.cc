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

#include <filesystem>
#include <functional>

#include "gtest/gtest.h"
#include "mubkit/error.h"
#include "mubkit/fourier.h"
#include "pair_generators.h"

using namespace mubkit;
using nlohmann::json;

namespace {

ErrorCode code_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::InternalInconsistency;
}

void expect_same_verdict(const std::optional<Verdict> &a, const std::optional<Verdict> &b) {
    ASSERT_EQ(a.has_value(), b.has_value());
    if (!a) {
        return;
    }
    EXPECT_EQ(a->holds, b->holds);
    EXPECT_EQ(a->max_deviation, b->max_deviation);
    EXPECT_EQ(a->vacuous, b->vacuous);
    EXPECT_EQ(a->marginal, b->marginal);
    ASSERT_EQ(a->witness.has_value(), b->witness.has_value());
    if (a->witness) {
        EXPECT_EQ(a->witness->outcomes, b->witness->outcomes);
        EXPECT_EQ(a->witness->observed, b->witness->observed);
        EXPECT_EQ(a->witness->expected, b->witness->expected);
        EXPECT_EQ(a->witness->note, b->witness->note);
        ASSERT_EQ(a->witness->state.has_value(), b->witness->state.has_value());
        if (a->witness->state) {
            EXPECT_TRUE(*a->witness->state == *b->witness->state);
        }
    }
}

}  // namespace

TEST(io, complex_and_matrix) {
    EXPECT_EQ(complex_to_json(Complex(1.5, -2)), json::parse("[1.5, -2.0]"));
    EXPECT_EQ(complex_to_json(Complex(-0.0, -0.0)).dump(), "[0.0,0.0]");
    EXPECT_EQ(complex_from_json(json::parse("[3, 4]")), Complex(3, 4));
    EXPECT_EQ(code_of([] { complex_from_json(json::parse("[1]")); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { complex_from_json(json::parse("\"x\"")); }), ErrorCode::ParseError);

    auto m = fourier_matrix(4);
    EXPECT_TRUE(matrix_from_json(matrix_to_json(m)) == m);
    EXPECT_EQ(code_of([] { matrix_from_json(json::parse("[[[1,0],[0,0]]]")); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { matrix_from_json(json::parse("[]")); }), ErrorCode::ParseError);

    auto file = matrix_file_to_json(m);
    EXPECT_EQ(file.at("dim"), 4);
    EXPECT_TRUE(matrix_file_from_json(file) == m);
}

TEST(io, observable_file_round_trip) {
    auto parts = example_partitions();
    auto pair = fourier_pair(5);
    for (const auto &a : {parts.q_halves, parts.p_parity, parts.p_adjacent, pair.position, pair.momentum,
                          mubkit::testing::unsharp_pair(3, 3, 2, 8).a}) {
        json j = observable_to_json(a);
        EXPECT_EQ(j.at("dim"), a.dim());
        EXPECT_TRUE(j.at("outcomes").is_array());
        EXPECT_TRUE(j.at("effects").is_array());
        auto back = observable_from_json(j);
        EXPECT_EQ(back.outcomes(), a.outcomes());
        for (std::size_t k = 0; k < a.size(); k++) {
            EXPECT_TRUE(back.effect(k).matrix() == a.effect(k).matrix());
        }
        EXPECT_EQ(dump(observable_to_json(back)), dump(j));
    }
}

TEST(io, observable_file_errors) {
    json good = observable_to_json(position_observable(2));
    json missing = good;
    missing.erase("outcomes");
    EXPECT_EQ(code_of([&] { observable_from_json(missing); }), ErrorCode::ParseError);
    json wrong_dim = good;
    wrong_dim["dim"] = 3;
    EXPECT_THROW(observable_from_json(wrong_dim), Error);
    json bad_sum = good;
    bad_sum["effects"][1] = matrix_to_json(ComplexMatrix::zero(2));
    EXPECT_EQ(code_of([&] { observable_from_json(bad_sum); }), ErrorCode::SumNotIdentity);
    json dup = good;
    dup["outcomes"][1] = "0";
    EXPECT_EQ(code_of([&] { observable_from_json(dup); }), ErrorCode::DuplicateLabel);
    json loose = good;
    loose["effects"][0][0][0][0] = 1.0 + 1e-6;
    EXPECT_THROW(observable_from_json(loose), Error);
    EXPECT_NO_THROW(observable_from_json(loose, 1e-5));
}

TEST(io, report_file_round_trip) {
    auto parts = example_partitions();
    auto pair = fourier_pair(3);
    std::vector<std::pair<Observable, Observable>> inputs{
        {parts.q_halves, parts.p_adjacent},
        {parts.q_halves, parts.p_parity},
        {pair.position, pair.momentum},
        {pair.position, pair.position},
    };
    auto t = mubkit::testing::trivial_pair(2, 2, 2);
    inputs.emplace_back(t.a, t.b);
    for (const auto &[a, b] : inputs) {
        ReportFile r;
        r.version = library_version();
        r.inputs = {{"A", "a.json"}, {"B", "b.json"}};
        r.predicate = "all";
        r.tolerance = default_tol(a.dim());
        r.report = classify_pair(a, b, r.tolerance);
        json j = report_file_to_json(r);
        auto back = report_file_from_json(j);
        EXPECT_EQ(back.tool, "mubkit");
        EXPECT_EQ(back.version, r.version);
        EXPECT_EQ(back.inputs, r.inputs);
        EXPECT_EQ(back.predicate, r.predicate);
        EXPECT_EQ(back.tolerance, r.tolerance);
        EXPECT_EQ(back.report.dim, r.report.dim);
        EXPECT_EQ(back.report.m, r.report.m);
        EXPECT_EQ(back.report.n, r.report.n);
        EXPECT_EQ(back.report.both_atomic, r.report.both_atomic);
        EXPECT_EQ(back.report.alpha, r.report.alpha);
        expect_same_verdict(back.report.mu, r.report.mu);
        expect_same_verdict(back.report.condition1, r.report.condition1);
        expect_same_verdict(back.report.condition2, r.report.condition2);
        expect_same_verdict(back.report.value_complementary, r.report.value_complementary);
        expect_same_verdict(back.report.generalized_mu, r.report.generalized_mu);
        EXPECT_EQ(dump(report_file_to_json(back)), dump(j));
    }
}

TEST(io, report_json_shape) {
    auto parts = example_partitions();
    auto report = classify_pair(parts.q_halves, parts.p_adjacent, 4e-9);
    json j = pair_report_to_json(report);
    EXPECT_TRUE(j.at("verdicts").at("mu").is_null());
    EXPECT_EQ(j.at("alpha"), 1.0);
    const json &vc = j.at("verdicts").at("value_complementary");
    EXPECT_EQ(vc.at("holds"), false);
    EXPECT_NEAR(vc.at("witness").at("observed").get<double>(), 0.75, 1e-12);
}

TEST(io, dump_is_deterministic) {
    json j = observable_to_json(momentum_observable(3));
    std::string s = dump(j);
    EXPECT_EQ(s, dump(json::parse(s)));
    EXPECT_EQ(s.back(), '\n');
}

TEST(io, files) {
    auto dir = std::filesystem::temp_directory_path() / "mubkit_io_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    auto path = dir / "q.json";
    write_text_file(path, dump(observable_to_json(position_observable(2))));
    EXPECT_EQ(read_json_file(path).at("dim"), 2);
    EXPECT_EQ(code_of([&] { read_json_file(dir / "absent.json"); }), ErrorCode::IoError);
    write_text_file(dir / "bad.json", "{ not json");
    EXPECT_EQ(code_of([&] { read_json_file(dir / "bad.json"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([&] { write_text_file(dir / "no" / "such" / "x.json", "{}"); }), ErrorCode::IoError);
    std::filesystem::remove_all(dir);
}
