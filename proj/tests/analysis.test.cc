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

#include "mubkit/analysis.h"

#include <cmath>

#include "gtest/gtest.h"
#include "mubkit/error.h"
#include "mubkit/fourier.h"
#include "pair_generators.h"

using namespace mubkit;
using mubkit::testing::ObservablePair;

namespace {

Observable trivial(std::size_t d, std::size_t m) {
    return mubkit::testing::trivial_pair(d, m, 1).a;
}

/// Example-7 style B: cyclic shifts of one diagonal in a random basis, so every B_j has the same trace.
Observable equal_trace_observable(std::size_t d, std::uint64_t seed) {
    Sampler s(RngSeed{seed});
    std::vector<double> w(d);
    double total = 0;
    for (auto &x : w) {
        x = 0.1 + s.uniform01();
        total += x;
    }
    for (auto &x : w) {
        x /= total;
    }
    auto u = s.unitary(d);
    std::vector<ComplexMatrix> effects;
    for (std::size_t j = 0; j < d; j++) {
        std::vector<double> diag(d);
        for (std::size_t k = 0; k < d; k++) {
            diag[k] = w[(k + j) % d];
        }
        effects.push_back(u * ComplexMatrix::diagonal(diag) * adjoint(u));
    }
    return Observable::create(d, numbered_labels(d), effects);
}

std::vector<ObservablePair> condition1_pairs() {
    using namespace mubkit::testing;
    std::vector<ObservablePair> out;
    for (std::uint64_t seed = 0; seed < 6; seed++) {
        out.push_back(fourier_part_pair(2, 2 + seed % 2, true, seed));
        out.push_back(mu_pair(2 + seed, seed));
        out.push_back(smear(fourier_part_pair(2, 2, true, 100 + seed), 2 + seed % 2));
        out.push_back(smear(mu_pair(3, 200 + seed), 3));
    }
    return out;
}

}  // namespace

TEST(analysis, mu_examples) {
    for (std::size_t n = 2; n <= 16; n++) {
        auto pair = fourier_pair(n);
        EXPECT_TRUE(check_mu(pair.position, pair.momentum, default_tol(n)).holds) << n;
        auto same = check_mu(pair.position, pair.position, default_tol(n));
        EXPECT_FALSE(same.holds);
        EXPECT_NEAR(same.max_deviation, 1.0 - 1.0 / static_cast<double>(n), 1e-12);
    }
    auto conj = mubkit::testing::mu_pair(5, 77);
    EXPECT_TRUE(check_mu(conj.a, conj.b, default_tol(5)).holds);

    auto parts = example_partitions();
    try {
        check_mu(parts.q_halves, parts.p_parity, 1e-9);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NotAtomic);
    }
    EXPECT_THROW(check_mu(position_observable(2), momentum_observable(3), 1e-9), Error);
}

TEST(analysis, condition_examples) {
    auto pair = fourier_pair(4);
    auto parts = example_partitions();
    double tol = default_tol(4);
    EXPECT_TRUE(check_condition1(pair.position, pair.momentum, tol).holds);
    EXPECT_TRUE(check_condition1(parts.q_halves, parts.p_parity, tol).holds);
    EXPECT_TRUE(check_condition2(pair.position, pair.momentum, tol).holds);
    EXPECT_TRUE(check_condition2(parts.q_halves, parts.p_parity, tol).holds);

    auto c1 = check_condition1(parts.q_halves, parts.p_adjacent, tol);
    EXPECT_FALSE(c1.holds);
    ASSERT_TRUE(c1.witness.has_value());
    EXPECT_EQ(c1.witness->outcomes.size(), 2u);
    auto c2 = check_condition2(parts.q_halves, parts.p_adjacent, tol);
    EXPECT_FALSE(c2.holds);
    ASSERT_TRUE(c2.witness.has_value());

    auto t = mubkit::testing::trivial_pair(3, 2, 5);
    EXPECT_TRUE(check_condition1(t.a, t.b, 1e-12).holds);
    EXPECT_TRUE(check_condition2(t.a, t.b, 1e-12).holds);
    EXPECT_THROW(check_condition1(pair.position, position_observable(2), tol), Error);
    EXPECT_THROW(check_condition2(pair.position, position_observable(2), tol), Error);
}

TEST(analysis, value_complementary_examples) {
    auto pair = fourier_pair(4);
    auto parts = example_partitions();
    double tol = default_tol(4);
    EXPECT_TRUE(check_value_complementary(pair.position, pair.momentum, tol).holds);
    EXPECT_TRUE(check_value_complementary(parts.q_halves, parts.p_parity, tol).holds);

    auto v = check_value_complementary(parts.q_halves, parts.p_adjacent, tol);
    EXPECT_FALSE(v.holds);
    EXPECT_FALSE(v.vacuous);
    ASSERT_TRUE(v.witness.has_value());
    ASSERT_TRUE(v.witness->state.has_value());
    EXPECT_NEAR(v.witness->observed, 0.75, 1e-12);
    EXPECT_NEAR(v.witness->expected, 0.5, 1e-15);
    const ComplexVector &psi = *v.witness->state;
    EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
    ComplexVector expected(4);
    expected << 1, 1, 0, 0;
    expected /= std::sqrt(2.0);
    EXPECT_NEAR(std::abs(expected.dot(psi)), 1.0, 1e-12);
    // The witness lies in the eigenvalue-1 space of Q'_0.
    EXPECT_LE((parts.q_halves.effect(0).matrix().eigen() * psi - psi).norm(), 1e-12);
    EXPECT_THROW(check_value_complementary(pair.position, position_observable(2), tol), Error);
}

TEST(analysis, value_complementary_vacuous) {
    auto t = mubkit::testing::trivial_pair(3, 2, 3);
    auto v = check_value_complementary(t.a, t.b, 1e-9);
    EXPECT_TRUE(v.holds);
    EXPECT_TRUE(v.vacuous);

    auto u = mubkit::testing::unsharp_pair(3, 3, 2, 4);
    auto vu = check_value_complementary(u.a, u.b, 1e-9);
    EXPECT_TRUE(vu.holds);
    EXPECT_TRUE(vu.vacuous);

    // Certainty on one side only is not vacuous.
    auto q = position_observable(3);
    auto v2 = check_value_complementary(q, trivial(3, 2), 1e-9);
    EXPECT_TRUE(v2.holds);
    EXPECT_FALSE(v2.vacuous);
    auto v3 = check_value_complementary(q, u.b, 1e-9);
    EXPECT_FALSE(v3.holds);
}

TEST(analysis, value_complementary_against_single_outcome) {
    // The single outcome is always certain, so the other side must be uniform on every state.
    auto one = Observable::create(3, {"*"}, {ComplexMatrix::identity(3)});
    EXPECT_TRUE(check_value_complementary(trivial(3, 4), one, 1e-9).holds);
    auto v = check_value_complementary(momentum_observable(3), one, 1e-9);
    EXPECT_FALSE(v.holds);
    ASSERT_TRUE(v.witness.has_value());
    EXPECT_EQ(v.witness->expected, 1.0 / 3.0);
    EXPECT_FALSE(check_value_complementary(position_observable(3), position_observable(3), 1e-9).holds);
}

TEST(analysis, generalized_mu_examples) {
    auto parts = example_partitions();
    auto g = check_generalized_mu(parts.q_halves, parts.p_adjacent, default_tol(4));
    EXPECT_TRUE(g.holds);
    EXPECT_DOUBLE_EQ(forced_alpha(parts.q_halves, parts.p_adjacent), 1.0);

    for (std::size_t d = 2; d <= 5; d++) {
        auto a = trivial(d, d);
        auto b = equal_trace_observable(d, d);
        EXPECT_TRUE(check_generalized_mu(a, b, default_tol(d)).holds);
        EXPECT_NEAR(forced_alpha(a, b), trace(b.effect(0).matrix()).real() / static_cast<double>(d), 1e-12);
        EXPECT_TRUE(check_trivial(a, 1e-12));
        EXPECT_FALSE(check_trivial(b, 1e-3));
    }
    auto q = position_observable(3);
    EXPECT_FALSE(check_generalized_mu(q, q, 1e-9).holds);
    EXPECT_THROW(check_generalized_mu(q, position_observable(2), 1e-9), Error);
}

TEST(analysis, trivial_examples) {
    EXPECT_TRUE(check_trivial(trivial(4, 3), 1e-12));
    EXPECT_FALSE(check_trivial(position_observable(2), 1e-9));
    EXPECT_TRUE(check_trivial(position_observable(1), 1e-12));
}

TEST(analysis, partition_criterion_examples) {
    std::vector<std::string> src = numbered_labels(4);
    auto halves = partition_from_blocks(src, {0, 0, 1, 1});
    auto parity = partition_from_blocks(src, {0, 1, 0, 1});
    auto lopsided = partition_from_blocks(src, {0, 1, 1, 1});
    auto ok = check_partition_criterion(halves, parity);
    EXPECT_TRUE(ok.holds);
    EXPECT_EQ(ok.constant, 4u);
    auto bad = check_partition_criterion(lopsided, halves);
    EXPECT_FALSE(bad.holds);
    EXPECT_FALSE(bad.constant.has_value());
    EXPECT_EQ(bad.products, (std::vector<std::size_t>{2, 2, 6, 6}));
    auto thirds = PartitionMap::from_fibers(numbered_labels(6), {{"0", "1"}, {"2", "3"}, {"4", "5"}});
    EXPECT_TRUE(check_partition_criterion(thirds, thirds).holds);
}

TEST(analysis, classify_examples) {
    auto pair = fourier_pair(4);
    auto parts = example_partitions();
    double tol = default_tol(4);

    auto qp = classify_pair(pair.position, pair.momentum, tol);
    EXPECT_TRUE(qp.both_atomic);
    ASSERT_TRUE(qp.mu.has_value());
    EXPECT_TRUE(qp.mu->holds && qp.condition1->holds && qp.condition2->holds);
    EXPECT_TRUE(qp.value_complementary->holds && qp.generalized_mu->holds);
    EXPECT_DOUBLE_EQ(*qp.alpha, 0.25);

    auto ex6 = classify_pair(parts.q_halves, parts.p_adjacent, tol);
    EXPECT_FALSE(ex6.mu.has_value());
    EXPECT_TRUE(ex6.generalized_mu->holds);
    EXPECT_FALSE(ex6.condition1->holds);
    EXPECT_FALSE(ex6.condition2->holds);
    EXPECT_FALSE(ex6.value_complementary->holds);
    EXPECT_DOUBLE_EQ(*ex6.alpha, 1.0);

    auto ex5 = classify_pair(parts.q_halves, parts.p_parity, tol);
    EXPECT_FALSE(ex5.both_atomic);
    EXPECT_FALSE(ex5.mu.has_value());
    EXPECT_TRUE(ex5.condition1->holds && ex5.condition2->holds);
    EXPECT_TRUE(ex5.value_complementary->holds && ex5.generalized_mu->holds);

    auto qq = classify_pair(pair.position, pair.position, tol);
    EXPECT_FALSE(qq.generalized_mu->holds);
    EXPECT_FALSE(qq.alpha.has_value());
}

TEST(analysis, classify_near_threshold_does_not_throw) {
    // Rotate the momentum basis slightly; every atomic predicate then misses by about the rotation angle.
    for (double angle : {1e-10, 3e-10, 1e-9, 3e-9}) {
        Eigen::MatrixXcd rot(2, 2);
        rot << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
        auto p = conjugate(momentum_observable(2), ComplexMatrix(rot));
        for (double tol : {1e-10, 5e-10, 1e-9, 2e-9, 5e-9}) {
            PairReport r;
            ASSERT_NO_THROW(r = classify_pair(position_observable(2), p, tol)) << angle << " " << tol;
            bool any = r.mu->holds || r.condition1->holds || r.condition2->holds || r.value_complementary->holds;
            for (const auto *v : {&*r.mu, &*r.condition1, &*r.condition2, &*r.value_complementary}) {
                if (any && !v->holds) {
                    EXPECT_TRUE(v->marginal);
                    EXPECT_LE(v->max_deviation, 10 * tol);
                }
            }
        }
    }
}

TEST(analysis, condition1_implies_condition2_and_more) {
    std::size_t c1_count = 0;
    for (const auto &pair : condition1_pairs()) {
        double tol = default_tol(pair.a.dim());
        ASSERT_TRUE(check_condition1(pair.a, pair.b, tol).holds) << pair.name;
        c1_count++;
        EXPECT_TRUE(check_condition2(pair.a, pair.b, tol).holds) << pair.name;
        EXPECT_TRUE(check_value_complementary(pair.a, pair.b, tol).holds) << pair.name;
        EXPECT_TRUE(check_generalized_mu(pair.a, pair.b, tol).holds) << pair.name;
    }
    EXPECT_GE(c1_count, 20u);
}

TEST(analysis, condition1_compresses_onto_supports) {
    // For each effect A_x, the compression of every B_y to each nonzero eigenspace
    // of A_x is (1/n) times its projection, and distinct nonzero eigenspaces do not mix.
    for (const auto &pair : condition1_pairs()) {
        double tol = default_tol(pair.a.dim());
        double n = static_cast<double>(pair.b.size());
        for (const auto &ax : pair.a.effects()) {
            const auto &spec = ax.spectrum();
            std::vector<ComplexMatrix> pieces;
            std::vector<double> seen;
            for (double lambda : spec.eigenvalues) {
                if (lambda <= kEigenTol) {
                    continue;
                }
                bool fresh = true;
                for (double s : seen) {
                    fresh = fresh && std::abs(s - lambda) > 1e-6;
                }
                if (fresh) {
                    seen.push_back(lambda);
                    pieces.push_back(eigenspace_projection(spec, lambda, 1e-6));
                }
            }
            auto support = support_projection(spec, kEigenTol);
            for (const auto &by : pair.b.effects()) {
                EXPECT_LE(max_abs_diff(support * by.matrix() * support, scale(support, 1.0 / n)), tol) << pair.name;
                for (std::size_t i = 0; i < pieces.size(); i++) {
                    for (std::size_t j = 0; j < pieces.size(); j++) {
                        auto block = pieces[i] * by.matrix() * pieces[j];
                        auto target = i == j ? scale(pieces[i], 1.0 / n) : ComplexMatrix::zero(support.dim());
                        EXPECT_LE(max_abs_diff(block, target), tol) << pair.name;
                    }
                }
            }
        }
    }
}

TEST(analysis, random_pairs_respect_condition1_implications) {
    std::size_t c1 = 0;
    for (std::uint64_t seed = 0; seed < 60; seed++) {
        Sampler s(RngSeed{seed});
        std::size_t d = 2 + s.index(7);
        std::size_t m = 1 + s.index(4);
        std::size_t n = 1 + s.index(4);
        auto a = s.observable(d, std::min(m, d), seed % 2 ? ObservableKind::Sharp : ObservableKind::Unsharp);
        auto b = s.observable(d, std::min(n, d), ObservableKind::Unsharp);
        double tol = default_tol(d);
        if (check_condition1(a, b, tol).holds) {
            c1++;
            EXPECT_TRUE(check_condition2(a, b, tol).holds);
            EXPECT_TRUE(check_value_complementary(a, b, tol).holds);
            EXPECT_TRUE(check_generalized_mu(a, b, tol).holds);
        }
        EXPECT_NO_THROW(classify_pair(a, b, tol));
    }
    ::testing::Test::RecordProperty("random_condition1_pairs", static_cast<int>(c1));
}

TEST(analysis, sharp_pairs_condition1_iff_condition2) {
    for (const auto &pair : mubkit::testing::sharp_corpus(40, 5000)) {
        double tol = default_tol(pair.a.dim());
        bool c1 = check_condition1(pair.a, pair.b, tol).holds;
        EXPECT_EQ(c1, check_condition2(pair.a, pair.b, tol).holds) << pair.name;
        if (c1) {
            EXPECT_TRUE(check_value_complementary(pair.a, pair.b, tol).holds) << pair.name;
        }
    }
}

TEST(analysis, atomic_pairs_generalized_mu_iff_mu) {
    for (std::uint64_t seed = 0; seed < 20; seed++) {
        std::size_t d = 2 + seed % 6;
        for (const auto &pair :
             {mubkit::testing::mu_pair(d, seed), mubkit::testing::random_basis_pair(d, seed)}) {
            double tol = default_tol(d);
            EXPECT_EQ(check_mu(pair.a, pair.b, tol).holds, check_generalized_mu(pair.a, pair.b, tol).holds)
                << pair.name;
        }
    }
}

TEST(analysis, partition_criterion_matches_generalized_mu_n6) {
    auto pair = fourier_pair(6);
    auto all = set_partitions(6);
    std::vector<PartitionMap> maps;
    std::vector<Observable> q_parts;
    std::vector<Observable> p_parts;
    for (const auto &rgs : all) {
        maps.push_back(partition_from_blocks(pair.position.outcomes(), rgs));
        q_parts.push_back(coarse_grain(pair.position, maps.back()));
        p_parts.push_back(coarse_grain(pair.momentum, maps.back()));
    }
    std::size_t agree = 0;
    std::size_t holds = 0;
    for (std::size_t i = 0; i < maps.size(); i++) {
        for (std::size_t j = 0; j < maps.size(); j++) {
            bool combinatorial = check_partition_criterion(maps[i], maps[j]).holds;
            bool numeric = check_generalized_mu(q_parts[i], p_parts[j], default_tol(6)).holds;
            agree += combinatorial == numeric;
            holds += numeric;
        }
    }
    EXPECT_EQ(agree, maps.size() * maps.size());
    EXPECT_GT(holds, 0u);
}

TEST(analysis, condition1_with_invertible_effect_forces_triviality) {
    for (std::uint64_t seed = 0; seed < 20; seed++) {
        std::size_t d = 2 + seed % 5;
        auto t = mubkit::testing::trivial_pair(d, 1 + seed % 4, 1 + (seed / 2) % 4);
        ASSERT_TRUE(check_condition1(t.a, t.b, 1e-15).holds);
        EXPECT_TRUE(is_invertible(t.a.effect(0)));
        EXPECT_TRUE(check_trivial(t.a, 0.0));
        EXPECT_TRUE(check_trivial(t.b, 0.0));
    }
    // A C1 pair with no invertible effect need not be trivial.
    auto parts = example_partitions();
    EXPECT_FALSE(is_invertible(parts.q_halves.effect(0)));
    EXPECT_FALSE(check_trivial(parts.q_halves, 1e-9));
}

TEST(analysis, condition2_without_condition1_is_recorded) {
    // Whether C2 implies C1 for unsharp pairs is open, so this only counts.
    std::size_t c2_only = 0;
    for (std::uint64_t seed = 0; seed < 200; seed++) {
        auto pair = mubkit::testing::unsharp_pair(2 + seed % 3, 2, 2, seed);
        double tol = default_tol(pair.a.dim());
        if (check_condition2(pair.a, pair.b, tol).holds && !check_condition1(pair.a, pair.b, tol).holds) {
            c2_only++;
        }
    }
    ::testing::Test::RecordProperty("condition2_without_condition1", static_cast<int>(c2_only));
}
