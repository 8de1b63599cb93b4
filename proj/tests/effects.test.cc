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

#include "mubkit/effects.h"

#include <cmath>
#include <functional>

#include "gtest/gtest.h"
#include "mubkit/error.h"
#include "mubkit/oracle.h"

using namespace mubkit;

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

double min_eigenvalue(const ComplexMatrix &m) {
    return hermitian_eig(hermitian_part(m), 1e-6).eigenvalues.front();
}

}  // namespace

TEST(effects, create_validates) {
    EXPECT_NO_THROW(Effect::create(ComplexMatrix::diagonal({0, 0.5, 1})));
    EXPECT_EQ(
        code_of([] { Effect::create(ComplexMatrix::from_rows({{0.5, 0.1}, {0, 0.5}})); }), ErrorCode::NotHermitian);
    EXPECT_EQ(code_of([] { Effect::create(ComplexMatrix::diagonal({1.1, 0})); }), ErrorCode::SpectrumOutOfRange);
    EXPECT_EQ(code_of([] { Effect::create(ComplexMatrix::diagonal({-0.1, 0})); }), ErrorCode::SpectrumOutOfRange);
    EXPECT_NO_THROW(Effect::create(ComplexMatrix::diagonal({1 + 1e-12, -1e-12})));
}

TEST(effects, state_validates) {
    EXPECT_NO_THROW(State::create(ComplexMatrix::diagonal({0.25, 0.75})));
    EXPECT_EQ(code_of([] { State::create(ComplexMatrix::diagonal({0.5, 0.6})); }), ErrorCode::NotAState);
    EXPECT_EQ(code_of([] { State::create(ComplexMatrix::diagonal({1.5, -0.5})); }), ErrorCode::NotPositive);
    EXPECT_EQ(code_of([] { State::create(ComplexMatrix::from_rows({{1, 1}, {0, 0}})); }), ErrorCode::NotHermitian);
    ComplexVector v(2);
    v << 1, 1;
    EXPECT_EQ(code_of([&] { State::pure(v); }), ErrorCode::NotAState);
    v /= std::sqrt(2.0);
    EXPECT_LE(max_abs_diff(State::pure(v).matrix(), ComplexMatrix::from_rows({{0.5, 0.5}, {0.5, 0.5}})), 1e-15);
}

TEST(effects, complement) {
    auto a = Effect::create(ComplexMatrix::from_rows({{0.3, Complex(0.1, 0.2)}, {Complex(0.1, -0.2), 0.6}}));
    auto c = complement(a);
    EXPECT_LE(max_abs_diff(c.matrix() + a.matrix(), ComplexMatrix::identity(2)), 1e-15);
    EXPECT_TRUE(complement(c).matrix() == a.matrix());
}

TEST(effects, classification) {
    auto atom = Effect::create(ComplexMatrix::from_rows({{0.5, 0.5}, {0.5, 0.5}}));
    auto proj = Effect::create(ComplexMatrix::diagonal({1, 1, 0}));
    auto soft = Effect::create(ComplexMatrix::diagonal({0.5, 1}));
    EXPECT_TRUE(is_atomic(atom));
    EXPECT_TRUE(is_sharp(atom));
    EXPECT_TRUE(is_sharp(proj));
    EXPECT_FALSE(is_atomic(proj));
    EXPECT_FALSE(is_sharp(soft));
    EXPECT_TRUE(is_invertible(soft));
    EXPECT_FALSE(is_invertible(proj));
    EXPECT_TRUE(is_invertible(Effect::create(ComplexMatrix::identity(3))));
    EXPECT_TRUE(commutes(proj, Effect::create(ComplexMatrix::diagonal({0.2, 0.3, 0.9})), 1e-12));
    EXPECT_FALSE(commutes(atom, soft, 1e-3));
    EXPECT_THROW(commutes(atom, proj, 1e-9), Error);
}

TEST(effects, occurrence_probability) {
    auto rho = State::create(ComplexMatrix::diagonal({0.25, 0.75}));
    auto a = Effect::create(ComplexMatrix::diagonal({1, 0.5}));
    EXPECT_NEAR(occurrence_probability(rho, a), 0.625, 1e-15);
    EXPECT_THROW(occurrence_probability(rho, Effect::create(ComplexMatrix::identity(3))), Error);
}

TEST(effects, seq_product_identities) {
    Sampler s(RngSeed{21});
    for (std::size_t trial = 0; trial < 25; trial++) {
        std::size_t d = 2 + trial % 6;
        auto obs_a = s.observable(d, 3, ObservableKind::Unsharp);
        auto obs_b = s.observable(d, 3, ObservableKind::Unsharp);
        const Effect &a = obs_a.effect(0);
        const Effect &b = obs_b.effect(1);
        auto ab = seq_product(a, b).matrix();

        // A o B is an effect below A.
        EXPECT_GE(min_eigenvalue(ab), -1e-12);
        EXPECT_GE(min_eigenvalue(a.matrix() - ab), -1e-12);
        // Unit laws and A o A = A^2.
        auto id = Effect::create(ComplexMatrix::identity(d));
        EXPECT_LE(max_abs_diff(seq_product(a, id).matrix(), a.matrix()), 1e-12);
        EXPECT_LE(max_abs_diff(seq_product(id, b).matrix(), b.matrix()), 1e-12);
        EXPECT_LE(max_abs_diff(seq_product(a, a).matrix(), a.matrix() * a.matrix()), 1e-12);
        // Additivity in the second factor.
        auto split = seq_product(a, b).matrix() + seq_product(a, complement(b)).matrix();
        EXPECT_LE(max_abs_diff(split, a.matrix()), 1e-12);
        // tr(rho (A o B)) = tr(A^{1/2} rho A^{1/2} B).
        auto rho = s.state(d, d);
        auto lhs = trace_of_product(rho.matrix(), ab);
        auto rhs = trace(a.sqrt() * rho.matrix() * a.sqrt() * b.matrix());
        EXPECT_LE(std::abs(lhs - rhs), 1e-12);
    }
}

TEST(effects, commuting_seq_product_is_product) {
    auto a = Effect::create(ComplexMatrix::diagonal({0.2, 0.9, 0.5}));
    auto b = Effect::create(ComplexMatrix::diagonal({0.7, 0.1, 1.0}));
    EXPECT_LE(max_abs_diff(seq_product(a, b).matrix(), a.matrix() * b.matrix()), 1e-15);
    EXPECT_LE(max_abs_diff(seq_product(a, b).matrix(), seq_product(b, a).matrix()), 1e-15);
}

TEST(effects, commutes_iff_sequential_products_agree) {
    Sampler s(RngSeed{13});
    for (std::size_t trial = 0; trial < 30; trial++) {
        std::size_t d = 2 + trial % 7;
        Effect a = s.observable(d, 2, ObservableKind::Unsharp).effect(0);
        Effect b = s.observable(d, 2, ObservableKind::Unsharp).effect(1);
        if (trial % 2 == 0) {
            // Simultaneously diagonal in a random basis.
            auto u = s.unitary(d);
            std::vector<double> x(d);
            std::vector<double> y(d);
            for (std::size_t k = 0; k < d; k++) {
                x[k] = s.uniform01();
                y[k] = s.uniform01();
            }
            a = Effect::create(u * ComplexMatrix::diagonal(x) * adjoint(u));
            b = Effect::create(u * ComplexMatrix::diagonal(y) * adjoint(u));
        }
        bool c = commutes(a, b, 1e-9);
        EXPECT_EQ(c, trial % 2 == 0);
        EXPECT_EQ(c, mat_approx_eq(seq_product(a, b).matrix(), seq_product(b, a).matrix(), 1e-9)) << trial;
    }
}

TEST(effects, atomic_absorbs) {
    Sampler s(RngSeed{5});
    for (std::size_t trial = 0; trial < 20; trial++) {
        std::size_t d = 2 + trial % 5;
        ComplexVector phi = s.unit_vector(d);
        auto atom = Effect::create(ComplexMatrix::outer(phi));
        auto b = s.observable(d, 2, ObservableKind::Unsharp).effect(0);
        double weight = phi.dot(b.matrix().eigen() * phi).real();
        auto expected = scale(atom.matrix(), weight);
        EXPECT_LE(max_abs_diff(seq_product(atom, b).matrix(), expected), 1e-12);
    }
}

TEST(effects, sqrt_is_cached_and_shared) {
    auto a = Effect::create(ComplexMatrix::diagonal({0.25, 0.81}));
    auto copy = a;
    EXPECT_EQ(&a.sqrt(), &copy.sqrt());
    EXPECT_LE(max_abs_diff(a.sqrt(), ComplexMatrix::diagonal({0.5, 0.9})), 1e-15);
}
