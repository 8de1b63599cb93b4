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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mubkit/observables.h"

namespace mubkit {

/// Where a predicate fails: the outcome labels involved (always ordered
/// [A label, B label] when both are present), an optional unit vector, and
/// the value observed against the value required.
struct Witness {
    std::vector<std::string> outcomes;
    std::optional<ComplexVector> state;
    double observed = 0.0;
    double expected = 0.0;
    std::string note;
};

struct Verdict {
    bool holds = false;
    double max_deviation = 0.0;
    std::optional<Witness> witness;
    /// Value-complementarity only: no outcome of either observable can be certain.
    bool vacuous = false;
    /// Failed by less than 10x tol while a theorem says it should hold.
    bool marginal = false;
};

/// Bases of two atomic observables are mutually unbiased:
/// |tr(A_x B_y) - 1/d| <= tol for all x, y. Throws NotAtomic or DimMismatch.
Verdict check_mu(const Observable &a, const Observable &b, double tol);

/// A_x o B_y = A_x / n and B_y o A_x = B_y / m for all x, y.
Verdict check_condition1(const Observable &a, const Observable &b, double tol);

/// (B|A)_y = I / n and (A|B)_x = I / m for all x, y.
Verdict check_condition2(const Observable &a, const Observable &b, double tol);

/// Certainty of any outcome of one observable forces the uniform
/// distribution on the other.
///
/// Decided exactly: for every effect with a nonzero eigenvalue-1 eigenspace
/// E (projection Pi), each effect M of the other observable must satisfy
/// Pi M Pi = Pi / k, where k is the other observable's outcome count. The
/// quadratic form of a Hermitian operator is constant on the unit sphere of
/// E iff its compression to E is scalar, so this is equivalent to checking
/// every state. A failing verdict carries a unit vector in E whose expectation
/// misses 1/k. If neither side has an eigenvalue-1 eigenspace the verdict holds
/// vacuously.
Verdict check_value_complementary(const Observable &a, const Observable &b, double tol);

/// tr(A_x B_y) is the same for all x, y; the common value is forced to be d / (m n).
Verdict check_generalized_mu(const Observable &a, const Observable &b, double tol);

/// d / (m n)
double forced_alpha(const Observable &a, const Observable &b);

struct PartitionVerdict {
    bool holds = false;
    /// The common fiber-size product, when it exists.
    std::optional<std::size_t> constant;
    /// |f^{-1}(r)| |g^{-1}(s)|, r-major.
    std::vector<std::size_t> products;
};

/// Whether |f^{-1}(r)| |g^{-1}(s)| is independent of (r, s). For parts of
/// mutually unbiased observables this decides generalized unbiasedness
/// without touching a matrix.
PartitionVerdict check_partition_criterion(const PartitionMap &f, const PartitionMap &g);

/// Every effect equals I / m within tol.
bool check_trivial(const Observable &a, double tol);

struct PairReport {
    std::size_t dim = 0;
    std::size_t m = 0;
    std::size_t n = 0;
    bool both_atomic = false;
    /// Absent when a verdict was not requested or (for mu) not applicable.
    std::optional<Verdict> mu;
    std::optional<Verdict> condition1;
    std::optional<Verdict> condition2;
    std::optional<Verdict> value_complementary;
    std::optional<Verdict> generalized_mu;
    /// d / (m n) when generalized_mu holds.
    std::optional<double> alpha;
};

/// Runs every applicable predicate at one tolerance and checks the known
/// implications between them:
///   condition1 => condition2, condition1 => generalized_mu,
///   and for atomic pairs mu, value_complementary, condition1, condition2 agree.
/// A violated implication whose failing side missed by less than 10x tol is
/// flagged `marginal`; anything larger throws InternalInconsistency.
PairReport classify_pair(const Observable &a, const Observable &b, double tol);

}  // namespace mubkit
