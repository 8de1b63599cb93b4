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
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "mubkit/analysis.h"

namespace mubkit {

struct RngSeed {
    std::uint64_t value = 0;
};

enum class ObservableKind { Atomic, Sharp, Unsharp };

/// Owns one generator stream. Equal seeds give equal sample sequences.
class Sampler {
   public:
    explicit Sampler(RngSeed seed) : rng_(seed.value) {
    }

    /// Uniform on the unit sphere of C^d. Throws InvalidParams for d = 0.
    ComplexVector unit_vector(std::size_t d);
    /// Uniform on the unit sphere of the span of `basis` (orthonormal columns).
    ComplexVector unit_vector_in(const Eigen::MatrixXcd &basis);
    /// Haar-distributed unitary: QR of a complex Gaussian matrix with the
    /// phases of R's diagonal moved into Q.
    ComplexMatrix unitary(std::size_t d);
    /// sum_i w_i |v_i><v_i| over `rank` orthonormal v_i with flat-Dirichlet weights.
    State state(std::size_t d, std::size_t rank);
    /// Atomic needs m = d; sharp needs 1 <= m <= d and cuts the columns of
    /// a random unitary into m blocks of random sizes; unsharp normalizes m
    /// random full-rank PSD parts against their sum. Throws InvalidParams.
    Observable observable(std::size_t d, std::size_t m, ObservableKind kind);

    /// Uniform in [0, n).
    std::size_t index(std::size_t n);
    double uniform01();
    std::mt19937_64 &engine() noexcept {
        return rng_;
    }

   private:
    Complex gaussian();

    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

ComplexVector random_unit_vector(std::size_t d, RngSeed seed);
State random_state(std::size_t d, std::size_t rank, RngSeed seed);
ComplexMatrix random_unitary(std::size_t d, RngSeed seed);
Observable random_observable(std::size_t d, std::size_t m, ObservableKind kind, RngSeed seed);

struct SamplingResult {
    /// max_deviation <= tol.
    bool consistent = true;
    double max_deviation = 0.0;
    std::optional<Witness> witness;
    /// Worst witness among the injected vectors alone.
    std::optional<Witness> injected_witness;
    double injected_deviation = 0.0;
    /// Number of (vector, effect) evaluations performed.
    std::size_t evaluations = 0;
};

/// Monte-Carlo falsifier for value-complementarity. For every effect with an
/// eigenvalue-1 eigenspace, `samples` random unit vectors of that eigenspace
/// are drawn and each effect of the other observable is evaluated on them;
/// the deviation from the uniform value is maximized over everything. Both
/// directions are sampled. Vectors in `injected` are tried first, wherever
/// they lie in the eigenspace.
SamplingResult mc_value_complementarity(
    const Observable &a,
    const Observable &b,
    std::size_t samples,
    RngSeed seed,
    double tol,
    const std::vector<ComplexVector> &injected = {});

/// table[x][y] = tr(A_x B_y), by explicit summation over matrix entries.
std::vector<std::vector<double>> brute_trace_table(const Observable &a, const Observable &b);

}  // namespace mubkit
