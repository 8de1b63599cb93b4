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

#include <memory>

#include "mubkit/linalg.h"

namespace mubkit {

/// An operator E with 0 <= E <= I.
///
/// Effects are immutable and cheap to copy; copies share one lazily computed
/// spectral decomposition and square root, so repeated sequential products
/// with the same left factor diagonalize it once.
class Effect {
   public:
    /// Validates M: Hermitian within tol and spectrum inside [-tol, 1 + tol].
    /// Throws NotHermitian or SpectrumOutOfRange.
    static Effect create(const ComplexMatrix &m, double tol);
    static Effect create(const ComplexMatrix &m) {
        return create(m, default_tol(m.dim()));
    }
    /// Wraps the Hermitian part of M without checking the spectrum. Reserved
    /// for results that are effects by construction (sums of fibers,
    /// sequential products, compressions).
    static Effect trusted(const ComplexMatrix &m);

    const ComplexMatrix &matrix() const noexcept;
    std::size_t dim() const noexcept {
        return matrix().dim();
    }
    const SpectralDecomposition &spectrum() const;
    /// Positive square root; eigenvalues slightly below zero are clamped.
    const ComplexMatrix &sqrt() const;

   private:
    struct Impl;
    explicit Effect(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {
    }
    std::shared_ptr<const Impl> impl_;

    friend Effect complement(const Effect &a);
};

/// A density operator: PSD with unit trace.
class State {
   public:
    /// Throws NotHermitian, NotPositive or NotAState (trace off by more than tol).
    static State create(const ComplexMatrix &m, double tol);
    static State create(const ComplexMatrix &m) {
        return create(m, default_tol(m.dim()));
    }
    /// |psi><psi| for a unit vector psi. Throws NotAState if |psi| differs from 1 by more than tol.
    static State pure(const ComplexVector &psi, double tol = 1e-9);

    const ComplexMatrix &matrix() const noexcept {
        return m_;
    }
    std::size_t dim() const noexcept {
        return m_.dim();
    }

   private:
    explicit State(ComplexMatrix m) : m_(std::move(m)) {
    }
    ComplexMatrix m_;
};

/// I - A. complement(complement(A)) returns A's own matrix, bit for bit.
Effect complement(const Effect &a);

/// A o B = A^{1/2} B A^{1/2}. Throws DimMismatch.
Effect seq_product(const Effect &a, const Effect &b);

/// tr(rho A), clamped to [0, 1]. Throws DimMismatch, or InternalInconsistency
/// if the raw value is more than tol outside [0, 1] or has an imaginary part above tol.
double occurrence_probability(const State &rho, const Effect &a, double tol);
inline double occurrence_probability(const State &rho, const Effect &a) {
    return occurrence_probability(rho, a, default_tol(a.dim()));
}

bool is_sharp(const Effect &a, double tol = kEigenTol);
bool is_atomic(const Effect &a, double tol = kEigenTol);
bool is_invertible(const Effect &a, double tol = kEigenTol);

/// |AB - BA|_max <= tol. Throws DimMismatch.
bool commutes(const Effect &a, const Effect &b, double tol);

}  // namespace mubkit
