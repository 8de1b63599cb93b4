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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

namespace mubkit {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;

/// Tolerance used for eigenvalue classification (is this eigenvalue 0? 1?).
inline constexpr double kEigenTol = 1e-9;

/// Default tolerance for matrix comparisons in dimension d.
inline double default_tol(std::size_t dim) {
    return 1e-9 * static_cast<double>(dim);
}

/// Dense square complex matrix with finite entries.
///
/// Every operator in the library (effects, states, projections, the Fourier
/// matrix) is carried by one of these. The invariant is checked on every
/// construction path that accepts external data.
class ComplexMatrix {
   public:
    explicit ComplexMatrix(Eigen::MatrixXcd m);

    static ComplexMatrix zero(std::size_t dim);
    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(const std::vector<double> &entries);
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
    /// |v><v|
    static ComplexMatrix outer(const ComplexVector &v);

    std::size_t dim() const noexcept {
        return static_cast<std::size_t>(m_.rows());
    }
    Complex operator()(std::size_t row, std::size_t col) const {
        return m_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }
    const Eigen::MatrixXcd &eigen() const noexcept {
        return m_;
    }

    bool operator==(const ComplexMatrix &other) const {
        return m_ == other.m_;
    }

   private:
    Eigen::MatrixXcd m_;
};

struct SpectralDecomposition {
    /// Ascending.
    std::vector<double> eigenvalues;
    /// Column k is the unit eigenvector for eigenvalues[k].
    ComplexMatrix eigenvectors;
};

ComplexMatrix add(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix sub(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix scale(const ComplexMatrix &a, Complex factor);
ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix adjoint(const ComplexMatrix &a);
Complex trace(const ComplexMatrix &a);
/// tr(AB) without forming the product.
Complex trace_of_product(const ComplexMatrix &a, const ComplexMatrix &b);
/// (M + M*) / 2
ComplexMatrix hermitian_part(const ComplexMatrix &a);

inline ComplexMatrix operator+(const ComplexMatrix &a, const ComplexMatrix &b) {
    return add(a, b);
}
inline ComplexMatrix operator-(const ComplexMatrix &a, const ComplexMatrix &b) {
    return sub(a, b);
}
inline ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    return matmul(a, b);
}
inline ComplexMatrix operator*(Complex factor, const ComplexMatrix &a) {
    return scale(a, factor);
}

/// Max entrywise modulus.
double max_abs(const ComplexMatrix &a);
/// Max entrywise modulus of a - b. Throws DimMismatch.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);
/// max |A - B|_{ij} <= tol. Throws DimMismatch.
bool mat_approx_eq(const ComplexMatrix &a, const ComplexMatrix &b, double tol);
/// max |M - M*|_{ij}
double hermitian_defect(const ComplexMatrix &a);

/// Eigendecomposition of a Hermitian matrix. Throws NotHermitian when
/// |M - M*|_max > tol. Only the Hermitian part of M is decomposed.
SpectralDecomposition hermitian_eig(const ComplexMatrix &m, double tol);

/// Unique PSD square root. Eigenvalues in [-tol, 0) are treated as 0;
/// anything more negative raises NotPositive.
ComplexMatrix psd_sqrt(const ComplexMatrix &m, double tol);
ComplexMatrix psd_sqrt(const SpectralDecomposition &spectrum, double tol);

/// Orthonormal basis (as columns) of the eigenspace for eigenvalues within
/// tol of `value`. The particular basis is implementation-defined when the
/// eigenspace is degenerate; only its span is meaningful.
Eigen::MatrixXcd eigenspace_basis(const SpectralDecomposition &spectrum, double value, double tol);
/// Orthogonal projection onto the eigenspace for eigenvalues within tol of `value`.
ComplexMatrix eigenspace_projection(const SpectralDecomposition &spectrum, double value, double tol);
/// Orthogonal projection onto the span of eigenvectors with eigenvalue > tol.
ComplexMatrix support_projection(const SpectralDecomposition &spectrum, double tol);

}  // namespace mubkit
