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

#include "mubkit/linalg.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mubkit/error.h"

namespace mubkit {

namespace {

void require_same_dim(const ComplexMatrix &a, const ComplexMatrix &b, const char *op) {
    if (a.dim() != b.dim()) {
        std::ostringstream ss;
        ss << op << ": " << a.dim() << "x" << a.dim() << " vs " << b.dim() << "x" << b.dim();
        raise(ErrorCode::DimMismatch, ss.str());
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
        std::ostringstream ss;
        ss << "matrix must be square and non-empty, got " << m_.rows() << "x" << m_.cols();
        raise(ErrorCode::InvalidDim, ss.str());
    }
    if (!m_.allFinite()) {
        raise(ErrorCode::InvalidParams, "matrix has non-finite entries");
    }
}

ComplexMatrix ComplexMatrix::zero(std::size_t dim) {
    auto d = static_cast<Eigen::Index>(dim);
    return ComplexMatrix(Eigen::MatrixXcd::Zero(d, d));
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    auto d = static_cast<Eigen::Index>(dim);
    return ComplexMatrix(Eigen::MatrixXcd::Identity(d, d));
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double> &entries) {
    auto d = static_cast<Eigen::Index>(entries.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index k = 0; k < d; k++) {
        m(k, k) = entries[static_cast<std::size_t>(k)];
    }
    return ComplexMatrix(std::move(m));
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    auto d = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXcd m(d, d);
    Eigen::Index r = 0;
    for (const auto &row : rows) {
        if (static_cast<Eigen::Index>(row.size()) != d) {
            raise(ErrorCode::InvalidDim, "from_rows: ragged or non-square rows");
        }
        Eigen::Index c = 0;
        for (const auto &v : row) {
            m(r, c++) = v;
        }
        r++;
    }
    return ComplexMatrix(std::move(m));
}

ComplexMatrix ComplexMatrix::outer(const ComplexVector &v) {
    return ComplexMatrix(v * v.adjoint());
}

ComplexMatrix add(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "add");
    return ComplexMatrix(a.eigen() + b.eigen());
}

ComplexMatrix sub(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "sub");
    return ComplexMatrix(a.eigen() - b.eigen());
}

ComplexMatrix scale(const ComplexMatrix &a, Complex factor) {
    return ComplexMatrix(a.eigen() * factor);
}

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "matmul");
    return ComplexMatrix(a.eigen() * b.eigen());
}

ComplexMatrix adjoint(const ComplexMatrix &a) {
    return ComplexMatrix(a.eigen().adjoint());
}

Complex trace(const ComplexMatrix &a) {
    return a.eigen().trace();
}

Complex trace_of_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "trace_of_product");
    return a.eigen().cwiseProduct(b.eigen().transpose()).sum();
}

ComplexMatrix hermitian_part(const ComplexMatrix &a) {
    return ComplexMatrix((a.eigen() + a.eigen().adjoint()) * 0.5);
}

double max_abs(const ComplexMatrix &a) {
    return a.eigen().cwiseAbs().maxCoeff();
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "max_abs_diff");
    return (a.eigen() - b.eigen()).cwiseAbs().maxCoeff();
}

bool mat_approx_eq(const ComplexMatrix &a, const ComplexMatrix &b, double tol) {
    return max_abs_diff(a, b) <= tol;
}

double hermitian_defect(const ComplexMatrix &a) {
    return (a.eigen() - a.eigen().adjoint()).cwiseAbs().maxCoeff();
}

SpectralDecomposition hermitian_eig(const ComplexMatrix &m, double tol) {
    double defect = hermitian_defect(m);
    if (defect > tol) {
        std::ostringstream ss;
        ss << "max |M - M*| = " << defect << " exceeds tol " << tol;
        raise(ErrorCode::NotHermitian, ss.str());
    }
    Eigen::MatrixXcd h = (m.eigen() + m.eigen().adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success) {
        raise(ErrorCode::InternalInconsistency, "self-adjoint eigensolver did not converge");
    }
    const auto &values = solver.eigenvalues();
    std::vector<double> eigenvalues(values.data(), values.data() + values.size());
    return SpectralDecomposition{std::move(eigenvalues), ComplexMatrix(solver.eigenvectors())};
}

ComplexMatrix psd_sqrt(const SpectralDecomposition &spectrum, double tol) {
    const auto &v = spectrum.eigenvectors.eigen();
    // Eigenvalues are only resolved to about d * eps * |M|; below that floor a
    // computed zero eigenvalue would otherwise contribute sqrt(eps) to the root.
    double scale_max = 1.0;
    for (double lambda : spectrum.eigenvalues) {
        scale_max = std::max(scale_max, std::abs(lambda));
    }
    double floor = 8.0 * static_cast<double>(v.cols()) * std::numeric_limits<double>::epsilon() * scale_max;
    Eigen::VectorXd roots(v.cols());
    for (Eigen::Index k = 0; k < v.cols(); k++) {
        double lambda = spectrum.eigenvalues[static_cast<std::size_t>(k)];
        if (lambda < -tol) {
            std::ostringstream ss;
            ss << "eigenvalue " << lambda << " below -tol " << -tol;
            raise(ErrorCode::NotPositive, ss.str());
        }
        roots(k) = lambda <= floor ? 0.0 : std::sqrt(lambda);
    }
    Eigen::MatrixXcd r = v * roots.asDiagonal() * v.adjoint();
    return ComplexMatrix((r + r.adjoint()) * 0.5);
}

ComplexMatrix psd_sqrt(const ComplexMatrix &m, double tol) {
    return psd_sqrt(hermitian_eig(m, tol), tol);
}

Eigen::MatrixXcd eigenspace_basis(const SpectralDecomposition &spectrum, double value, double tol) {
    const auto &v = spectrum.eigenvectors.eigen();
    std::vector<Eigen::Index> picked;
    for (Eigen::Index k = 0; k < v.cols(); k++) {
        if (std::abs(spectrum.eigenvalues[static_cast<std::size_t>(k)] - value) <= tol) {
            picked.push_back(k);
        }
    }
    Eigen::MatrixXcd basis(v.rows(), static_cast<Eigen::Index>(picked.size()));
    for (std::size_t j = 0; j < picked.size(); j++) {
        basis.col(static_cast<Eigen::Index>(j)) = v.col(picked[j]);
    }
    return basis;
}

ComplexMatrix eigenspace_projection(const SpectralDecomposition &spectrum, double value, double tol) {
    Eigen::MatrixXcd basis = eigenspace_basis(spectrum, value, tol);
    return ComplexMatrix(basis * basis.adjoint());
}

ComplexMatrix support_projection(const SpectralDecomposition &spectrum, double tol) {
    const auto &v = spectrum.eigenvectors.eigen();
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(v.rows(), v.rows());
    for (Eigen::Index k = 0; k < v.cols(); k++) {
        if (spectrum.eigenvalues[static_cast<std::size_t>(k)] > tol) {
            p += v.col(k) * v.col(k).adjoint();
        }
    }
    return ComplexMatrix(std::move(p));
}

}  // namespace mubkit
