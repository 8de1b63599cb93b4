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

#include <algorithm>
#include <cmath>
#include <mutex>
#include <optional>
#include <sstream>

#include "mubkit/error.h"

namespace mubkit {

struct Effect::Impl {
    explicit Impl(ComplexMatrix m) : matrix(std::move(m)) {
    }

    ComplexMatrix matrix;
    // Set when this effect was produced by complement(); lets a double
    // complement hand back the original.
    std::shared_ptr<const Impl> complement_of;

    mutable std::once_flag spectrum_once;
    mutable std::optional<SpectralDecomposition> spectrum;
    mutable std::once_flag sqrt_once;
    mutable std::optional<ComplexMatrix> sqrt;
};

Effect Effect::create(const ComplexMatrix &m, double tol) {
    double defect = hermitian_defect(m);
    if (defect > tol) {
        std::ostringstream ss;
        ss << "effect matrix is not Hermitian: max |M - M*| = " << defect;
        raise(ErrorCode::NotHermitian, ss.str());
    }
    Effect e(std::make_shared<Impl>(hermitian_part(m)));
    const auto &values = e.spectrum().eigenvalues;
    for (double lambda : values) {
        if (lambda < -tol || lambda > 1.0 + tol) {
            std::ostringstream ss;
            ss << "eigenvalue " << lambda << " outside [0, 1]";
            raise(ErrorCode::SpectrumOutOfRange, ss.str());
        }
    }
    return e;
}

Effect Effect::trusted(const ComplexMatrix &m) {
    return Effect(std::make_shared<Impl>(hermitian_part(m)));
}

const ComplexMatrix &Effect::matrix() const noexcept {
    return impl_->matrix;
}

const SpectralDecomposition &Effect::spectrum() const {
    const Impl &impl = *impl_;
    std::call_once(impl.spectrum_once, [&impl] {
        // The stored matrix is exactly Hermitian, so no tolerance is needed.
        impl.spectrum = hermitian_eig(impl.matrix, 0.0);
    });
    return *impl.spectrum;
}

const ComplexMatrix &Effect::sqrt() const {
    const Impl &impl = *impl_;
    std::call_once(impl.sqrt_once, [this, &impl] {
        impl.sqrt = psd_sqrt(spectrum(), std::max(kEigenTol, default_tol(dim())));
    });
    return *impl.sqrt;
}

State State::create(const ComplexMatrix &m, double tol) {
    SpectralDecomposition spectrum = hermitian_eig(m, tol);
    if (spectrum.eigenvalues.front() < -tol) {
        std::ostringstream ss;
        ss << "state has negative eigenvalue " << spectrum.eigenvalues.front();
        raise(ErrorCode::NotPositive, ss.str());
    }
    double tr = trace(m).real();
    if (std::abs(tr - 1.0) > tol) {
        std::ostringstream ss;
        ss << "state trace is " << tr;
        raise(ErrorCode::NotAState, ss.str());
    }
    return State(hermitian_part(m));
}

State State::pure(const ComplexVector &psi, double tol) {
    double norm = psi.norm();
    if (std::abs(norm - 1.0) > tol) {
        std::ostringstream ss;
        ss << "pure state vector has norm " << norm;
        raise(ErrorCode::NotAState, ss.str());
    }
    return State(hermitian_part(ComplexMatrix::outer(psi)));
}

Effect complement(const Effect &a) {
    if (a.impl_->complement_of) {
        return Effect(a.impl_->complement_of);
    }
    auto impl = std::make_shared<Effect::Impl>(ComplexMatrix::identity(a.dim()) - a.matrix());
    impl->complement_of = a.impl_;
    return Effect(std::move(impl));
}

Effect seq_product(const Effect &a, const Effect &b) {
    if (a.dim() != b.dim()) {
        raise(ErrorCode::DimMismatch, "seq_product: effects of different dimension");
    }
    const ComplexMatrix &root = a.sqrt();
    return Effect::trusted(root * b.matrix() * root);
}

double occurrence_probability(const State &rho, const Effect &a, double tol) {
    if (rho.dim() != a.dim()) {
        raise(ErrorCode::DimMismatch, "occurrence_probability: state and effect dimensions differ");
    }
    Complex p = trace_of_product(rho.matrix(), a.matrix());
    if (std::abs(p.imag()) > tol || p.real() < -tol || p.real() > 1.0 + tol) {
        std::ostringstream ss;
        ss << "tr(rho A) = " << p << " is not a probability";
        raise(ErrorCode::InternalInconsistency, ss.str());
    }
    return std::clamp(p.real(), 0.0, 1.0);
}

bool is_sharp(const Effect &a, double tol) {
    for (double lambda : a.spectrum().eigenvalues) {
        if (std::abs(lambda) > tol && std::abs(lambda - 1.0) > tol) {
            return false;
        }
    }
    return true;
}

bool is_atomic(const Effect &a, double tol) {
    if (!is_sharp(a, tol)) {
        return false;
    }
    int ones = 0;
    for (double lambda : a.spectrum().eigenvalues) {
        if (std::abs(lambda - 1.0) <= tol) {
            ones++;
        }
    }
    return ones == 1;
}

bool is_invertible(const Effect &a, double tol) {
    return a.spectrum().eigenvalues.front() >= tol;
}

bool commutes(const Effect &a, const Effect &b, double tol) {
    if (a.dim() != b.dim()) {
        raise(ErrorCode::DimMismatch, "commutes: effects of different dimension");
    }
    const auto &x = a.matrix().eigen();
    const auto &y = b.matrix().eigen();
    return (x * y - y * x).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace mubkit
