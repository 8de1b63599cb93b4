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

#include "mubkit/oracle.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mubkit/error.h"

namespace mubkit {

Complex Sampler::gaussian() {
    double re = normal_(rng_);
    double im = normal_(rng_);
    return {re, im};
}

std::size_t Sampler::index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
}

double Sampler::uniform01() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
}

ComplexVector Sampler::unit_vector(std::size_t d) {
    if (d == 0) {
        raise(ErrorCode::InvalidParams, "unit_vector: dimension must be positive");
    }
    ComplexVector v(static_cast<Eigen::Index>(d));
    double norm = 0.0;
    do {
        for (Eigen::Index k = 0; k < v.size(); k++) {
            v(k) = gaussian();
        }
        norm = v.norm();
    } while (norm == 0.0);
    return v / norm;
}

ComplexVector Sampler::unit_vector_in(const Eigen::MatrixXcd &basis) {
    if (basis.cols() == 0) {
        raise(ErrorCode::InvalidParams, "unit_vector_in: empty subspace");
    }
    ComplexVector coords = unit_vector(static_cast<std::size_t>(basis.cols()));
    ComplexVector v = basis * coords;
    return v / v.norm();
}

ComplexMatrix Sampler::unitary(std::size_t d) {
    if (d == 0) {
        raise(ErrorCode::InvalidParams, "unitary: dimension must be positive");
    }
    auto n = static_cast<Eigen::Index>(d);
    Eigen::MatrixXcd z(n, n);
    for (Eigen::Index c = 0; c < n; c++) {
        for (Eigen::Index r = 0; r < n; r++) {
            z(r, c) = gaussian();
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
    const auto &r = qr.matrixQR();
    for (Eigen::Index k = 0; k < n; k++) {
        Complex diag = r(k, k);
        double mag = std::abs(diag);
        if (mag > 0.0) {
            q.col(k) *= diag / mag;
        }
    }
    return ComplexMatrix(std::move(q));
}

State Sampler::state(std::size_t d, std::size_t rank) {
    if (d == 0 || rank == 0 || rank > d) {
        std::ostringstream ss;
        ss << "state: need 1 <= rank <= d, got d=" << d << " rank=" << rank;
        raise(ErrorCode::InvalidParams, ss.str());
    }
    ComplexMatrix u = unitary(d);
    std::vector<double> weights(rank);
    std::exponential_distribution<double> expo(1.0);
    double total = 0.0;
    for (auto &w : weights) {
        w = expo(rng_);
        total += w;
    }
    auto n = static_cast<Eigen::Index>(d);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t k = 0; k < rank; k++) {
        auto col = u.eigen().col(static_cast<Eigen::Index>(k));
        rho += (weights[k] / total) * (col * col.adjoint());
    }
    return State::create(ComplexMatrix(std::move(rho)), 1e-12);
}

Observable Sampler::observable(std::size_t d, std::size_t m, ObservableKind kind) {
    if (d == 0 || m == 0) {
        raise(ErrorCode::InvalidParams, "observable: dimension and outcome count must be positive");
    }
    auto n = static_cast<Eigen::Index>(d);
    std::vector<ComplexMatrix> effects;
    effects.reserve(m);
    switch (kind) {
        case ObservableKind::Atomic:
        case ObservableKind::Sharp: {
            if (kind == ObservableKind::Atomic && m != d) {
                raise(ErrorCode::InvalidParams, "atomic observable needs m = d");
            }
            if (m > d) {
                raise(ErrorCode::InvalidParams, "sharp observable needs m <= d");
            }
            // m - 1 distinct cut points in 1..d-1 give m non-empty blocks.
            std::vector<std::size_t> cuts(d - 1);
            for (std::size_t k = 0; k < cuts.size(); k++) {
                cuts[k] = k + 1;
            }
            std::shuffle(cuts.begin(), cuts.end(), rng_);
            cuts.resize(m - 1);
            std::sort(cuts.begin(), cuts.end());
            cuts.push_back(d);
            ComplexMatrix u = unitary(d);
            std::size_t start = 0;
            for (std::size_t end : cuts) {
                auto block = u.eigen().middleCols(static_cast<Eigen::Index>(start), static_cast<Eigen::Index>(end - start));
                effects.emplace_back(block * block.adjoint());
                start = end;
            }
            break;
        }
        case ObservableKind::Unsharp: {
            std::vector<Eigen::MatrixXcd> parts;
            Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(n, n);
            for (std::size_t k = 0; k < m; k++) {
                Eigen::MatrixXcd x(n, n);
                for (Eigen::Index c = 0; c < n; c++) {
                    for (Eigen::Index r = 0; r < n; r++) {
                        x(r, c) = gaussian();
                    }
                }
                parts.push_back(x * x.adjoint());
                sum += parts.back();
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sum);
            Eigen::VectorXd inv_root = solver.eigenvalues().cwiseSqrt().cwiseInverse();
            Eigen::MatrixXcd w = solver.eigenvectors() * inv_root.asDiagonal() * solver.eigenvectors().adjoint();
            for (const auto &p : parts) {
                effects.emplace_back(w * p * w);
            }
            break;
        }
    }
    return Observable::create(d, numbered_labels(m), effects, default_tol(d));
}

ComplexVector random_unit_vector(std::size_t d, RngSeed seed) {
    return Sampler(seed).unit_vector(d);
}

State random_state(std::size_t d, std::size_t rank, RngSeed seed) {
    return Sampler(seed).state(d, rank);
}

ComplexMatrix random_unitary(std::size_t d, RngSeed seed) {
    return Sampler(seed).unitary(d);
}

Observable random_observable(std::size_t d, std::size_t m, ObservableKind kind, RngSeed seed) {
    return Sampler(seed).observable(d, m, kind);
}

namespace {

void sample_half(
    const Observable &certain,
    const Observable &other,
    bool certain_is_a,
    std::size_t samples,
    Sampler &sampler,
    double tol,
    const std::vector<ComplexVector> &injected,
    SamplingResult &out) {
    double target = 1.0 / static_cast<double>(other.size());
    double ctol = std::max(tol, kEigenTol);
    auto evaluate = [&](std::size_t x, const ComplexVector &psi, bool is_injected) {
        for (std::size_t y = 0; y < other.size(); y++) {
            double value = psi.dot(other.effect(y).matrix().eigen() * psi).real();
            double dev = std::abs(value - target);
            out.evaluations++;
            bool worst = dev > out.max_deviation;
            bool worst_injected = is_injected && (dev > out.injected_deviation || !out.injected_witness);
            if (worst || worst_injected) {
                Witness w;
                w.outcomes = certain_is_a ? std::vector<std::string>{certain.label(x), other.label(y)}
                                          : std::vector<std::string>{other.label(y), certain.label(x)};
                w.state = psi;
                w.observed = value;
                w.expected = target;
                w.note = certain_is_a ? "sampled: A outcome certain" : "sampled: B outcome certain";
                if (worst_injected) {
                    out.injected_deviation = dev;
                    out.injected_witness = w;
                }
                if (worst) {
                    out.max_deviation = dev;
                    out.witness = std::move(w);
                }
            }
        }
    };
    for (std::size_t x = 0; x < certain.size(); x++) {
        Eigen::MatrixXcd basis = eigenspace_basis(certain.effect(x).spectrum(), 1.0, ctol);
        if (basis.cols() == 0) {
            continue;
        }
        Eigen::MatrixXcd pi = basis * basis.adjoint();
        for (const auto &raw : injected) {
            if (raw.size() != pi.rows() || raw.norm() == 0.0) {
                continue;
            }
            ComplexVector psi = raw / raw.norm();
            if ((psi - pi * psi).norm() <= 10.0 * ctol) {
                evaluate(x, psi, true);
            }
        }
        for (std::size_t s = 0; s < samples; s++) {
            evaluate(x, sampler.unit_vector_in(basis), false);
        }
    }
}

}  // namespace

SamplingResult mc_value_complementarity(
    const Observable &a,
    const Observable &b,
    std::size_t samples,
    RngSeed seed,
    double tol,
    const std::vector<ComplexVector> &injected) {
    if (a.dim() != b.dim()) {
        raise(ErrorCode::DimMismatch, "mc_value_complementarity: observables of different dimension");
    }
    if (samples == 0) {
        raise(ErrorCode::InvalidParams, "mc_value_complementarity: need at least one sample");
    }
    Sampler sampler(seed);
    SamplingResult out;
    sample_half(a, b, true, samples, sampler, tol, injected, out);
    sample_half(b, a, false, samples, sampler, tol, injected, out);
    out.consistent = out.max_deviation <= tol;
    return out;
}

std::vector<std::vector<double>> brute_trace_table(const Observable &a, const Observable &b) {
    if (a.dim() != b.dim()) {
        raise(ErrorCode::DimMismatch, "brute_trace_table: observables of different dimension");
    }
    std::size_t d = a.dim();
    std::vector<std::vector<double>> table(a.size(), std::vector<double>(b.size(), 0.0));
    for (std::size_t x = 0; x < a.size(); x++) {
        const ComplexMatrix &ax = a.effect(x).matrix();
        for (std::size_t y = 0; y < b.size(); y++) {
            const ComplexMatrix &by = b.effect(y).matrix();
            Complex sum = 0.0;
            for (std::size_t i = 0; i < d; i++) {
                for (std::size_t k = 0; k < d; k++) {
                    sum += ax(i, k) * by(k, i);
                }
            }
            table[x][y] = sum.real();
        }
    }
    return table;
}

}  // namespace mubkit
