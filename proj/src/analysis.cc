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

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "mubkit/error.h"

namespace mubkit {

namespace {

constexpr double kMarginalFactor = 10.0;

void require_same_dim(const Observable &a, const Observable &b, const char *op) {
    if (a.dim() != b.dim()) {
        std::ostringstream ss;
        ss << op << ": observables of dimension " << a.dim() << " and " << b.dim();
        raise(ErrorCode::DimMismatch, ss.str());
    }
}

// Eigenvalue classification never gets tighter than kEigenTol.
double classification_tol(double tol) {
    return std::max(tol, kEigenTol);
}

// Folds one deviation into a verdict, remembering the worst witness.
void record(Verdict &v, double deviation, double tol, Witness witness) {
    if (deviation > v.max_deviation) {
        v.max_deviation = deviation;
        if (deviation > tol) {
            v.witness = std::move(witness);
        }
    }
}

void finish(Verdict &v, double tol) {
    v.holds = v.max_deviation <= tol;
    if (v.holds) {
        v.witness.reset();
    }
}

Verdict trace_table_verdict(const Observable &a, const Observable &b, double target, double tol, const char *note) {
    Verdict v;
    for (std::size_t x = 0; x < a.size(); x++) {
        for (std::size_t y = 0; y < b.size(); y++) {
            double t = trace_of_product(a.effect(x).matrix(), b.effect(y).matrix()).real();
            record(v, std::abs(t - target), tol, Witness{{a.label(x), b.label(y)}, std::nullopt, t, target, note});
        }
    }
    finish(v, tol);
    return v;
}

// Largest |<psi, D psi>| over the polarization vectors built from the
// largest entry of D; Pi maps the vectors into the eigenspace.
struct PolarizationWitness {
    ComplexVector psi;
    double form;
};

PolarizationWitness polarization_witness(const Eigen::MatrixXcd &pi, const Eigen::MatrixXcd &d, double tol) {
    Eigen::Index k = 0;
    Eigen::Index l = 0;
    d.cwiseAbs().maxCoeff(&k, &l);
    auto n = pi.rows();
    auto evaluate = [&](const ComplexVector &raw) -> std::optional<PolarizationWitness> {
        ComplexVector v = pi * raw;
        double norm = v.norm();
        if (norm <= tol) {
            return std::nullopt;
        }
        v /= norm;
        return PolarizationWitness{v, v.dot(d * v).real()};
    };
    std::optional<PolarizationWitness> best;
    const std::array<Complex, 4> phases{Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
    for (std::size_t p = 0; p < (k == l ? 1 : phases.size()); p++) {
        ComplexVector raw = ComplexVector::Zero(n);
        raw(k) += 1.0;
        if (k != l) {
            raw(l) += phases[p];
        }
        auto candidate = evaluate(raw);
        // Near-ties keep the earlier phase so the witness is reproducible.
        if (candidate && (!best || std::abs(candidate->form) > std::abs(best->form) + tol)) {
            best = std::move(candidate);
        }
    }
    if (!best) {
        // The max entry of Pi D Pi lies in range(Pi), so a basis vector of
        // that range always gives a usable direction.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(d);
        const auto &values = solver.eigenvalues();
        Eigen::Index idx = 0;
        values.cwiseAbs().maxCoeff(&idx);
        ComplexVector v = solver.eigenvectors().col(idx);
        best = PolarizationWitness{v, values(idx)};
    }
    return *best;
}

// One direction of value-complementarity: certainty of `certain` outcomes
// must leave `other` uniform.
void value_complementary_half(
    const Observable &certain,
    const Observable &other,
    bool certain_is_a,
    double tol,
    Verdict &v,
    double &witness_deviation,
    bool &any_certain) {
    double target = 1.0 / static_cast<double>(other.size());
    double ctol = classification_tol(tol);
    for (std::size_t x = 0; x < certain.size(); x++) {
        Eigen::MatrixXcd basis = eigenspace_basis(certain.effect(x).spectrum(), 1.0, ctol);
        if (basis.cols() == 0) {
            continue;
        }
        any_certain = true;
        Eigen::MatrixXcd pi = basis * basis.adjoint();
        for (std::size_t y = 0; y < other.size(); y++) {
            Eigen::MatrixXcd d = pi * other.effect(y).matrix().eigen() * pi - target * pi;
            d = (d + d.adjoint()) * 0.5;
            double deviation = d.cwiseAbs().maxCoeff();
            v.max_deviation = std::max(v.max_deviation, deviation);
            // A later pair has to be materially worse to displace the witness.
            if (deviation <= tol || (v.witness && deviation <= witness_deviation + tol)) {
                continue;
            }
            witness_deviation = deviation;
            auto w = polarization_witness(pi, d, tol);
            Witness witness;
            witness.outcomes = certain_is_a ? std::vector<std::string>{certain.label(x), other.label(y)}
                                            : std::vector<std::string>{other.label(y), certain.label(x)};
            witness.state = w.psi;
            witness.observed = w.psi.dot(other.effect(y).matrix().eigen() * w.psi).real();
            witness.expected = target;
            witness.note = certain_is_a ? "A outcome certain, B not uniform" : "B outcome certain, A not uniform";
            v.witness = std::move(witness);
        }
    }
}

void enforce_implication(bool premise, Verdict &conclusion, double tol, const char *what) {
    if (!premise || conclusion.holds) {
        return;
    }
    if (conclusion.max_deviation <= kMarginalFactor * tol) {
        conclusion.marginal = true;
        return;
    }
    std::ostringstream ss;
    ss << what << " violated: deviation " << conclusion.max_deviation << " at tol " << tol;
    raise(ErrorCode::InternalInconsistency, ss.str());
}

}  // namespace

Verdict check_mu(const Observable &a, const Observable &b, double tol) {
    require_same_dim(a, b, "check_mu");
    if (!is_atomic(a, classification_tol(tol)) || !is_atomic(b, classification_tol(tol))) {
        raise(ErrorCode::NotAtomic, "check_mu needs two atomic observables");
    }
    if (a.size() != a.dim() || b.size() != b.dim()) {
        raise(ErrorCode::NotAtomic, "check_mu needs d outcomes on each side");
    }
    return trace_table_verdict(a, b, 1.0 / static_cast<double>(a.dim()), tol, "|<phi_x, psi_y>|^2 = 1/d");
}

Verdict check_condition1(const Observable &a, const Observable &b, double tol) {
    require_same_dim(a, b, "check_condition1");
    double inv_n = 1.0 / static_cast<double>(b.size());
    double inv_m = 1.0 / static_cast<double>(a.size());
    Verdict v;
    for (std::size_t x = 0; x < a.size(); x++) {
        const auto &ax = a.effect(x).matrix().eigen();
        for (std::size_t y = 0; y < b.size(); y++) {
            const auto &by = b.effect(y).matrix().eigen();
            double d_ab = (seq_product(a.effect(x), b.effect(y)).matrix().eigen() - inv_n * ax).cwiseAbs().maxCoeff();
            record(v, d_ab, tol, Witness{{a.label(x), b.label(y)}, std::nullopt, d_ab, 0.0, "A_x o B_y = A_x / n"});
            double d_ba = (seq_product(b.effect(y), a.effect(x)).matrix().eigen() - inv_m * by).cwiseAbs().maxCoeff();
            record(v, d_ba, tol, Witness{{a.label(x), b.label(y)}, std::nullopt, d_ba, 0.0, "B_y o A_x = B_y / m"});
        }
    }
    finish(v, tol);
    return v;
}

Verdict check_condition2(const Observable &a, const Observable &b, double tol) {
    require_same_dim(a, b, "check_condition2");
    Verdict v;
    auto d = static_cast<Eigen::Index>(a.dim());
    auto scan = [&](const Observable &cond, const char *note) {
        double target = 1.0 / static_cast<double>(cond.size());
        for (std::size_t k = 0; k < cond.size(); k++) {
            double dev = (cond.effect(k).matrix().eigen() - target * Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
            record(v, dev, tol, Witness{{cond.label(k)}, std::nullopt, dev, 0.0, note});
        }
    };
    scan(conditioned(b, a), "(B|A)_y = I / n");
    scan(conditioned(a, b), "(A|B)_x = I / m");
    finish(v, tol);
    return v;
}

Verdict check_value_complementary(const Observable &a, const Observable &b, double tol) {
    require_same_dim(a, b, "check_value_complementary");
    Verdict v;
    bool any_certain = false;
    double witness_deviation = 0.0;
    value_complementary_half(a, b, true, tol, v, witness_deviation, any_certain);
    value_complementary_half(b, a, false, tol, v, witness_deviation, any_certain);
    v.vacuous = !any_certain;
    finish(v, tol);
    return v;
}

double forced_alpha(const Observable &a, const Observable &b) {
    return static_cast<double>(a.dim()) / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

Verdict check_generalized_mu(const Observable &a, const Observable &b, double tol) {
    require_same_dim(a, b, "check_generalized_mu");
    return trace_table_verdict(a, b, forced_alpha(a, b), tol, "tr(A_x B_y) = d / (m n)");
}

PartitionVerdict check_partition_criterion(const PartitionMap &f, const PartitionMap &g) {
    PartitionVerdict out;
    auto fs = f.fiber_sizes();
    auto gs = g.fiber_sizes();
    out.products.reserve(fs.size() * gs.size());
    for (std::size_t r : fs) {
        for (std::size_t s : gs) {
            out.products.push_back(r * s);
        }
    }
    out.holds = std::all_of(out.products.begin(), out.products.end(), [&](std::size_t p) {
        return p == out.products.front();
    });
    if (out.holds && !out.products.empty()) {
        out.constant = out.products.front();
    }
    return out;
}

bool check_trivial(const Observable &a, double tol) {
    double target = 1.0 / static_cast<double>(a.size());
    auto d = static_cast<Eigen::Index>(a.dim());
    for (const auto &e : a.effects()) {
        if ((e.matrix().eigen() - target * Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() > tol) {
            return false;
        }
    }
    return true;
}

PairReport classify_pair(const Observable &a, const Observable &b, double tol) {
    require_same_dim(a, b, "classify_pair");
    PairReport report;
    report.dim = a.dim();
    report.m = a.size();
    report.n = b.size();
    double ctol = classification_tol(tol);
    report.both_atomic = is_atomic(a, ctol) && is_atomic(b, ctol);
    if (report.both_atomic) {
        report.mu = check_mu(a, b, tol);
    }
    report.condition1 = check_condition1(a, b, tol);
    report.condition2 = check_condition2(a, b, tol);
    report.value_complementary = check_value_complementary(a, b, tol);
    report.generalized_mu = check_generalized_mu(a, b, tol);

    bool c1 = report.condition1->holds;
    enforce_implication(c1, *report.condition2, tol, "condition1 => condition2");
    enforce_implication(c1, *report.generalized_mu, tol, "condition1 => generalized_mu");
    if (report.both_atomic) {
        std::array<Verdict *, 4> group{&*report.mu, &*report.value_complementary, &*report.condition1,
                                       &*report.condition2};
        bool any_holds = std::any_of(group.begin(), group.end(), [](const Verdict *v) { return v->holds; });
        for (Verdict *v : group) {
            enforce_implication(any_holds, *v, tol, "atomic equivalence of mu, value_complementary, condition1, condition2");
        }
    }
    if (report.generalized_mu->holds) {
        report.alpha = forced_alpha(a, b);
    }
    return report;
}

}  // namespace mubkit
