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

#include "mubkit/paper_suite.h"

#include <cmath>
#include <functional>
#include <sstream>

#include "mubkit/error.h"
#include "mubkit/fourier.h"

namespace mubkit {

namespace {

constexpr double kMatrixTol = 1e-12;
const Complex kI(0.0, 1.0);

class Runner {
   public:
    explicit Runner(std::optional<double> override_tol) : override_(override_tol) {
    }

    double tol(double fixture_tol) const {
        return override_.value_or(fixture_tol);
    }

    // `body` returns the measured deviation; the fixture passes when it is within tol.
    void deviation(const std::string &name, double fixture_tol, const std::function<double()> &body) {
        FixtureResult r{name, false, 0.0, tol(fixture_tol), ""};
        try {
            r.deviation = body();
            r.passed = r.deviation <= r.tolerance;
            if (!r.passed) {
                std::ostringstream ss;
                ss << "deviation " << r.deviation << " exceeds tol " << r.tolerance;
                if (r.deviation <= 1e-9) {
                    ss << " (roundoff-level; tolerance is tighter than double precision supports)";
                }
                r.detail = ss.str();
            }
        } catch (const std::exception &e) {
            r.detail = e.what();
        }
        results_.push_back(std::move(r));
    }

    // For predicate fixtures: `body` returns whether the expectation is met,
    // filling `measured` and `detail`.
    void expect(const std::string &name, double fixture_tol, const std::function<bool(double, double &, std::string &)> &body) {
        FixtureResult r{name, false, 0.0, tol(fixture_tol), ""};
        try {
            r.passed = body(r.tolerance, r.deviation, r.detail);
            if (!r.passed && r.detail.empty()) {
                std::ostringstream ss;
                ss << "expectation not met at tol " << r.tolerance << " (deviation " << r.deviation << ")";
                if (r.deviation <= 1e-9) {
                    ss << "; roundoff-level deviation, tolerance likely too tight";
                }
                r.detail = ss.str();
            }
        } catch (const std::exception &e) {
            r.detail = e.what();
        }
        results_.push_back(std::move(r));
    }

    std::vector<FixtureResult> take() {
        return std::move(results_);
    }

   private:
    std::optional<double> override_;
    std::vector<FixtureResult> results_;
};

ComplexMatrix quarter(std::initializer_list<std::initializer_list<Complex>> rows) {
    return scale(ComplexMatrix::from_rows(rows), 0.25);
}

ComplexMatrix half(std::initializer_list<std::initializer_list<Complex>> rows) {
    return scale(ComplexMatrix::from_rows(rows), 0.5);
}

double max_dev_effects(const Observable &a, const std::vector<ComplexMatrix> &expected) {
    if (a.size() != expected.size()) {
        raise(ErrorCode::InvalidParams, "outcome count differs from fixture");
    }
    double dev = 0.0;
    for (std::size_t k = 0; k < expected.size(); k++) {
        dev = std::max(dev, max_abs_diff(a.effect(k).matrix(), expected[k]));
    }
    return dev;
}

ComplexMatrix scalar_identity(std::size_t d, double c) {
    return scale(ComplexMatrix::identity(d), c);
}

}  // namespace

std::vector<FixtureResult> run_paper_suite(std::optional<double> tol_override, RngSeed seed) {
    Runner run(tol_override);
    const Complex i = kI;
    const double r2 = 1.0 / std::sqrt(2.0);

    // Fourier matrices.
    run.deviation("fourier N=2 matrix", kMatrixTol, [&] {
        return max_abs_diff(fourier_matrix(2), scale(ComplexMatrix::from_rows({{1, 1}, {1, -1}}), r2));
    });
    run.deviation("fourier N=4 matrix", kMatrixTol, [&] {
        auto expected = half({{1, 1, 1, 1}, {1, -i, -1, i}, {1, -1, 1, -1}, {1, i, -1, -i}});
        return max_abs_diff(fourier_matrix(4), expected);
    });

    // Position and momentum, N = 2 and N = 4.
    run.deviation("position N=2 matrices", kMatrixTol, [&] {
        return max_dev_effects(position_observable(2), {ComplexMatrix::diagonal({1, 0}), ComplexMatrix::diagonal({0, 1})});
    });
    run.deviation("momentum N=2 matrices", kMatrixTol, [&] {
        return max_dev_effects(momentum_observable(2), {half({{1, 1}, {1, 1}}), half({{1, -1}, {-1, 1}})});
    });
    run.deviation("position N=4 matrices", kMatrixTol, [&] {
        return max_dev_effects(
            position_observable(4),
            {ComplexMatrix::diagonal({1, 0, 0, 0}), ComplexMatrix::diagonal({0, 1, 0, 0}),
             ComplexMatrix::diagonal({0, 0, 1, 0}), ComplexMatrix::diagonal({0, 0, 0, 1})});
    });
    run.deviation("momentum N=4 matrices", kMatrixTol, [&] {
        return max_dev_effects(
            momentum_observable(4),
            {quarter({{1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}}),
             quarter({{1, i, -1, -i}, {-i, 1, i, -1}, {-1, -i, 1, i}, {i, -1, -i, 1}}),
             quarter({{1, -1, 1, -1}, {-1, 1, -1, 1}, {1, -1, 1, -1}, {-1, 1, -1, 1}}),
             quarter({{1, -i, -1, i}, {i, 1, -i, -1}, {-1, i, 1, -i}, {-i, -1, i, 1}})});
    });

    // Atomic absorption and the 1/N transition probabilities.
    run.deviation("tr(Q0 P0) = 1/2 for N=2", kMatrixTol, [&] {
        auto pair = fourier_pair(2);
        return std::abs(trace(pair.position.effect(0).matrix() * pair.momentum.effect(0).matrix()) - 0.5);
    });
    run.deviation("Q0 o P0 = Q0/2 for N=2", kMatrixTol, [&] {
        auto pair = fourier_pair(2);
        auto prod = seq_product(pair.position.effect(0), pair.momentum.effect(0));
        return max_abs_diff(prod.matrix(), scale(pair.position.effect(0).matrix(), 0.5));
    });
    run.deviation("tr(rho P0) = 1/2 for rho = Q0, N=2", kMatrixTol, [&] {
        auto pair = fourier_pair(2);
        auto rho = State::create(pair.position.effect(0).matrix());
        return std::abs(occurrence_probability(rho, pair.momentum.effect(0)) - 0.5);
    });
    run.deviation("Q o P for N=2 is {Q0/2, Q0/2, Q1/2, Q1/2}", kMatrixTol, [&] {
        auto pair = fourier_pair(2);
        auto q0 = scale(pair.position.effect(0).matrix(), 0.5);
        auto q1 = scale(pair.position.effect(1).matrix(), 0.5);
        return max_dev_effects(obs_seq_product(pair.position, pair.momentum), {q0, q0, q1, q1});
    });
    run.deviation("distribution of P in rho = Q0, N=4, is uniform", kMatrixTol, [&] {
        auto pair = fourier_pair(4);
        auto dist = distribution(State::create(pair.position.effect(0).matrix()), pair.momentum);
        double dev = 0.0;
        for (double p : dist.probabilities) {
            dev = std::max(dev, std::abs(p - 0.25));
        }
        return dev;
    });
    run.deviation("Q_j o P_k = Q_j/N and P_j o Q_k = P_j/N, N=2..16", 1e-10, [&] {
        double dev = 0.0;
        for (std::size_t n = 2; n <= 16; n++) {
            auto pair = fourier_pair(n);
            double inv = 1.0 / static_cast<double>(n);
            for (std::size_t j = 0; j < n; j++) {
                for (std::size_t k = 0; k < n; k++) {
                    dev = std::max(dev, max_abs_diff(seq_product(pair.position.effect(j), pair.momentum.effect(k)).matrix(),
                                                     scale(pair.position.effect(j).matrix(), inv)));
                    dev = std::max(dev, max_abs_diff(seq_product(pair.momentum.effect(j), pair.position.effect(k)).matrix(),
                                                     scale(pair.momentum.effect(j).matrix(), inv)));
                }
            }
        }
        return dev;
    });
    run.deviation("(P|Q) = (Q|P) = I/N for N=2,4", 1e-10, [&] {
        double dev = 0.0;
        for (std::size_t n : {2u, 4u}) {
            auto pair = fourier_pair(n);
            auto ident = scalar_identity(n, 1.0 / static_cast<double>(n));
            for (const auto &cond : {conditioned(pair.momentum, pair.position), conditioned(pair.position, pair.momentum)}) {
                for (const auto &e : cond.effects()) {
                    dev = std::max(dev, max_abs_diff(e.matrix(), ident));
                }
            }
        }
        return dev;
    });
    run.deviation("brute trace table of (Q, P), N=4, is all 1/4", kMatrixTol, [&] {
        auto pair = fourier_pair(4);
        double dev = 0.0;
        for (const auto &row : brute_trace_table(pair.position, pair.momentum)) {
            for (double t : row) {
                dev = std::max(dev, std::abs(t - 0.25));
            }
        }
        return dev;
    });
    run.expect("(Q, P) are MU and value-complementary, N=2..16", default_tol(16), [&](double tol, double &dev, std::string &) {
        bool ok = true;
        for (std::size_t n = 2; n <= 16; n++) {
            auto pair = fourier_pair(n);
            double t = tol_override.value_or(default_tol(n));
            (void)tol;
            auto mu = check_mu(pair.position, pair.momentum, t);
            auto vc = check_value_complementary(pair.position, pair.momentum, t);
            dev = std::max({dev, mu.max_deviation, vc.max_deviation});
            ok = ok && mu.holds && vc.holds;
        }
        return ok;
    });
    run.expect("(Q, P), N=4: all five predicates hold", default_tol(4), [&](double tol, double &dev, std::string &) {
        auto pair = fourier_pair(4);
        auto report = classify_pair(pair.position, pair.momentum, tol);
        dev = std::max({report.mu->max_deviation, report.condition1->max_deviation, report.condition2->max_deviation,
                        report.value_complementary->max_deviation, report.generalized_mu->max_deviation});
        return report.mu->holds && report.condition1->holds && report.condition2->holds &&
               report.value_complementary->holds && report.generalized_mu->holds;
    });

    // Coarse-grainings of N = 4.
    const auto q_halves = {ComplexMatrix::diagonal({1, 1, 0, 0}), ComplexMatrix::diagonal({0, 0, 1, 1})};
    const auto p_parity = {half({{1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}}),
                           half({{1, 0, -1, 0}, {0, 1, 0, -1}, {-1, 0, 1, 0}, {0, -1, 0, 1}})};
    const auto p_adjacent = {quarter({{2, 1.0 + i, 0, 1.0 - i}, {1.0 - i, 2, 1.0 + i, 0}, {0, 1.0 - i, 2, 1.0 + i}, {1.0 + i, 0, 1.0 - i, 2}}),
                             quarter({{2, -1.0 - i, 0, -1.0 + i}, {-1.0 + i, 2, -1.0 - i, 0}, {0, -1.0 + i, 2, -1.0 - i}, {-1.0 - i, 0, -1.0 + i, 2}})};

    run.deviation("Q' = {Q0+Q1, Q2+Q3} matrices", kMatrixTol, [&] {
        return max_dev_effects(example_partitions().q_halves, q_halves);
    });
    run.deviation("P' = {P0+P2, P1+P3} matrices", kMatrixTol, [&] {
        return max_dev_effects(example_partitions().p_parity, p_parity);
    });
    run.deviation("P'' = {P0+P1, P2+P3} matrices", kMatrixTol, [&] {
        return max_dev_effects(example_partitions().p_adjacent, p_adjacent);
    });
    run.expect("P''0 validates as an effect", kMatrixTol, [&](double tol, double &, std::string &) {
        Effect::create(*p_adjacent.begin(), tol);
        return true;
    });
    run.deviation("complement(P'0) = P'1", kMatrixTol, [&] {
        auto ex = example_partitions();
        return max_abs_diff(complement(ex.p_parity.effect(0)).matrix(), ex.p_parity.effect(1).matrix());
    });
    run.expect("Q'0 is sharp but not atomic", kEigenTol, [&](double tol, double &, std::string &) {
        auto ex = example_partitions();
        return is_sharp(ex.q_halves.effect(0), tol) && !is_atomic(ex.q_halves.effect(0), tol);
    });
    run.deviation("Q'_j o P'_k = Q'_j/2 and P'_k o Q'_j = P'_k/2", kMatrixTol, [&] {
        auto ex = example_partitions();
        double dev = 0.0;
        for (std::size_t j = 0; j < 2; j++) {
            for (std::size_t k = 0; k < 2; k++) {
                const auto &qj = ex.q_halves.effect(j);
                const auto &pk = ex.p_parity.effect(k);
                dev = std::max(dev, max_abs_diff(seq_product(qj, pk).matrix(), scale(qj.matrix(), 0.5)));
                dev = std::max(dev, max_abs_diff(seq_product(pk, qj).matrix(), scale(pk.matrix(), 0.5)));
            }
        }
        return dev;
    });
    run.expect("(Q', P'): condition1, condition2, value-complementary, generalized MU hold", default_tol(4),
               [&](double tol, double &dev, std::string &) {
                   auto ex = example_partitions();
                   auto report = classify_pair(ex.q_halves, ex.p_parity, tol);
                   dev = std::max({report.condition1->max_deviation, report.condition2->max_deviation,
                                   report.value_complementary->max_deviation, report.generalized_mu->max_deviation});
                   return !report.mu && report.condition1->holds && report.condition2->holds &&
                          report.value_complementary->holds && report.generalized_mu->holds;
               });
    run.expect("Example 5 fiber sizes (2,2)x(2,2) give constant 4", 0.0, [&](double, double &, std::string &) {
        auto q = position_observable(4);
        auto f = PartitionMap::from_fibers(q.outcomes(), {{"0", "1"}, {"2", "3"}});
        auto g = PartitionMap::from_fibers(q.outcomes(), {{"0", "2"}, {"1", "3"}});
        auto v = check_partition_criterion(f, g);
        return v.holds && v.constant == 4u;
    });

    run.deviation("Q'0 o P''0 printed matrix", kMatrixTol, [&] {
        auto ex = example_partitions();
        auto expected = quarter({{2, 1.0 + i, 0, 0}, {1.0 - i, 2, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
        return max_abs_diff(seq_product(ex.q_halves.effect(0), ex.p_adjacent.effect(0)).matrix(), expected);
    });
    run.expect("(Q', P'') fails condition1 and condition2", default_tol(4), [&](double tol, double &dev, std::string &) {
        auto ex = example_partitions();
        auto c1 = check_condition1(ex.q_halves, ex.p_adjacent, tol);
        auto c2 = check_condition2(ex.q_halves, ex.p_adjacent, tol);
        dev = std::min(c1.max_deviation, c2.max_deviation);
        return !c1.holds && !c2.holds;
    });
    run.deviation("(Q', P'') not value-complementary; witness (1,1,0,0)/sqrt2 gives 3/4", kMatrixTol, [&] {
        auto ex = example_partitions();
        auto vc = check_value_complementary(ex.q_halves, ex.p_adjacent, default_tol(4));
        if (vc.holds || !vc.witness || !vc.witness->state) {
            raise(ErrorCode::InternalInconsistency, "decider did not reject with a witness");
        }
        ComplexVector psi(4);
        psi << r2, r2, 0, 0;
        Complex overlap = vc.witness->state->dot(psi);
        double direction = 1.0 - std::abs(overlap);
        return std::max(direction, std::abs(vc.witness->observed - 0.75));
    });
    run.deviation("sampler with injected witness reaches 3/4", kMatrixTol, [&] {
        auto ex = example_partitions();
        ComplexVector psi(4);
        psi << r2, r2, 0, 0;
        auto result = mc_value_complementarity(ex.q_halves, ex.p_adjacent, 100, seed, default_tol(4), {psi});
        if (!result.injected_witness || result.max_deviation < 0.25 - kMatrixTol) {
            raise(ErrorCode::InternalInconsistency, "sampler missed the injected deviation");
        }
        return std::abs(result.injected_witness->observed - 0.75);
    });
    run.expect("(Q', P'') are generalized MU with alpha = 1", default_tol(4), [&](double tol, double &dev, std::string &) {
        auto ex = example_partitions();
        auto v = check_generalized_mu(ex.q_halves, ex.p_adjacent, tol);
        dev = v.max_deviation;
        return v.holds && forced_alpha(ex.q_halves, ex.p_adjacent) == 1.0;
    });
    run.expect("(Q', P''): only generalized MU holds", default_tol(4), [&](double tol, double &dev, std::string &) {
        auto ex = example_partitions();
        auto report = classify_pair(ex.q_halves, ex.p_adjacent, tol);
        dev = report.generalized_mu->max_deviation;
        return report.generalized_mu->holds && !report.condition1->holds && !report.condition2->holds &&
               !report.value_complementary->holds && report.alpha == 1.0;
    });
    run.expect("(P''|Q') is not sharp", kEigenTol, [&](double tol, double &, std::string &) {
        auto ex = example_partitions();
        return !is_sharp(conditioned(ex.p_adjacent, ex.q_halves), tol);
    });

    // Trivial and unsharp unbiased observables.
    run.expect("{I/3, I/3, I/3} validates; trivial pairs satisfy condition2", default_tol(3),
               [&](double tol, double &dev, std::string &) {
                   auto third = scalar_identity(3, 1.0 / 3.0);
                   auto a = Observable::create(3, numbered_labels(3), {third, third, third}, tol);
                   auto b = Observable::create(3, numbered_labels(2), {scalar_identity(3, 0.5), scalar_identity(3, 0.5)}, tol);
                   auto v = check_condition2(a, b, tol);
                   dev = v.max_deviation;
                   return v.holds && check_trivial(a, tol);
               });
    run.expect("{I/d x d} with equal-trace unsharp B: generalized MU, alpha = a/d, B not trivial", default_tol(3),
               [&](double tol, double &dev, std::string &) {
                   const double eps = 0.1;
                   auto third = scalar_identity(3, 1.0 / 3.0);
                   auto a = Observable::create(3, numbered_labels(3), {third, third, third}, tol);
                   auto b = Observable::create(3, numbered_labels(3),
                                               {third + scale(ComplexMatrix::diagonal({1, -1, 0}), eps),
                                                third + scale(ComplexMatrix::diagonal({0, 1, -1}), eps),
                                                third + scale(ComplexMatrix::diagonal({-1, 0, 1}), eps)},
                                               tol);
                   double a_trace = trace(b.effect(0).matrix()).real();
                   auto v = check_generalized_mu(a, b, tol);
                   dev = std::max(v.max_deviation, std::abs(forced_alpha(a, b) - a_trace / 3.0));
                   return v.holds && dev <= tol && !check_trivial(b, tol) && !is_sharp(b);
               });

    run.expect("fiber criterion agrees with generalized MU on all 225 partition pairs, N=4", default_tol(4),
               [&](double tol, double &dev, std::string &detail) {
                   auto pair = fourier_pair(4);
                   auto partitions = set_partitions(4);
                   std::size_t disagreements = 0;
                   for (const auto &fb : partitions) {
                       auto f = partition_from_blocks(pair.position.outcomes(), fb);
                       auto fq = coarse_grain(pair.position, f);
                       for (const auto &gb : partitions) {
                           auto g = partition_from_blocks(pair.momentum.outcomes(), gb);
                           auto crit = check_partition_criterion(f, g);
                           auto gmu = check_generalized_mu(fq, coarse_grain(pair.momentum, g), tol);
                           if (gmu.holds) {
                               dev = std::max(dev, gmu.max_deviation);
                           }
                           disagreements += crit.holds != gmu.holds;
                       }
                   }
                   if (disagreements != 0) {
                       detail = std::to_string(disagreements) + " disagreeing partition pairs";
                   }
                   return partitions.size() == 15 && disagreements == 0;
               });

    return run.take();
}

}  // namespace mubkit
