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

#include "mubkit/fourier.h"

#include <cmath>
#include <numbers>

#include "mubkit/error.h"

namespace mubkit {

namespace {

void require_positive(std::size_t n, const char *what) {
    if (n == 0) {
        raise(ErrorCode::InvalidDim, std::string(what) + ": N must be at least 1");
    }
}

// exp(-2 pi i k / n) for 0 <= k < n. Quarter turns are returned exactly.
Complex root_of_unity(std::size_t k, std::size_t n) {
    if ((4 * k) % n == 0) {
        switch ((4 * k) / n) {
            case 0:
                return {1.0, 0.0};
            case 1:
                return {0.0, -1.0};
            case 2:
                return {-1.0, 0.0};
            case 3:
                return {0.0, 1.0};
        }
    }
    double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    return std::polar(1.0, angle);
}

}  // namespace

ComplexMatrix fourier_matrix(std::size_t n) {
    require_positive(n, "fourier_matrix");
    auto d = static_cast<Eigen::Index>(n);
    double norm = 1.0 / std::sqrt(static_cast<double>(n));
    Eigen::MatrixXcd f(d, d);
    for (std::size_t row = 0; row < n; row++) {
        for (std::size_t col = 0; col < n; col++) {
            f(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
                norm * root_of_unity((row * col) % n, n);
        }
    }
    return ComplexMatrix(std::move(f));
}

Observable position_observable(std::size_t n) {
    require_positive(n, "position_observable");
    std::vector<ComplexMatrix> effects;
    effects.reserve(n);
    for (std::size_t j = 0; j < n; j++) {
        std::vector<double> diag(n, 0.0);
        diag[j] = 1.0;
        effects.push_back(ComplexMatrix::diagonal(diag));
    }
    return Observable::create(n, numbered_labels(n), effects);
}

Observable momentum_observable(std::size_t n) {
    require_positive(n, "momentum_observable");
    ComplexMatrix f = fourier_matrix(n);
    std::vector<ComplexMatrix> effects;
    effects.reserve(n);
    for (std::size_t j = 0; j < n; j++) {
        effects.push_back(ComplexMatrix::outer(f.eigen().col(static_cast<Eigen::Index>(j))));
    }
    return Observable::create(n, numbered_labels(n), effects);
}

FourierBasisPair fourier_pair(std::size_t n) {
    return FourierBasisPair{n, fourier_matrix(n), position_observable(n), momentum_observable(n)};
}

ExamplePartitions example_partitions() {
    Observable q = position_observable(4);
    Observable p = momentum_observable(4);
    auto halves = PartitionMap::from_fibers(q.outcomes(), {{"0", "1"}, {"2", "3"}});
    auto parity = PartitionMap::from_fibers(p.outcomes(), {{"0", "2"}, {"1", "3"}});
    auto adjacent = PartitionMap::from_fibers(p.outcomes(), {{"0", "1"}, {"2", "3"}});
    return ExamplePartitions{coarse_grain(q, halves), coarse_grain(p, parity), coarse_grain(p, adjacent)};
}

}  // namespace mubkit
