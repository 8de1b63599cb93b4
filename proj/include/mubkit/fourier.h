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

#include "mubkit/observables.h"

namespace mubkit {

/// Unitary with entry (m, n) = exp(-2 pi i m n / N) / sqrt(N). Throws InvalidDim for N = 0.
ComplexMatrix fourier_matrix(std::size_t n);

/// Q_j = |e_j><e_j| on C^N, labelled "0".."N-1".
Observable position_observable(std::size_t n);

/// P_j = F Q_j F* = |F e_j><F e_j|, labelled "0".."N-1".
Observable momentum_observable(std::size_t n);

struct FourierBasisPair {
    std::size_t dim;
    ComplexMatrix fourier;
    Observable position;
    Observable momentum;
};

FourierBasisPair fourier_pair(std::size_t n);

/// Two-outcome coarse-grainings of the N = 4 position and momentum observables:
///   q_halves:    {Q0 + Q1, Q2 + Q3}
///   p_parity:    {P0 + P2, P1 + P3}
///   p_adjacent:  {P0 + P1, P2 + P3}
/// (q_halves, p_parity) satisfies the sequential-product attenuation
/// conditions; (q_halves, p_adjacent) is unbiased in trace only.
struct ExamplePartitions {
    Observable q_halves;
    Observable p_parity;
    Observable p_adjacent;
};

ExamplePartitions example_partitions();

}  // namespace mubkit
