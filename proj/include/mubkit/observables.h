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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mubkit/effects.h"

namespace mubkit {

/// Separator between the two components of a sequential-product outcome.
inline constexpr std::string_view kPairSeparator = "⊗";

std::string pair_label(std::string_view x, std::string_view y);
/// "0", "1", ..., "n-1"
std::vector<std::string> numbered_labels(std::size_t n);

/// A finite family of effects {A_x} summing to the identity, indexed by
/// distinct string labels in a fixed order.
class Observable {
   public:
    /// Validates every matrix as an effect and the sum against I.
    /// Throws NotAnEffect (naming the label), SumNotIdentity, DuplicateLabel,
    /// DimMismatch or InvalidParams (no outcomes, or label/matrix count differ).
    static Observable create(
        std::size_t dim,
        std::vector<std::string> outcomes,
        const std::vector<ComplexMatrix> &matrices,
        double tol);
    static Observable create(
        std::size_t dim, std::vector<std::string> outcomes, const std::vector<ComplexMatrix> &matrices) {
        return create(dim, std::move(outcomes), matrices, default_tol(dim));
    }
    /// For effects that are already validated; only the labels and the sum
    /// are checked, the latter at `sum_tol`.
    static Observable from_effects(
        std::vector<std::string> outcomes, std::vector<Effect> effects, double tol, double sum_tol);

    std::size_t dim() const noexcept {
        return dim_;
    }
    /// Number of outcomes.
    std::size_t size() const noexcept {
        return effects_.size();
    }
    const std::vector<std::string> &outcomes() const noexcept {
        return outcomes_;
    }
    const std::vector<Effect> &effects() const noexcept {
        return effects_;
    }
    const Effect &effect(std::size_t index) const {
        return effects_.at(index);
    }
    const std::string &label(std::size_t index) const {
        return outcomes_.at(index);
    }
    std::optional<std::size_t> index_of(std::string_view label) const;
    /// The tolerance the observable was validated with.
    double tolerance() const noexcept {
        return tol_;
    }

   private:
    Observable(std::size_t dim, std::vector<std::string> outcomes, std::vector<Effect> effects, double tol)
        : dim_(dim), outcomes_(std::move(outcomes)), effects_(std::move(effects)), tol_(tol) {
    }

    std::size_t dim_;
    std::vector<std::string> outcomes_;
    std::vector<Effect> effects_;
    double tol_;
};

/// A surjection from one outcome space onto another.
class PartitionMap {
   public:
    /// image[i] is the index in `target` that source[i] maps to.
    /// Throws BadPartition if the map is not total and surjective, or labels repeat.
    static PartitionMap create(
        std::vector<std::string> source, std::vector<std::string> target, std::vector<std::size_t> image);
    /// Each fiber lists the source labels mapped to one target; targets are
    /// labelled "0", "1", ... in fiber order. Fibers must be non-empty,
    /// disjoint and cover `source`.
    static PartitionMap from_fibers(
        std::vector<std::string> source, const std::vector<std::vector<std::string>> &fibers);
    static PartitionMap identity(std::vector<std::string> source);
    static PartitionMap constant(std::vector<std::string> source, std::string target_label = "0");

    const std::vector<std::string> &source() const noexcept {
        return source_;
    }
    const std::vector<std::string> &target() const noexcept {
        return target_;
    }
    std::size_t image(std::size_t source_index) const {
        return image_.at(source_index);
    }
    /// |f^{-1}(y)| for each target y, in target order.
    std::vector<std::size_t> fiber_sizes() const;
    /// Source indices of f^{-1}(y).
    std::vector<std::size_t> fiber(std::size_t target_index) const;

   private:
    PartitionMap(std::vector<std::string> source, std::vector<std::string> target, std::vector<std::size_t> image)
        : source_(std::move(source)), target_(std::move(target)), image_(std::move(image)) {
    }

    std::vector<std::string> source_;
    std::vector<std::string> target_;
    std::vector<std::size_t> image_;
};

/// Every effect is a projection / a rank-one projection.
bool is_sharp(const Observable &a, double tol = kEigenTol);
bool is_atomic(const Observable &a, double tol = kEigenTol);

struct Distribution {
    std::vector<std::string> outcomes;
    std::vector<double> probabilities;

    std::optional<double> probability(std::string_view label) const;
};

/// x -> tr(rho A_x). Throws DimMismatch.
Distribution distribution(const State &rho, const Observable &a);

/// {A_x o B_y} over Omega_A x Omega_B, x-major. Throws DimMismatch.
Observable obs_seq_product(const Observable &a, const Observable &b);

/// (B|A)_y = sum_x A_x o B_y. Throws DimMismatch.
Observable conditioned(const Observable &b, const Observable &a);

/// f(A)_y = sum of A_x over f(x) = y. Throws LabelMismatch unless f.source() equals A's outcomes.
Observable coarse_grain(const Observable &a, const PartitionMap &f);

struct CoexistenceWitness {
    /// A o B.
    Observable joint;
    /// (x, y) -> x; coarse_grain(joint, first) reproduces A.
    PartitionMap first;
    /// (x, y) -> y; coarse_grain(joint, second) reproduces (B|A).
    PartitionMap second;
};

/// Exhibits A and (B|A) as parts of A o B. Throws DimMismatch.
CoexistenceWitness coexistence_witness(const Observable &a, const Observable &b);

/// {U A_x U*}. U must be unitary within the observable's tolerance; throws
/// DimMismatch or InvalidParams.
Observable conjugate(const Observable &a, const ComplexMatrix &unitary);

/// All set partitions of {0, ..., n-1} as restricted growth strings: entry i
/// is the block of element i, blocks numbered in order of first appearance.
/// There are Bell(n) of them.
std::vector<std::vector<std::size_t>> set_partitions(std::size_t n);

/// The PartitionMap whose fibers are the blocks of a restricted growth string.
PartitionMap partition_from_blocks(std::vector<std::string> source, const std::vector<std::size_t> &blocks);

}  // namespace mubkit
