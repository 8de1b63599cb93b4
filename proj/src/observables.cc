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

#include "mubkit/observables.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "mubkit/error.h"

namespace mubkit {

namespace {

// Derived observables accumulate roundoff in their sums.
constexpr double kDerivedSlack = 10.0;

void require_unique(const std::vector<std::string> &labels, ErrorCode code, const char *what) {
    std::set<std::string_view> seen;
    for (const auto &label : labels) {
        if (!seen.insert(label).second) {
            raise(code, std::string(what) + ": duplicate label '" + label + "'");
        }
    }
}

void require_same_dim(const Observable &a, const Observable &b, const char *op) {
    if (a.dim() != b.dim()) {
        std::ostringstream ss;
        ss << op << ": observables of dimension " << a.dim() << " and " << b.dim();
        raise(ErrorCode::DimMismatch, ss.str());
    }
}

double derived_tol(const Observable &a, const Observable &b) {
    return std::max(a.tolerance(), b.tolerance());
}

}  // namespace

std::string pair_label(std::string_view x, std::string_view y) {
    std::string out;
    out.reserve(x.size() + kPairSeparator.size() + y.size());
    out.append(x).append(kPairSeparator).append(y);
    return out;
}

std::vector<std::string> numbered_labels(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t k = 0; k < n; k++) {
        labels.push_back(std::to_string(k));
    }
    return labels;
}

Observable Observable::create(
    std::size_t dim, std::vector<std::string> outcomes, const std::vector<ComplexMatrix> &matrices, double tol) {
    if (outcomes.empty()) {
        raise(ErrorCode::InvalidParams, "observable needs at least one outcome");
    }
    if (outcomes.size() != matrices.size()) {
        std::ostringstream ss;
        ss << outcomes.size() << " outcome labels but " << matrices.size() << " matrices";
        raise(ErrorCode::InvalidParams, ss.str());
    }
    require_unique(outcomes, ErrorCode::DuplicateLabel, "observable");
    std::vector<Effect> effects;
    effects.reserve(matrices.size());
    for (std::size_t k = 0; k < matrices.size(); k++) {
        if (matrices[k].dim() != dim) {
            std::ostringstream ss;
            ss << "effect '" << outcomes[k] << "' is " << matrices[k].dim() << "x" << matrices[k].dim()
               << ", expected dimension " << dim;
            raise(ErrorCode::DimMismatch, ss.str());
        }
        try {
            effects.push_back(Effect::create(matrices[k], tol));
        } catch (const Error &e) {
            raise(ErrorCode::NotAnEffect, "outcome '" + outcomes[k] + "': " + e.what());
        }
    }
    return from_effects(std::move(outcomes), std::move(effects), tol, tol);
}

Observable Observable::from_effects(
    std::vector<std::string> outcomes, std::vector<Effect> effects, double tol, double sum_tol) {
    if (effects.empty() || outcomes.size() != effects.size()) {
        raise(ErrorCode::InvalidParams, "observable needs one effect per outcome and at least one outcome");
    }
    require_unique(outcomes, ErrorCode::DuplicateLabel, "observable");
    std::size_t dim = effects.front().dim();
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (const auto &e : effects) {
        if (e.dim() != dim) {
            raise(ErrorCode::DimMismatch, "observable effects have different dimensions");
        }
        sum += e.matrix().eigen();
    }
    sum -= Eigen::MatrixXcd::Identity(sum.rows(), sum.cols());
    double defect = sum.cwiseAbs().maxCoeff();
    if (defect > sum_tol) {
        std::ostringstream ss;
        ss << "max |sum A_x - I| = " << defect << " exceeds tol " << sum_tol;
        raise(ErrorCode::SumNotIdentity, ss.str());
    }
    return Observable(dim, std::move(outcomes), std::move(effects), tol);
}

std::optional<std::size_t> Observable::index_of(std::string_view label) const {
    auto it = std::find(outcomes_.begin(), outcomes_.end(), label);
    if (it == outcomes_.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - outcomes_.begin());
}

PartitionMap PartitionMap::create(
    std::vector<std::string> source, std::vector<std::string> target, std::vector<std::size_t> image) {
    require_unique(source, ErrorCode::BadPartition, "partition source");
    require_unique(target, ErrorCode::BadPartition, "partition target");
    if (image.size() != source.size()) {
        raise(ErrorCode::BadPartition, "partition map is not total");
    }
    std::vector<bool> hit(target.size(), false);
    for (std::size_t t : image) {
        if (t >= target.size()) {
            raise(ErrorCode::BadPartition, "partition maps outside its target");
        }
        hit[t] = true;
    }
    for (std::size_t t = 0; t < target.size(); t++) {
        if (!hit[t]) {
            raise(ErrorCode::BadPartition, "partition is not surjective: nothing maps to '" + target[t] + "'");
        }
    }
    return PartitionMap(std::move(source), std::move(target), std::move(image));
}

PartitionMap PartitionMap::from_fibers(
    std::vector<std::string> source, const std::vector<std::vector<std::string>> &fibers) {
    constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
    std::vector<std::size_t> image(source.size(), kUnassigned);
    for (std::size_t t = 0; t < fibers.size(); t++) {
        if (fibers[t].empty()) {
            raise(ErrorCode::BadPartition, "empty fiber");
        }
        for (const auto &label : fibers[t]) {
            auto it = std::find(source.begin(), source.end(), label);
            if (it == source.end()) {
                raise(ErrorCode::BadPartition, "unknown outcome '" + label + "'");
            }
            auto &slot = image[static_cast<std::size_t>(it - source.begin())];
            if (slot != kUnassigned) {
                raise(ErrorCode::BadPartition, "outcome '" + label + "' appears in two fibers");
            }
            slot = t;
        }
    }
    for (std::size_t i = 0; i < source.size(); i++) {
        if (image[i] == kUnassigned) {
            raise(ErrorCode::BadPartition, "outcome '" + source[i] + "' is not covered");
        }
    }
    return create(std::move(source), numbered_labels(fibers.size()), std::move(image));
}

PartitionMap PartitionMap::identity(std::vector<std::string> source) {
    std::vector<std::size_t> image(source.size());
    for (std::size_t i = 0; i < image.size(); i++) {
        image[i] = i;
    }
    auto target = source;
    return create(std::move(source), std::move(target), std::move(image));
}

PartitionMap PartitionMap::constant(std::vector<std::string> source, std::string target_label) {
    std::vector<std::size_t> image(source.size(), 0);
    return create(std::move(source), {std::move(target_label)}, std::move(image));
}

std::vector<std::size_t> PartitionMap::fiber_sizes() const {
    std::vector<std::size_t> sizes(target_.size(), 0);
    for (std::size_t t : image_) {
        sizes[t]++;
    }
    return sizes;
}

std::vector<std::size_t> PartitionMap::fiber(std::size_t target_index) const {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < image_.size(); i++) {
        if (image_[i] == target_index) {
            members.push_back(i);
        }
    }
    return members;
}

bool is_sharp(const Observable &a, double tol) {
    return std::all_of(a.effects().begin(), a.effects().end(), [tol](const Effect &e) { return is_sharp(e, tol); });
}

bool is_atomic(const Observable &a, double tol) {
    return std::all_of(a.effects().begin(), a.effects().end(), [tol](const Effect &e) { return is_atomic(e, tol); });
}

std::optional<double> Distribution::probability(std::string_view label) const {
    auto it = std::find(outcomes.begin(), outcomes.end(), label);
    if (it == outcomes.end()) {
        return std::nullopt;
    }
    return probabilities[static_cast<std::size_t>(it - outcomes.begin())];
}

Distribution distribution(const State &rho, const Observable &a) {
    if (rho.dim() != a.dim()) {
        raise(ErrorCode::DimMismatch, "distribution: state and observable dimensions differ");
    }
    Distribution out{a.outcomes(), {}};
    out.probabilities.reserve(a.size());
    for (const auto &e : a.effects()) {
        out.probabilities.push_back(occurrence_probability(rho, e, kDerivedSlack * a.tolerance()));
    }
    return out;
}

Observable obs_seq_product(const Observable &a, const Observable &b) {
    require_same_dim(a, b, "obs_seq_product");
    std::vector<std::string> labels;
    std::vector<Effect> effects;
    labels.reserve(a.size() * b.size());
    effects.reserve(a.size() * b.size());
    for (std::size_t x = 0; x < a.size(); x++) {
        for (std::size_t y = 0; y < b.size(); y++) {
            labels.push_back(pair_label(a.label(x), b.label(y)));
            effects.push_back(seq_product(a.effect(x), b.effect(y)));
        }
    }
    double tol = derived_tol(a, b);
    return Observable::from_effects(std::move(labels), std::move(effects), tol, kDerivedSlack * tol);
}

Observable conditioned(const Observable &b, const Observable &a) {
    require_same_dim(a, b, "conditioned");
    std::vector<Effect> effects;
    effects.reserve(b.size());
    for (const auto &by : b.effects()) {
        Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(by.matrix().eigen().rows(), by.matrix().eigen().cols());
        for (const auto &ax : a.effects()) {
            sum += seq_product(ax, by).matrix().eigen();
        }
        effects.push_back(Effect::trusted(ComplexMatrix(std::move(sum))));
    }
    double tol = derived_tol(a, b);
    return Observable::from_effects(b.outcomes(), std::move(effects), tol, kDerivedSlack * tol);
}

Observable coarse_grain(const Observable &a, const PartitionMap &f) {
    if (f.source() != a.outcomes()) {
        raise(ErrorCode::LabelMismatch, "partition source does not match the observable's outcomes");
    }
    std::vector<Effect> effects;
    effects.reserve(f.target().size());
    for (std::size_t t = 0; t < f.target().size(); t++) {
        auto members = f.fiber(t);
        if (members.size() == 1) {
            effects.push_back(a.effect(members.front()));
            continue;
        }
        Eigen::MatrixXcd sum = a.effect(members.front()).matrix().eigen();
        for (std::size_t k = 1; k < members.size(); k++) {
            sum += a.effect(members[k]).matrix().eigen();
        }
        effects.push_back(Effect::trusted(ComplexMatrix(std::move(sum))));
    }
    return Observable::from_effects(f.target(), std::move(effects), a.tolerance(), kDerivedSlack * a.tolerance());
}

CoexistenceWitness coexistence_witness(const Observable &a, const Observable &b) {
    Observable joint = obs_seq_product(a, b);
    std::vector<std::size_t> to_first;
    std::vector<std::size_t> to_second;
    to_first.reserve(joint.size());
    to_second.reserve(joint.size());
    for (std::size_t x = 0; x < a.size(); x++) {
        for (std::size_t y = 0; y < b.size(); y++) {
            to_first.push_back(x);
            to_second.push_back(y);
        }
    }
    auto first = PartitionMap::create(joint.outcomes(), a.outcomes(), std::move(to_first));
    auto second = PartitionMap::create(joint.outcomes(), b.outcomes(), std::move(to_second));
    return CoexistenceWitness{std::move(joint), std::move(first), std::move(second)};
}

Observable conjugate(const Observable &a, const ComplexMatrix &unitary) {
    if (unitary.dim() != a.dim()) {
        raise(ErrorCode::DimMismatch, "conjugate: unitary and observable dimensions differ");
    }
    const auto &u = unitary.eigen();
    double defect = (u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
    if (defect > a.tolerance()) {
        raise(ErrorCode::InvalidParams, "conjugate: matrix is not unitary");
    }
    std::vector<Effect> effects;
    effects.reserve(a.size());
    for (const auto &e : a.effects()) {
        effects.push_back(Effect::trusted(ComplexMatrix(u * e.matrix().eigen() * u.adjoint())));
    }
    return Observable::from_effects(a.outcomes(), std::move(effects), a.tolerance(), kDerivedSlack * a.tolerance());
}

std::vector<std::vector<std::size_t>> set_partitions(std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    if (n == 0) {
        out.emplace_back();
        return out;
    }
    // Restricted growth strings: a[0] = 0, a[i] <= 1 + max(a[0..i-1]).
    std::vector<std::size_t> a(n, 0);
    std::vector<std::size_t> prefix_max(n, 0);
    while (true) {
        out.push_back(a);
        std::size_t i = n - 1;
        while (i > 0 && a[i] > prefix_max[i - 1]) {
            i--;
        }
        if (i == 0) {
            break;
        }
        a[i]++;
        prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
        for (std::size_t j = i + 1; j < n; j++) {
            a[j] = 0;
            prefix_max[j] = prefix_max[i];
        }
    }
    return out;
}

PartitionMap partition_from_blocks(std::vector<std::string> source, const std::vector<std::size_t> &blocks) {
    if (blocks.size() != source.size()) {
        raise(ErrorCode::BadPartition, "block assignment does not cover the outcome space");
    }
    std::size_t count = blocks.empty() ? 0 : *std::max_element(blocks.begin(), blocks.end()) + 1;
    return PartitionMap::create(std::move(source), numbered_labels(count), blocks);
}

}  // namespace mubkit
