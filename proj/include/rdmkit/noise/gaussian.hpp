// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

#include "rdmkit/core/rdm.hpp"

namespace rdmkit {

/// Per-element additive Gaussian corruption, the stand-in for finite shot
/// statistics.  Every stored element gets its own draw, including redundant
/// symmetry partners, so the corrupted matrix is neither Hermitian nor
/// antisymmetric; restoring that structure is the projectors' job.
struct GaussianNoiseModel {
    double epsilon = 0.0;  // per-element standard deviation
    std::uint64_t seed = 0;
};

[[nodiscard]] inline TwoRDM corrupt_gaussian(const TwoRDM& d2, const GaussianNoiseModel& model) {
    if (model.epsilon < 0.0) throw std::invalid_argument("corrupt_gaussian: negative epsilon");
    TwoRDM out = d2;
    if (model.epsilon == 0.0) return out;
    std::mt19937_64 rng(model.seed);
    std::normal_distribution<double> draw(0.0, model.epsilon);
    for (Eigen::Index i = 0; i < out.mat.rows(); ++i)
        for (Eigen::Index j = 0; j < out.mat.cols(); ++j) out.mat(i, j) += draw(rng);
    return out;
}

}  // namespace rdmkit
