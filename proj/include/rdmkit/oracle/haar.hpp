// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>

#include "rdmkit/core/rdm.hpp"

namespace rdmkit {

/// Haar-random unit vector of the given dimension: i.i.d. standard complex
/// Gaussian entries, normalized.  Gaussian isotropy makes the distribution
/// exactly uniform on the sphere.
[[nodiscard]] inline VectorXc sample_haar_state(std::size_t dim, std::mt19937_64& rng) {
    if (dim == 0) throw std::invalid_argument("sample_haar_state: dim == 0");
    std::normal_distribution<double> gauss(0.0, 1.0);
    VectorXc v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex{gauss(rng), gauss(rng)};
    const double norm = v.norm();
    if (norm == 0.0) return sample_haar_state(dim, rng);  // measure-zero retry
    return v / norm;
}

/// Ensemble-average 1-RDM over Haar-random states on m modes.  With no
/// particle restriction every mode is half filled; restricting to n
/// particles pins the diagonal at n/m.
[[nodiscard]] inline OneRDM haar_average_one_rdm(std::size_t m,
                                                 std::optional<std::size_t> particles = {}) {
    const double diag = particles ? double(*particles) / double(m) : 0.5;
    return OneRDM(diag * MatrixXc::Identity(m, m));
}

/// Ensemble-average 2-RDM in the half-scaled convention
/// [D2]^{ij}_{kl} = (1/2) <a+_i a+_j a_l a_k>.  Off-diagonal words average
/// to zero by phase symmetry; the surviving pair terms give
///   (1/8) (delta_ik delta_jl - delta_il delta_jk)          unrestricted,
///   n(n-1) / (2 m(m-1)) (same bracket)                     n-particle.
[[nodiscard]] inline TwoRDM haar_average_two_rdm_half(std::size_t m,
                                                      std::optional<std::size_t> particles = {}) {
    double scale = 0.125;
    if (particles) {
        const double n = double(*particles);
        scale = n * (n - 1.0) / (2.0 * double(m) * double(m - 1));
    }
    TwoRDM d2(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) continue;
            d2(i, j, i, j) = scale;
            d2(i, j, j, i) = -scale;
        }
    }
    return d2;
}

/// Closed-form ensemble averages, bundled.  The 2-RDM is in the half-scaled
/// convention of haar_average_two_rdm_half.
[[nodiscard]] inline std::pair<OneRDM, TwoRDM>
average_rdm_analytic(std::size_t m, std::optional<std::size_t> particles = {}) {
    return {haar_average_one_rdm(m, particles), haar_average_two_rdm_half(m, particles)};
}

}  // namespace rdmkit
