// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

#include "rdmkit/core/rdm.hpp"

namespace rdmkit {
namespace detail {

template <typename MatT>
[[nodiscard]] MatT clip_at(const Eigen::SelfAdjointEigenSolver<MatT>& es, double mu) {
    return es.eigenvectors() *
           (es.eigenvalues().array() - mu).max(0.0).matrix().asDiagonal() *
           es.eigenvectors().adjoint();
}

template <typename MatT>
[[nodiscard]] MatT psd_project_impl(const MatT& a) {
    const MatT h = MatT(0.5 * (a + a.adjoint()));
    Eigen::SelfAdjointEigenSolver<MatT> es(h);
    if (es.info() != Eigen::Success) throw std::runtime_error("psd_project: eig failed");
    return clip_at(es, 0.0);
}

// Projection onto {X PSD, Tr X = target}: shift the spectrum by mu, clip, and
// bisect mu until the clipped sum hits the target.  The clipped trace is a
// continuous non-increasing function of mu, so the bracket below always
// contains the solution.
template <typename MatT>
[[nodiscard]] MatT fixed_trace_impl(const MatT& a, double target) {
    if (target < 0.0)
        throw std::invalid_argument("psd_project_fixed_trace: negative trace target");
    const MatT h = MatT(0.5 * (a + a.adjoint()));
    Eigen::SelfAdjointEigenSolver<MatT> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("psd_project_fixed_trace: eig failed");
    const VectorXr lam = es.eigenvalues();
    const auto d = static_cast<double>(lam.size());
    auto clipped = [&lam](double mu) { return (lam.array() - mu).max(0.0).sum(); };
    double lo = lam.minCoeff() - target / d - 1.0;  // clipped(lo) >= target + d
    double hi = lam.maxCoeff();                     // clipped(hi) = 0
    double mu = hi;
    for (int it = 0; it < 200; ++it) {
        mu = 0.5 * (lo + hi);
        const double f = clipped(mu);
        if (std::abs(f - target) <= 1e-13 * std::max(1.0, target)) break;
        (f > target ? lo : hi) = mu;
    }
    return clip_at(es, mu);
}

}  // namespace detail

/// Frobenius-nearest PSD matrix: Hermitian part, negative eigenvalues clipped.
[[nodiscard]] inline MatrixXc psd_project(const MatrixXc& a) {
    return detail::psd_project_impl(a);
}
[[nodiscard]] inline MatrixXr psd_project(const MatrixXr& a) {
    return detail::psd_project_impl(a);
}

/// Projection onto the PSD matrices of given trace (spectral shift-and-clip).
[[nodiscard]] inline MatrixXc psd_project_fixed_trace(const MatrixXc& a, double target_trace) {
    return detail::fixed_trace_impl(a, target_trace);
}
[[nodiscard]] inline MatrixXr psd_project_fixed_trace(const MatrixXr& a, double target_trace) {
    return detail::fixed_trace_impl(a, target_trace);
}

/// Half the nuclear norm of the Hermitian part of a - b.
[[nodiscard]] inline double trace_distance(const MatrixXc& a, const MatrixXc& b) {
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(hermitian_part(MatrixXc(a - b)),
                                               Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}
[[nodiscard]] inline double trace_distance(const MatrixXr& a, const MatrixXr& b) {
    Eigen::SelfAdjointEigenSolver<MatrixXr> es(MatrixXr(0.5 * (a - b + (a - b).transpose())),
                                               Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace rdmkit
