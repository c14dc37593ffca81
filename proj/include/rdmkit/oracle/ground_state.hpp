// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rdmkit/core/rdm.hpp"
#include "rdmkit/oracle/hamiltonian.hpp"

namespace rdmkit {

struct GroundState {
    double energy = 0.0;
    VectorXr vector;  // real amplitudes over the sector basis
};

namespace detail {

/// Deterministic sign convention for (possibly degenerate) eigenvectors:
/// first amplitude of magnitude above tol is made positive.
inline void fix_sign(VectorXr& v, double tol = 1e-12) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > tol) {
            if (v(i) < 0.0) v = -v;
            return;
        }
    }
}

/// Lanczos with full reorthogonalization for the lowest eigenpair.
/// Deterministic start vector (normalized all-ones).
inline GroundState lanczos_lowest(const SparseMatrixR& h, std::size_t max_iter, double tol) {
    const Eigen::Index dim = h.rows();
    std::vector<VectorXr> basis;
    VectorXr q = VectorXr::Ones(dim);
    q.normalize();
    basis.push_back(q);
    std::vector<double> alpha, beta;
    GroundState best;
    for (std::size_t it = 0; it < max_iter; ++it) {
        VectorXr w = h * basis.back();
        const double a = basis.back().dot(w);
        alpha.push_back(a);
        // Full reorthogonalization keeps the basis numerically orthonormal.
        for (const auto& b : basis) w -= b.dot(w) * b;
        for (const auto& b : basis) w -= b.dot(w) * b;
        const double bnorm = w.norm();

        const auto k = static_cast<Eigen::Index>(alpha.size());
        MatrixXr t = MatrixXr::Zero(k, k);
        for (Eigen::Index i = 0; i < k; ++i) {
            t(i, i) = alpha[static_cast<std::size_t>(i)];
            if (i + 1 < k) {
                t(i, i + 1) = beta[static_cast<std::size_t>(i)];
                t(i + 1, i) = beta[static_cast<std::size_t>(i)];
            }
        }
        Eigen::SelfAdjointEigenSolver<MatrixXr> es(t);
        VectorXr ritz = VectorXr::Zero(dim);
        for (Eigen::Index i = 0; i < k; ++i)
            ritz += es.eigenvectors()(i, 0) * basis[static_cast<std::size_t>(i)];
        ritz.normalize();
        best.energy = es.eigenvalues()(0);
        best.vector = ritz;
        const double residual = (h * ritz - best.energy * ritz).norm();
        if (residual <= tol) {
            fix_sign(best.vector);
            return best;
        }
        if (bnorm < 1e-14) break;  // invariant subspace exhausted
        beta.push_back(bnorm);
        basis.push_back(w / bnorm);
    }
    const double residual = (h * best.vector - best.energy * best.vector).norm();
    if (residual > tol) throw std::runtime_error("ground_state: Lanczos did not converge");
    fix_sign(best.vector);
    return best;
}

}  // namespace detail

/// Lowest eigenpair of a symmetric sector Hamiltonian.  Dense eigensolve up
/// to dense_cutoff rows, Lanczos with full reorthogonalization above.
/// Residual guarantee ||Hv - Ev|| <= 1e-9 (tighter in the dense path).
[[nodiscard]] inline GroundState ground_state(const SparseMatrixR& h,
                                              std::size_t dense_cutoff = 2000,
                                              double tol = 1e-10) {
    if (h.rows() != h.cols() || h.rows() == 0)
        throw std::invalid_argument("ground_state: bad dimension");
    if (static_cast<std::size_t>(h.rows()) <= dense_cutoff) {
        const MatrixXr dense(h);
        Eigen::SelfAdjointEigenSolver<MatrixXr> es(dense);
        GroundState g;
        g.energy = es.eigenvalues()(0);
        g.vector = es.eigenvectors().col(0);
        detail::fix_sign(g.vector);
        return g;
    }
    return detail::lanczos_lowest(h, 4 * static_cast<std::size_t>(h.rows()), tol);
}

}  // namespace rdmkit
