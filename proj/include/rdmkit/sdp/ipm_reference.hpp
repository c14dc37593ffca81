// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rdmkit/core/rdm.hpp"
#include "rdmkit/sdp/problem.hpp"

namespace rdmkit {

/// Feasible-start barrier method, used as an independent cross-check for the
/// boundary-point solver.  Minimizes <C, X> - mu * sum log det X_k over the
/// affine slice A svec(X) = b with damped Newton steps, shrinking mu until the
/// barrier gap mu * total_dim drops below gap_tol.  Requires a strictly
/// feasible starting point; it is a verification tool for small instances,
/// not a production path.
struct IpmConfig {
    double mu0 = 1.0;
    double mu_factor = 0.2;
    double gap_tol = 1e-11;
    double newton_tol = 1e-12;  // half squared Newton decrement
    std::size_t max_newton = 60;
};

struct IpmResult {
    std::vector<MatrixXr> X;
    double objective = 0.0;
    std::size_t newton_steps = 0;
    bool converged = false;
};

namespace detail {

[[nodiscard]] inline double block_log_det(const MatrixXr& x) {
    const Eigen::LLT<MatrixXr> llt(x);
    if (llt.info() != Eigen::Success) throw std::runtime_error("ipm: iterate left the cone");
    return 2.0 * MatrixXr(llt.matrixL()).diagonal().array().log().sum();
}

}  // namespace detail

[[nodiscard]] inline IpmResult ipm_solve(const SDPProblem& p, std::vector<MatrixXr> x0,
                                         const IpmConfig& cfg = {}) {
    const auto nvar = static_cast<Eigen::Index>(p.variable_count());
    const auto m = static_cast<Eigen::Index>(p.constraint_count());
    const VectorXr c = svec_pack(p.C);
    std::size_t total_dim = 0;
    for (const std::size_t d : p.block_dims) total_dim += d;

    std::vector<MatrixXr> x = std::move(x0);
    if ((p.A * svec_pack(x) - p.b).norm() > 1e-8)
        throw std::invalid_argument("ipm_solve: start point violates the constraints");

    IpmResult out;
    const MatrixXr adense = MatrixXr(p.A);
    double mu = cfg.mu0;
    while (true) {
        for (std::size_t step = 0; step < cfg.max_newton; ++step) {
            // Gradient c - mu svec(X^-1) and Hessian mu (X^-1 (.) X^-1) per block.
            std::vector<MatrixXr> xinv(p.block_count());
            for (std::size_t k = 0; k < p.block_count(); ++k)
                xinv[k] = x[k].llt().solve(
                    MatrixXr::Identity(x[k].rows(), x[k].cols()));
            const VectorXr grad = c - mu * svec_pack(xinv);

            MatrixXr hess = MatrixXr::Zero(nvar, nvar);
            for (std::size_t k = 0; k < p.block_count(); ++k) {
                const auto d = static_cast<Eigen::Index>(p.block_dims[k]);
                const auto off = static_cast<Eigen::Index>(p.block_offset(k));
                Eigen::Index col = 0;
                for (Eigen::Index j = 0; j < d; ++j)
                    for (Eigen::Index i = 0; i <= j; ++i, ++col) {
                        MatrixXr e = MatrixXr::Zero(d, d);
                        const double v = i == j ? 1.0 : 1.0 / std::sqrt(2.0);
                        e(i, j) = v;
                        e(j, i) = v;
                        const MatrixXr he = mu * xinv[k] * e * xinv[k];
                        Eigen::Index row = 0;
                        for (Eigen::Index jj = 0; jj < d; ++jj)
                            for (Eigen::Index ii = 0; ii <= jj; ++ii, ++row)
                                hess(off + row, off + col) =
                                    ii == jj ? he(ii, jj) : std::sqrt(2.0) * he(ii, jj);
                    }
            }

            // KKT system for the equality-constrained Newton step.
            MatrixXr kkt = MatrixXr::Zero(nvar + m, nvar + m);
            kkt.topLeftCorner(nvar, nvar) = hess;
            kkt.topRightCorner(nvar, m) = adense.transpose();
            kkt.bottomLeftCorner(m, nvar) = adense;
            VectorXr rhs(nvar + m);
            rhs.head(nvar) = -grad;
            rhs.tail(m).setZero();
            const VectorXr sol = kkt.partialPivLu().solve(rhs);
            const VectorXr dx = sol.head(nvar);
            out.newton_steps += 1;

            const double decrement_sq = dx.dot(hess * dx);
            if (0.5 * decrement_sq <= cfg.newton_tol) break;

            // Largest cone-preserving step, then a safeguarded damped step.
            const std::vector<MatrixXr> dblk = svec_unpack(dx, p.block_dims);
            double tmax = 1.0;
            for (std::size_t k = 0; k < p.block_count(); ++k) {
                const Eigen::LLT<MatrixXr> llt(x[k]);
                const MatrixXr l = llt.matrixL();
                const MatrixXr mres = l.triangularView<Eigen::Lower>().solve(
                    MatrixXr(l.triangularView<Eigen::Lower>()
                                 .solve(dblk[k])
                                 .transpose()));
                const double lmin =
                    Eigen::SelfAdjointEigenSolver<MatrixXr>(mres).eigenvalues().minCoeff();
                if (lmin < 0.0) tmax = std::min(tmax, -0.98 / lmin);
            }
            double t = std::min(1.0, tmax);
            auto barrier = [&](const std::vector<MatrixXr>& xx) {
                double f = c.dot(svec_pack(xx));
                for (const auto& blk : xx) f -= mu * detail::block_log_det(blk);
                return f;
            };
            const double f0 = barrier(x);
            std::vector<MatrixXr> xt = x;
            for (std::size_t half = 0; half < 40; ++half) {
                bool ok = true;
                for (std::size_t k = 0; k < p.block_count(); ++k) {
                    xt[k] = x[k] + t * dblk[k];
                    if (Eigen::LLT<MatrixXr>(xt[k]).info() != Eigen::Success) {
                        ok = false;
                        break;
                    }
                }
                if (ok && barrier(xt) < f0 + 1e-12) break;
                t *= 0.5;
            }
            x = xt;
        }
        if (mu * static_cast<double>(total_dim) <= cfg.gap_tol) {
            out.converged = true;
            break;
        }
        mu *= cfg.mu_factor;
    }
    out.objective = c.dot(svec_pack(x));
    out.X = std::move(x);
    return out;
}

}  // namespace rdmkit
