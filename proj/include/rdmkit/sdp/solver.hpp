// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rdmkit/core/rdm.hpp"
#include "rdmkit/sdp/problem.hpp"

namespace rdmkit {

/// Eigenvalue split W = W+ + W- with W+ PSD, W- NSD, <W+, W-> = 0.
struct SplitParts {
    MatrixXr plus;
    MatrixXr minus;
};

[[nodiscard]] inline SplitParts split_projection(const MatrixXr& w) {
    Eigen::SelfAdjointEigenSolver<MatrixXr> es(0.5 * (w + w.transpose()));
    if (es.info() != Eigen::Success) throw std::runtime_error("split_projection: eig failed");
    const VectorXr lam = es.eigenvalues();
    const MatrixXr& v = es.eigenvectors();
    SplitParts out;
    out.plus = v * lam.cwiseMax(0.0).asDiagonal() * v.transpose();
    out.minus = v * lam.cwiseMin(0.0).asDiagonal() * v.transpose();
    return out;
}

enum class InnerSolver { automatic, cholesky, conjugate_gradient };

struct SolverConfig {
    double eps_outer = 1e-8;        // primal residual ||A svec(X) - b||_2
    double eps_inner = 1e-10;       // CG tolerance; must stay below eps_outer
    std::size_t max_outer = 5000;
    double sigma0 = 1.0;
    double sigma_min = 1e-4;
    double sigma_max = 1e6;
    double sigma_step = 1.1;        // divide on primal stagnation, multiply on dual dominance
    std::size_t stall_window = 50;  // iterations compared for stagnation
    double stall_ratio = 0.98;      // < 2% reduction over the window counts as stalled
    double dominance = 10.0;        // dual residual this many times the primal raises sigma
    InnerSolver inner = InnerSolver::automatic;
    std::size_t cholesky_row_limit = 20000;
};

struct SDPSolution {
    std::vector<MatrixXr> X;
    std::vector<MatrixXr> S;
    VectorXr y;
    double objective = 0.0;
    double dual_objective = 0.0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    bool used_cg = false;
    double sigma_final = 0.0;
    std::vector<double> primal_history;
};

/// Cholesky factor of A A^T with a backsolve health probe.  Rank-deficient
/// constraint sets (duplicated rows) fail the probe and route to CG.
class ConstraintFactor {
public:
    ConstraintFactor(const Eigen::SparseMatrix<double, Eigen::RowMajor>& a,
                     const SolverConfig& cfg) {
        const auto m = static_cast<std::size_t>(a.rows());
        normal_ = (a * Eigen::SparseMatrix<double>(a.transpose())).pruned();
        normal_.makeCompressed();
        want_cholesky_ = cfg.inner != InnerSolver::conjugate_gradient &&
                         (cfg.inner == InnerSolver::cholesky || m <= cfg.cholesky_row_limit);
        if (!want_cholesky_) return;
        llt_.compute(MatrixXr(normal_));
        healthy_ = llt_.info() == Eigen::Success;
        if (healthy_) {
            // A singular product can slip through LLT; probe with a known solution.
            const VectorXr probe = VectorXr::LinSpaced(static_cast<Eigen::Index>(m), 1.0, 2.0);
            const VectorXr rhs = normal_ * probe;
            const double scale = rhs.norm();
            healthy_ = (normal_ * llt_.solve(rhs) - rhs).norm() <=
                       1e-10 * (scale > 0 ? scale : 1.0);
        }
    }

    [[nodiscard]] bool cholesky_ok() const { return want_cholesky_ && healthy_; }

    [[nodiscard]] const Eigen::SparseMatrix<double>& normal_matrix() const { return normal_; }

    [[nodiscard]] VectorXr solve(const VectorXr& rhs) const {
        if (!cholesky_ok()) throw std::logic_error("ConstraintFactor: no healthy factor");
        return llt_.solve(rhs);
    }

private:
    Eigen::SparseMatrix<double> normal_;
    bool want_cholesky_ = false;
    bool healthy_ = false;
    Eigen::LLT<MatrixXr> llt_;
};

/// Boundary-point method for block SDPs.
///
/// One outer iteration solves A A^T y = A(C - S) + (b - A(X)) / sigma, forms
/// W = A^T y - C + X / sigma, splits it, and sets S = -W-, X = sigma W+.  The
/// iterates keep exact dual feasibility and complementarity, so the stopping
/// rule only watches the primal residual ||A svec(X) - b||.  The factorization
/// is computed once per instance and reused across solves, which makes
/// repeated projections with fresh right-hand sides cheap.
class BoundaryPointSolver {
public:
    explicit BoundaryPointSolver(SDPProblem problem, SolverConfig config = {})
        : prob_(std::move(problem)),
          cfg_(config),
          factor_(prob_.A, config),
          at_(prob_.A.transpose()) {
        if (cfg_.eps_inner >= cfg_.eps_outer)
            cfg_.eps_inner = cfg_.eps_outer / 100.0;  // keep the inner loop tighter
        csvec_ = svec_pack(prob_.C);
    }

    [[nodiscard]] const SDPProblem& problem() const { return prob_; }
    [[nodiscard]] bool cholesky_ok() const { return factor_.cholesky_ok(); }

    [[nodiscard]] SDPSolution solve() const { return solve(prob_.b); }

    /// Solves with a replacement right-hand side of the same shape.
    [[nodiscard]] SDPSolution solve(const VectorXr& b) const {
        if (b.size() != prob_.b.size())
            throw std::invalid_argument("BoundaryPointSolver: rhs length mismatch");
        const std::size_t nb = prob_.block_count();
        std::vector<MatrixXr> x(nb), s(nb);
        for (std::size_t k = 0; k < nb; ++k) {
            const auto d = static_cast<Eigen::Index>(prob_.block_dims[k]);
            x[k] = MatrixXr::Zero(d, d);
            s[k] = MatrixXr::Zero(d, d);
        }
        double sigma = cfg_.sigma0;
        SDPSolution out;
        out.used_cg = !factor_.cholesky_ok();
        out.primal_history.reserve(std::min<std::size_t>(cfg_.max_outer, 1 << 16));

        Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
        if (out.used_cg) {
            cg.compute(factor_.normal_matrix());
            cg.setTolerance(cfg_.eps_inner);
        }

        VectorXr xs = svec_pack(x);
        VectorXr ss = svec_pack(s);
        VectorXr y = VectorXr::Zero(b.size());
        for (std::size_t it = 0; it < cfg_.max_outer; ++it) {
            const VectorXr rhs = prob_.A * (csvec_ - ss) + (b - prob_.A * xs) / sigma;
            y = out.used_cg ? VectorXr(cg.solveWithGuess(rhs, y)) : factor_.solve(rhs);
            const VectorXr wv = at_ * y - csvec_ + xs / sigma;
            const std::vector<MatrixXr> w = svec_unpack(wv, prob_.block_dims);
            double dual_sq = 0.0;
            for (std::size_t k = 0; k < nb; ++k) {
                const SplitParts parts = split_projection(w[k]);
                s[k] = -parts.minus;
                // Dual slack stays exactly feasible; the residual tracks the
                // primal step W+ - X/sigma instead.
                dual_sq += (parts.plus - x[k] / sigma).squaredNorm();
                x[k] = sigma * parts.plus;
            }
            xs = svec_pack(x);
            ss = svec_pack(s);
            out.primal_residual = (prob_.A * xs - b).norm();
            out.dual_residual = std::sqrt(dual_sq);
            out.primal_history.push_back(out.primal_residual);
            out.iterations = it + 1;
            if (out.primal_residual <= cfg_.eps_outer) {
                out.converged = true;
                break;
            }
            // The primal stall level scales with sigma and the dual residual
            // against it, so stagnation lowers sigma (one cut per window) and
            // a dominating dual raises it.  The pair self-corrects: whichever
            // residual is blocking progress pulls sigma toward its regime.
            if (cfg_.stall_window > 0 && (it + 1) % cfg_.stall_window == 0 &&
                out.primal_history.size() > cfg_.stall_window) {
                const double before =
                    out.primal_history[out.primal_history.size() - 1 - cfg_.stall_window];
                if (out.primal_residual > cfg_.stall_ratio * before) sigma /= cfg_.sigma_step;
            }
            if (out.dual_residual > cfg_.dominance * out.primal_residual)
                sigma *= cfg_.sigma_step;
            sigma = std::min(std::max(sigma, cfg_.sigma_min), cfg_.sigma_max);
        }
        out.X = std::move(x);
        out.S = std::move(s);
        out.y = std::move(y);
        out.objective = csvec_.dot(xs);
        out.dual_objective = b.dot(out.y);
        out.sigma_final = sigma;
        return out;
    }

private:
    SDPProblem prob_;
    SolverConfig cfg_;
    ConstraintFactor factor_;
    Eigen::SparseMatrix<double> at_;
    VectorXr csvec_;
};

/// One-call convenience wrapper.
[[nodiscard]] inline SDPSolution solve_boundary_point(const SDPProblem& p,
                                                      const SolverConfig& cfg = {}) {
    return BoundaryPointSolver(p, cfg).solve();
}

}  // namespace rdmkit
