// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rdmkit/core/rdm.hpp"

namespace rdmkit {

struct SimplexOptions {
    double cost_tol = 1e-9;        // entering threshold on reduced costs
    double pivot_tol = 1e-10;      // smallest ratio-test denominator
    double degenerate_step = 1e-12;
    long max_iterations = -1;      // < 0 picks 200 + 40 * rows
    long refactor_interval = 1000;
    int bland_trigger = 50;        // degenerate pivots in a row before Bland
};

struct LpResult {
    VectorXr x;
    double objective = 0.0;
    double dual_objective = 0.0;
    double gap = 0.0;  // |primal - dual| / max(1, |primal|)
    double max_dual_infeasibility = 0.0;
    long iterations = 0;
    bool optimal = false;
    bool unbounded = false;
};

using SparseColumn = std::vector<std::pair<int, double>>;

/// Revised primal simplex for min c'x s.t. Ax = b, x >= 0, with A given by
/// sparse columns and an explicit dense basis inverse.  The caller supplies a
/// starting basis whose solution is feasible (the one-norm programs built on
/// top always have one: a signed slack per row).  Dantzig pricing, switching
/// to Bland's rule while degenerate pivots pile up; the eta-update of the
/// basis inverse is refreshed by full refactorization at a fixed cadence.
[[nodiscard]] inline LpResult solve_standard_form(const std::vector<SparseColumn>& cols,
                                                  const VectorXr& b, const VectorXr& c,
                                                  std::vector<int> basic,
                                                  const SimplexOptions& opt = {}) {
    using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const auto m = static_cast<std::size_t>(b.size());
    const auto n = cols.size();
    if (static_cast<std::size_t>(c.size()) != n)
        throw std::invalid_argument("solve_standard_form: cost length mismatch");
    if (basic.size() != m) throw std::invalid_argument("solve_standard_form: basis size mismatch");

    LpResult res;
    if (m == 0) {
        res.x = VectorXr::Zero(static_cast<Eigen::Index>(n));
        res.optimal = true;
        return res;
    }

    const long max_iter =
        opt.max_iterations >= 0 ? opt.max_iterations : 200 + 40 * static_cast<long>(m);

    std::vector<char> in_basis(n, 0);
    for (int j : basic) {
        if (j < 0 || static_cast<std::size_t>(j) >= n || in_basis[static_cast<std::size_t>(j)])
            throw std::invalid_argument("solve_standard_form: invalid starting basis");
        in_basis[static_cast<std::size_t>(j)] = 1;
    }

    RowMatrix binv(m, m);
    auto refactor = [&]() {
        MatrixXr B = MatrixXr::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
        for (std::size_t i = 0; i < m; ++i)
            for (const auto& [row, val] : cols[static_cast<std::size_t>(basic[i])])
                B(row, static_cast<Eigen::Index>(i)) = val;
        Eigen::FullPivLU<MatrixXr> lu(B);
        if (!lu.isInvertible())
            throw std::invalid_argument("solve_standard_form: singular basis");
        binv = lu.inverse();
    };
    refactor();
    VectorXr xb = binv * b;

    VectorXr cb(static_cast<Eigen::Index>(m));
    VectorXr y(static_cast<Eigen::Index>(m));
    VectorXr d(static_cast<Eigen::Index>(m));

    auto column_dot = [&](std::size_t j, const VectorXr& v) {
        double s = 0.0;
        for (const auto& [row, val] : cols[j]) s += val * v(row);
        return s;
    };

    int degenerate_streak = 0;
    bool bland = false;
    long since_refactor = 0;
    long iter = 0;
    for (; iter < max_iter; ++iter) {
        for (std::size_t i = 0; i < m; ++i) cb(static_cast<Eigen::Index>(i)) =
            c(static_cast<Eigen::Index>(basic[i]));
        y.noalias() = binv.transpose() * cb;

        int entering = -1;
        double best = -opt.cost_tol;
        for (std::size_t j = 0; j < n; ++j) {
            if (in_basis[j]) continue;
            const double rc = c(static_cast<Eigen::Index>(j)) - column_dot(j, y);
            if (rc < best) {
                best = rc;
                entering = static_cast<int>(j);
                if (bland) break;  // Bland: first improving index wins
            }
        }
        if (entering < 0) {
            res.optimal = true;
            break;
        }

        d.setZero();
        for (const auto& [row, val] : cols[static_cast<std::size_t>(entering)])
            d.noalias() += val * binv.col(row);

        int leave = -1;
        double theta = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double di = d(static_cast<Eigen::Index>(i));
            if (di <= opt.pivot_tol) continue;
            const double ratio = std::max(xb(static_cast<Eigen::Index>(i)), 0.0) / di;
            if (leave < 0 || ratio < theta - 1e-12 ||
                (ratio < theta + 1e-12 && basic[i] < basic[static_cast<std::size_t>(leave)])) {
                leave = static_cast<int>(i);
                theta = ratio;
            }
        }
        if (leave < 0) {
            res.unbounded = true;
            break;
        }

        // An unstable eta pivot poisons the inverse; refresh and retry once.
        if (std::abs(d(leave)) < 1e-7 && since_refactor > 0) {
            refactor();
            xb = binv * b;
            since_refactor = 0;
            --iter;
            continue;
        }

        if (theta <= opt.degenerate_step) {
            if (++degenerate_streak >= opt.bland_trigger) bland = true;
        } else {
            degenerate_streak = 0;
            bland = false;
        }

        xb.noalias() -= theta * d;
        xb(leave) = theta;
        in_basis[static_cast<std::size_t>(basic[static_cast<std::size_t>(leave)])] = 0;
        basic[static_cast<std::size_t>(leave)] = entering;
        in_basis[static_cast<std::size_t>(entering)] = 1;

        const double pivot = d(leave);
        binv.row(leave) /= pivot;
        for (std::size_t i = 0; i < m; ++i) {
            if (static_cast<int>(i) == leave) continue;
            const double di = d(static_cast<Eigen::Index>(i));
            if (di != 0.0) binv.row(static_cast<Eigen::Index>(i)) -= di * binv.row(leave);
        }

        if (++since_refactor >= opt.refactor_interval) {
            refactor();
            xb = binv * b;
            since_refactor = 0;
        }
    }
    res.iterations = iter;

    // Final diagnostics from the terminal basis, whatever stopped the loop.
    for (std::size_t i = 0; i < m; ++i)
        cb(static_cast<Eigen::Index>(i)) = c(static_cast<Eigen::Index>(basic[i]));
    y.noalias() = binv.transpose() * cb;
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (in_basis[j]) continue;
        const double rc = c(static_cast<Eigen::Index>(j)) - column_dot(j, y);
        if (-rc > worst) worst = -rc;
    }
    res.max_dual_infeasibility = worst;

    res.x = VectorXr::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < m; ++i)
        res.x(static_cast<Eigen::Index>(basic[i])) =
            std::max(xb(static_cast<Eigen::Index>(i)), 0.0);
    res.objective = c.dot(res.x);
    res.dual_objective = y.dot(b);
    res.gap = std::abs(res.objective - res.dual_objective) / std::max(1.0, std::abs(res.objective));
    return res;
}

struct IrlsResult {
    VectorXr beta;
    double objective = 0.0;
    long iterations = 0;
    bool converged = false;
};

/// Iteratively reweighted least squares for min sum_i weight_i |v_i - (A beta)_i|.
/// Used as the fallback when the simplex hits its iteration budget: every
/// iterate is feasible (beta is unconstrained), so the best one is returned.
[[nodiscard]] inline IrlsResult minimize_l1_irls(const MatrixXr& A, const VectorXr& v,
                                                 const VectorXr& weights, long max_iter = 200,
                                                 double delta = 1e-10) {
    if (A.rows() != v.size() || A.rows() != weights.size())
        throw std::invalid_argument("minimize_l1_irls: dimension mismatch");
    IrlsResult out;
    out.beta = VectorXr::Zero(A.cols());
    auto objective = [&](const VectorXr& beta) {
        return (weights.array() * (v - A * beta).array().abs()).sum();
    };
    out.objective = objective(out.beta);
    VectorXr beta = out.beta;
    for (long it = 0; it < max_iter; ++it) {
        const VectorXr r = v - A * beta;
        const VectorXr w =
            weights.array() / r.array().abs().max(delta);
        const MatrixXr awa = A.transpose() * w.asDiagonal() * A;
        const VectorXr rhs = A.transpose() * (w.asDiagonal() * v);
        const VectorXr next = (awa + 1e-12 * MatrixXr::Identity(A.cols(), A.cols()))
                                  .ldlt()
                                  .solve(rhs);
        const double step = (next - beta).cwiseAbs().maxCoeff();
        beta = next;
        ++out.iterations;
        const double obj = objective(beta);
        if (obj < out.objective) {
            out.objective = obj;
            out.beta = beta;
        }
        if (step < 1e-12 * std::max(1.0, beta.cwiseAbs().maxCoeff())) {
            out.converged = true;
            break;
        }
    }
    return out;
}

struct L1DenseResult {
    VectorXr beta;
    VectorXr residual;
    double l1 = 0.0;
    LpResult lp;
};

/// Direct one-norm minimizer over explicit rows: picks beta so that
/// sum_j |v_j - (C' beta)_j| is least, every coordinate counted (optionally
/// excluding one column from the objective).  Solved as the standard split
/// formulation: residual = u - w with u, w >= 0 slacks per coordinate.
[[nodiscard]] inline L1DenseResult minimize_l1_dense(const VectorXr& v, const MatrixXr& C,
                                                     std::ptrdiff_t exclude_col = -1,
                                                     const SimplexOptions& opt = {}) {
    if (C.size() > 0 && C.cols() != v.size())
        throw std::invalid_argument("minimize_l1_dense: column count mismatch");
    const auto L = static_cast<std::size_t>(v.size());
    const auto K = static_cast<std::size_t>(C.rows());

    std::vector<std::ptrdiff_t> coord_row(L, -1);
    std::vector<std::size_t> row_coord;
    for (std::size_t j = 0; j < L; ++j) {
        if (static_cast<std::ptrdiff_t>(j) == exclude_col) continue;
        coord_row[j] = static_cast<std::ptrdiff_t>(row_coord.size());
        row_coord.push_back(j);
    }
    const std::size_t J = row_coord.size();

    std::vector<SparseColumn> lp_cols;
    lp_cols.reserve(2 * K + 2 * J);
    VectorXr cost = VectorXr::Zero(static_cast<Eigen::Index>(2 * K + 2 * J));
    for (std::size_t sign = 0; sign < 2; ++sign)
        for (std::size_t k = 0; k < K; ++k) {
            SparseColumn col;
            for (std::size_t j = 0; j < L; ++j) {
                if (coord_row[j] < 0) continue;
                const double a = C(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j));
                if (a != 0.0) col.emplace_back(static_cast<int>(coord_row[j]),
                                               sign == 0 ? a : -a);
            }
            lp_cols.push_back(std::move(col));
        }
    VectorXr b(static_cast<Eigen::Index>(J));
    std::vector<int> basis(J);
    for (std::size_t r = 0; r < J; ++r) {
        b(static_cast<Eigen::Index>(r)) = v(static_cast<Eigen::Index>(row_coord[r]));
        const auto u_idx = 2 * K + r, w_idx = 2 * K + J + r;
        cost(static_cast<Eigen::Index>(u_idx)) = 1.0;
        cost(static_cast<Eigen::Index>(w_idx)) = 1.0;
        basis[r] = static_cast<int>(b(static_cast<Eigen::Index>(r)) >= 0.0 ? u_idx : w_idx);
    }
    for (std::size_t r = 0; r < J; ++r) lp_cols.push_back({{static_cast<int>(r), 1.0}});
    for (std::size_t r = 0; r < J; ++r) lp_cols.push_back({{static_cast<int>(r), -1.0}});

    L1DenseResult out;
    out.lp = solve_standard_form(lp_cols, b, cost, std::move(basis), opt);
    out.beta = VectorXr::Zero(static_cast<Eigen::Index>(K));
    for (std::size_t k = 0; k < K; ++k)
        out.beta(static_cast<Eigen::Index>(k)) =
            out.lp.x(static_cast<Eigen::Index>(k)) - out.lp.x(static_cast<Eigen::Index>(K + k));
    out.residual = v;
    if (K > 0) out.residual -= C.transpose() * out.beta;
    out.l1 = 0.0;
    for (std::size_t j = 0; j < L; ++j)
        if (static_cast<std::ptrdiff_t>(j) != exclude_col)
            out.l1 += std::abs(out.residual(static_cast<Eigen::Index>(j)));
    return out;
}

}  // namespace rdmkit
