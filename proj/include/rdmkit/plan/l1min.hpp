// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rdmkit/core/basis.hpp"
#include "rdmkit/core/fermion_op.hpp"
#include "rdmkit/core/jordan_wigner.hpp"
#include "rdmkit/core/qubit_op.hpp"
#include "rdmkit/core/rdm.hpp"
#include "rdmkit/plan/constraints.hpp"
#include "rdmkit/plan/simplex.hpp"
#include "rdmkit/plan/vectorize.hpp"

namespace rdmkit {

struct L1MinOptions {
    /// When set (and matching the mode count), coordinates are partitioned by
    /// the net spin-z charge of their words and sectors the input never
    /// touches are dropped; exact because every constraint row either lives
    /// in a single sector or only shuffles weight between mirrored ones.
    const SpinOrbitalBasis* basis = nullptr;
    /// Fold coordinates with their adjoints when the input vector is
    /// Hermitian-symmetric; halves the program and forces a Hermitian result.
    bool use_quotient = true;
    bool irls_fallback = true;
    SimplexOptions simplex{};
    double sym_tol = 1e-9;
};

struct LpDiagnostics {
    double objective = 0.0;
    double gap = 0.0;
    double max_dual_infeasibility = 0.0;
    long iterations = 0;
    std::size_t lp_rows = 0;
    std::size_t lp_columns = 0;
    bool optimal = false;
    bool used_irls = false;
    bool quotient_folded = false;
    bool sector_pruned = false;
};

/// Result of the one-norm rewriting: terms = input + rows' * beta, with
/// lambda_tilde the one-norm of `terms` over everything but the constant
/// column.  The rewritten operator agrees with the input on every state the
/// constraint rows annihilate against.
struct RewrittenHamiltonian {
    VectorXr beta;
    VectorXr terms;
    double lambda = 0.0;
    double lambda_tilde = 0.0;
    LpDiagnostics lp;

    [[nodiscard]] FermionOperatorSum operator_sum(const Vectorization& vec,
                                                  double drop_tol = 1e-13) const {
        return devectorize(terms, vec, drop_tol);
    }
};

namespace detail {

enum class ColClass : unsigned char { rep, plain, multi, merge, zero };

inline bool word_is_normal_form(const Vectorization& vec, std::size_t col, const LadderWord& w) {
    switch (vec.family_of(col)) {
        case TermFamily::constant:
        case TermFamily::one_body:
            return true;
        case TermFamily::two_body:
            return w[0].mode < w[1].mode && w[2].mode > w[3].mode;
        default:
            return false;
    }
}

}  // namespace detail

/// Minimizes sum_j |v_j + (rows' beta)_j| over the multipliers beta, skipping
/// the constant column (a deterministic shift costs nothing to measure).
/// beta = 0 is always feasible, so the optimum never exceeds the one-norm of
/// the normal-ordered input.
///
/// The program is shrunk exactly before the simplex sees it: columns whose
/// words vanish or normal order to a single signed word are eliminated
/// through their own rewriting rows, spin sectors the input does not touch
/// are dropped, and coordinates are folded with their adjoints.  The
/// eliminated multipliers are recovered in closed form afterwards, so the
/// returned beta spans the full row set and `terms` is exact.
[[nodiscard]] inline RewrittenHamiltonian minimize_l1(const VectorXr& v,
                                                      const ConstraintSystem& cs,
                                                      const L1MinOptions& opt = {}) {
    const Vectorization& vec = cs.vec;
    const std::size_t L = vec.columns();
    if (static_cast<std::size_t>(v.size()) != L)
        throw std::invalid_argument("minimize_l1: vector length mismatch");
    const std::size_t K = cs.row_count();
    const auto const_col = static_cast<std::ptrdiff_t>(vec.constant_column());

    RewrittenHamiltonian out;
    {
        const CanonicalColumns canon(vec);
        const VectorXr vc = canon.compress(v);
        out.lambda = vc.cwiseAbs().sum() - std::abs(vc(0));  // slot 0 is the constant
    }

    // Classify every column by what its own rewriting row can do to it.
    std::vector<detail::ColClass> cls(L, detail::ColClass::rep);
    std::vector<std::ptrdiff_t> merge_target(L, -1);
    std::vector<double> merge_sign(L, 0.0);
    std::vector<LadderWord> words(L);
    for (std::size_t j = 0; j < L; ++j) {
        words[j] = vec.word_of(j);
        if (detail::word_is_normal_form(vec, j, words[j])) continue;
        if (cs.rewrite_row_of_column[j] < 0) {
            cls[j] = detail::ColClass::plain;
            continue;
        }
        FermionOperatorSum one;
        one.add(words[j], Complex{1.0, 0.0});
        const FermionOperatorSum nf = one.normal_ordered();
        if (nf.empty()) {
            cls[j] = detail::ColClass::zero;
            continue;
        }
        if (nf.size() == 1) {
            const auto& [nw, nc] = *nf.terms().begin();
            if (!nw.empty() && std::abs(nc.imag()) < 1e-12 &&
                std::abs(std::abs(nc.real()) - 1.0) < 1e-12) {
                cls[j] = detail::ColClass::merge;
                merge_target[j] = static_cast<std::ptrdiff_t>(vec.column_of(nw));
                merge_sign[j] = nc.real();
                continue;
            }
        }
        cls[j] = detail::ColClass::multi;
    }

    // Spin-z sector of each column word (0 everywhere without a basis).
    std::vector<int> label(L, 0);
    const bool have_basis = opt.basis != nullptr && opt.basis->r == vec.modes;
    if (have_basis) {
        for (std::size_t j = 0; j < L; ++j) {
            int lab = 0;
            for (const auto& op : words[j]) {
                const int s = opt.basis->spin_of(op.mode) == Spin::alpha ? 1 : -1;
                lab += op.create ? s : -s;
            }
            label[j] = lab;
        }
    }
    std::set<int> kept_labels;
    for (std::size_t j = 0; j < L; ++j)
        if (v(static_cast<Eigen::Index>(j)) != 0.0) kept_labels.insert(label[j]);
    auto col_kept = [&](std::size_t j) { return kept_labels.count(label[j]) > 0; };

    // A row survives only if its whole support lives in kept sectors; rows
    // straddling a dropped sector can only push weight where it costs.
    std::vector<char> presolved(K, 0);
    for (std::size_t j = 0; j < L; ++j)
        if (cls[j] == detail::ColClass::merge || cls[j] == detail::ColClass::zero)
            if (cs.rewrite_row_of_column[j] >= 0)
                presolved[static_cast<std::size_t>(cs.rewrite_row_of_column[j])] = 1;

    std::vector<std::size_t> lp_rows;
    for (std::size_t r = 0; r < K; ++r) {
        if (presolved[r]) continue;
        bool ok = true;
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(
                 cs.rows, static_cast<Eigen::Index>(r));
             it; ++it)
            if (!col_kept(static_cast<std::size_t>(it.col()))) {
                ok = false;
                break;
            }
        if (ok) lp_rows.push_back(r);
    }

    // Coordinates: one per surviving column that owns its weight.  Merge
    // columns forward onto their targets, zero columns disappear, and the
    // constant column never gets a coordinate.
    std::vector<char> touched(L, 0);
    auto mark = [&](std::size_t j) {
        switch (cls[j]) {
            case detail::ColClass::zero:
                break;
            case detail::ColClass::merge:
                touched[static_cast<std::size_t>(merge_target[j])] = 1;
                break;
            default:
                touched[j] = 1;
        }
    };
    for (std::size_t j = 0; j < L; ++j)
        if (v(static_cast<Eigen::Index>(j)) != 0.0 && col_kept(j)) mark(j);
    for (const std::size_t r : lp_rows)
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(
                 cs.rows, static_cast<Eigen::Index>(r));
             it; ++it)
            mark(static_cast<std::size_t>(it.col()));

    std::vector<std::ptrdiff_t> coord(L, -1);
    std::vector<std::size_t> coord_col;
    for (std::size_t j = 0; j < L; ++j) {
        if (!touched[j] || static_cast<std::ptrdiff_t>(j) == const_col) continue;
        if (cls[j] == detail::ColClass::merge || cls[j] == detail::ColClass::zero) continue;
        coord[j] = static_cast<std::ptrdiff_t>(coord_col.size());
        coord_col.push_back(j);
    }
    const std::size_t n_coord = coord_col.size();

    VectorXr vm = VectorXr::Zero(static_cast<Eigen::Index>(n_coord));
    for (std::size_t j = 0; j < L; ++j) {
        const double vj = v(static_cast<Eigen::Index>(j));
        if (vj == 0.0 || !col_kept(j) || static_cast<std::ptrdiff_t>(j) == const_col) continue;
        if (cls[j] == detail::ColClass::zero) continue;
        if (cls[j] == detail::ColClass::merge)
            vm(coord[static_cast<std::size_t>(merge_target[j])]) += merge_sign[j] * vj;
        else
            vm(coord[j]) += vj;
    }

    // Rows mapped into coordinate space; also remember, per eliminated
    // column, which surviving rows touch it (needed to back out the
    // eliminated multipliers exactly once the LP has fixed the others).
    std::vector<std::vector<std::pair<int, double>>> row_coords(lp_rows.size());
    std::map<std::size_t, std::vector<std::pair<std::size_t, double>>> eliminated_support;
    for (std::size_t i = 0; i < lp_rows.size(); ++i) {
        const std::size_t r = lp_rows[i];
        std::map<int, double> acc;
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(
                 cs.rows, static_cast<Eigen::Index>(r));
             it; ++it) {
            const auto jc = static_cast<std::size_t>(it.col());
            if (static_cast<std::ptrdiff_t>(jc) == const_col) continue;
            switch (cls[jc]) {
                case detail::ColClass::zero:
                    eliminated_support[jc].emplace_back(r, it.value());
                    break;
                case detail::ColClass::merge:
                    eliminated_support[jc].emplace_back(r, it.value());
                    acc[static_cast<int>(coord[static_cast<std::size_t>(merge_target[jc])])] +=
                        it.value() * merge_sign[jc];
                    break;
                default:
                    acc[static_cast<int>(coord[jc])] += it.value();
            }
        }
        auto& dst = row_coords[i];
        for (const auto& [c, a] : acc)
            if (std::abs(a) > 1e-14) dst.emplace_back(c, a);
    }

    // Hermiticity fold: pair each coordinate with its adjoint image.
    bool quotient = opt.use_quotient;
    std::vector<std::ptrdiff_t> partner(n_coord, -1);
    if (quotient) {
        const double scale = std::max(1.0, vm.size() ? vm.cwiseAbs().maxCoeff() : 0.0);
        for (std::size_t c = 0; c < n_coord && quotient; ++c) {
            const std::size_t ja = adjoint_column(vec, coord_col[c]);
            const std::ptrdiff_t pc = coord[ja];
            if (pc < 0) {
                quotient = false;
                break;
            }
            partner[c] = pc;
            if (std::abs(vm(static_cast<Eigen::Index>(c)) - vm(pc)) > opt.sym_tol * scale)
                quotient = false;
        }
    }

    std::vector<std::ptrdiff_t> class_of(n_coord);
    std::vector<std::size_t> class_rep;
    std::vector<double> class_weight;
    if (quotient) {
        std::fill(class_of.begin(), class_of.end(), -1);
        for (std::size_t c = 0; c < n_coord; ++c) {
            if (class_of[c] >= 0) continue;
            const auto p = static_cast<std::size_t>(partner[c]);
            class_of[c] = static_cast<std::ptrdiff_t>(class_rep.size());
            class_of[p] = class_of[c];
            class_rep.push_back(c);
            class_weight.push_back(p == c ? 1.0 : 2.0);
        }
    } else {
        for (std::size_t c = 0; c < n_coord; ++c) class_of[c] = static_cast<std::ptrdiff_t>(c);
        class_rep.resize(n_coord);
        for (std::size_t c = 0; c < n_coord; ++c) class_rep[c] = c;
        class_weight.assign(n_coord, 1.0);
    }
    const std::size_t J = class_rep.size();

    // Standard form: beta+ beta- columns (folded rows), then u, then w.
    std::vector<SparseColumn> lp_cols;
    std::vector<std::size_t> beta_rows;  // CS row index per beta variable
    for (std::size_t i = 0; i < lp_rows.size(); ++i) {
        std::map<int, double> folded;
        for (const auto& [c, a] : row_coords[i]) {
            const auto cl = static_cast<int>(class_of[static_cast<std::size_t>(c)]);
            folded[cl] += (quotient && class_weight[static_cast<std::size_t>(cl)] > 1.5)
                              ? 0.5 * a
                              : a;
        }
        SparseColumn col;
        for (const auto& [cl, a] : folded)
            if (std::abs(a) > 1e-12) col.emplace_back(cl, a);
        if (col.empty()) continue;  // hermiticity rows fold away against their adjoints
        beta_rows.push_back(lp_rows[i]);
        lp_cols.push_back(std::move(col));
    }
    const std::size_t n_beta = beta_rows.size();
    lp_cols.reserve(2 * n_beta + 2 * J);
    for (std::size_t i = 0; i < n_beta; ++i) {
        SparseColumn neg = lp_cols[i];
        for (auto& [c, a] : neg) a = -a;
        lp_cols.push_back(std::move(neg));
    }

    VectorXr b_lp(static_cast<Eigen::Index>(J));
    VectorXr cost = VectorXr::Zero(static_cast<Eigen::Index>(2 * n_beta + 2 * J));
    std::vector<int> basis(J);
    for (std::size_t cl = 0; cl < J; ++cl) {
        b_lp(static_cast<Eigen::Index>(cl)) = vm(static_cast<Eigen::Index>(class_rep[cl]));
        const std::size_t u_idx = 2 * n_beta + cl, w_idx = 2 * n_beta + J + cl;
        cost(static_cast<Eigen::Index>(u_idx)) = class_weight[cl];
        cost(static_cast<Eigen::Index>(w_idx)) = class_weight[cl];
        basis[cl] = static_cast<int>(b_lp(static_cast<Eigen::Index>(cl)) >= 0.0 ? u_idx : w_idx);
    }
    for (std::size_t cl = 0; cl < J; ++cl) lp_cols.push_back({{static_cast<int>(cl), 1.0}});
    for (std::size_t cl = 0; cl < J; ++cl) lp_cols.push_back({{static_cast<int>(cl), -1.0}});

    LpResult lp = solve_standard_form(lp_cols, b_lp, cost, std::move(basis), opt.simplex);

    VectorXr t = VectorXr::Zero(static_cast<Eigen::Index>(n_beta));
    for (std::size_t i = 0; i < n_beta; ++i)
        t(static_cast<Eigen::Index>(i)) = lp.x(static_cast<Eigen::Index>(i)) -
                                          lp.x(static_cast<Eigen::Index>(n_beta + i));
    bool used_irls = false;
    if (!lp.optimal && !lp.unbounded && opt.irls_fallback && n_beta > 0 && J > 0) {
        MatrixXr A = MatrixXr::Zero(static_cast<Eigen::Index>(J),
                                    static_cast<Eigen::Index>(n_beta));
        for (std::size_t i = 0; i < n_beta; ++i)
            for (const auto& [c, a] : lp_cols[i]) A(c, static_cast<Eigen::Index>(i)) = a;
        VectorXr wgt(static_cast<Eigen::Index>(J));
        for (std::size_t cl = 0; cl < J; ++cl) wgt(static_cast<Eigen::Index>(cl)) =
            class_weight[cl];
        const IrlsResult irls = minimize_l1_irls(A, b_lp, wgt);
        if (irls.objective < lp.objective - 1e-12) {
            t = irls.beta;
            used_irls = true;
        }
    }

    // Expand the multipliers: folded variables split evenly across the
    // adjoint row pair, then the presolved rewriting rows are recovered so
    // that every eliminated coordinate lands exactly on zero.
    VectorXr beta_full = VectorXr::Zero(static_cast<Eigen::Index>(K));
    for (std::size_t i = 0; i < n_beta; ++i) {
        const std::size_t r = beta_rows[i];
        const std::size_t pr = cs.adjoint_row[r];
        const double ti = t(static_cast<Eigen::Index>(i));
        if (quotient && pr != r && pr < K) {
            beta_full(static_cast<Eigen::Index>(r)) += 0.5 * ti;
            beta_full(static_cast<Eigen::Index>(pr)) += 0.5 * ti;
        } else {
            beta_full(static_cast<Eigen::Index>(r)) += ti;
        }
    }
    for (std::size_t j = 0; j < L; ++j) {
        if (cls[j] != detail::ColClass::merge && cls[j] != detail::ColClass::zero) continue;
        if (!col_kept(j)) continue;
        const std::ptrdiff_t rr = cs.rewrite_row_of_column[j];
        if (rr < 0) continue;
        double bj = v(static_cast<Eigen::Index>(j));
        if (const auto it = eliminated_support.find(j); it != eliminated_support.end())
            for (const auto& [r, a] : it->second)
                bj -= a * beta_full(static_cast<Eigen::Index>(r));
        beta_full(rr) = bj;
    }

    // Residual over the full column space; this is the ground truth the
    // reduced program must reproduce.
    VectorXr terms = v;
    for (std::size_t r = 0; r < K; ++r) {
        const double br = beta_full(static_cast<Eigen::Index>(r));
        if (br == 0.0) continue;
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(
                 cs.rows, static_cast<Eigen::Index>(r));
             it; ++it)
            terms(it.col()) -= br * it.value();
    }
    double lt = 0.0;
    for (std::size_t j = 0; j < L; ++j)
        if (static_cast<std::ptrdiff_t>(j) != const_col)
            lt += std::abs(terms(static_cast<Eigen::Index>(j)));

    out.beta = -beta_full;
    out.terms = std::move(terms);
    out.lambda_tilde = lt;
    out.lp.objective = used_irls ? lt : lp.objective;
    out.lp.gap = lp.gap;
    out.lp.max_dual_infeasibility = lp.max_dual_infeasibility;
    out.lp.iterations = lp.iterations;
    out.lp.lp_rows = J;
    out.lp.lp_columns = lp_cols.size();
    out.lp.optimal = lp.optimal;
    out.lp.used_irls = used_irls;
    out.lp.quotient_folded = quotient;
    out.lp.sector_pruned = have_basis;
    return out;
}

[[nodiscard]] inline RewrittenHamiltonian minimize_l1(const FermionOperatorSum& h,
                                                      const ConstraintSystem& cs,
                                                      const L1MinOptions& opt = {}) {
    return minimize_l1(vectorize_any(h, cs.vec), cs, opt);
}

/// Hermitian average (H + H')/2.  Applied after the one-norm rewriting it
/// strips any anti-Hermitian residue the multipliers introduced; on the
/// folded path the rewritten operator is already Hermitian, so the one-norm
/// is preserved exactly.
[[nodiscard]] inline FermionOperatorSum hermitize(const FermionOperatorSum& h) {
    return hermitian_average(h);
}

[[nodiscard]] inline VectorXr hermitize(const VectorXr& terms, const Vectorization& vec) {
    if (static_cast<std::size_t>(terms.size()) != vec.columns())
        throw std::invalid_argument("hermitize: length mismatch");
    VectorXr out = VectorXr::Zero(terms.size());
    for (Eigen::Index j = 0; j < terms.size(); ++j) {
        const double tj = terms(j);
        if (tj == 0.0) continue;
        out(j) += 0.5 * tj;
        out(static_cast<Eigen::Index>(adjoint_column(vec, static_cast<std::size_t>(j)))) +=
            0.5 * tj;
    }
    return out;
}

/// One-norms of the original and rewritten operators after the
/// Jordan-Wigner transform, for reporting measurement cost at the Pauli
/// level (the identity string is excluded on both sides).
struct PauliLevelReport {
    double lambda = 0.0;
    double lambda_tilde = 0.0;
    std::size_t terms = 0;
    std::size_t rewritten_terms = 0;
};

[[nodiscard]] inline PauliLevelReport pauli_report(const FermionOperatorSum& original,
                                                   const RewrittenHamiltonian& rewritten,
                                                   const Vectorization& vec) {
    QubitOperatorSum q0 = jordan_wigner(original);
    q0.prune();
    QubitOperatorSum q1 = jordan_wigner(rewritten.operator_sum(vec));
    q1.prune();
    PauliLevelReport rep;
    rep.lambda = lambda_norm(q0);
    rep.lambda_tilde = lambda_norm(q1);
    rep.terms = q0.size();
    rep.rewritten_terms = q1.size();
    return rep;
}

}  // namespace rdmkit
