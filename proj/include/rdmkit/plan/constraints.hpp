// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/SparseCore>
#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdmkit/core/fermion_op.hpp"
#include "rdmkit/core/maps.hpp"
#include "rdmkit/core/rdm.hpp"
#include "rdmkit/plan/vectorize.hpp"

namespace rdmkit {

/// Toggle set for the constraint row categories.  Every category holds as an
/// identity on particle-number eigenstates (hermiticity additionally needs a
/// real state), so subsets can be ablated independently to attribute the
/// one-norm reduction to individual families.
struct ConstraintCategories {
    bool trace = true;
    bool hermiticity = true;
    bool contraction = true;
    bool antisymmetry = true;
    bool d_q = true;
    bool d_g = true;

    [[nodiscard]] static ConstraintCategories all() { return {}; }
    [[nodiscard]] static ConstraintCategories none() {
        return {false, false, false, false, false, false};
    }
};

/// Linear identities over the term columns of a Vectorization.  Every row
/// annihilates the marginal vector of any valid (real, fixed particle count)
/// state, which is what licenses adding multiples of rows to a Hamiltonian's
/// coefficient vector without changing its expectation values.
///
/// Row order is the generation order of generate_constraints (trace,
/// hermiticity, contraction, antisymmetry, D-Q, D-G); adjoint_row pairs each
/// row with its image under word adjoints so downstream solvers can fold the
/// system by hermiticity.
struct ConstraintSystem {
    Vectorization vec;
    std::size_t particles = 0;
    Eigen::SparseMatrix<double, Eigen::RowMajor> rows;  // K x L
    std::vector<std::string> labels;                    // K
    std::vector<std::ptrdiff_t> rewrite_row_of_column;  // L, -1 when none
    std::vector<std::size_t> adjoint_row;               // K, self when fixed

    [[nodiscard]] std::size_t row_count() const { return labels.size(); }

    [[nodiscard]] std::map<std::string, std::size_t> category_counts() const {
        std::map<std::string, std::size_t> out;
        for (const auto& l : labels) ++out[l];
        return out;
    }
};

[[nodiscard]] inline LadderWord adjoint_word(const LadderWord& w) {
    LadderWord out(w.rbegin(), w.rend());
    for (auto& op : out) op.create = !op.create;
    return out;
}

/// Column of the adjoint word; the families are closed under adjoints.
[[nodiscard]] inline std::size_t adjoint_column(const Vectorization& vec, std::size_t col) {
    return vec.column_of(adjoint_word(vec.word_of(col)));
}

namespace detail {

// A two-body family word a+_a a+_b a_c a_d is in normal form when the
// creators ascend and the annihilators descend; everything else (including
// repeated indices) gets a rewriting row.
inline bool two_body_word_canonical(std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    return a < b && c > d;
}

}  // namespace detail

/// Builds the identity rows over the column dictionary for an n-particle
/// system on `modes` spin orbitals.  Trace and contraction rows fix the
/// sector normalization, hermiticity rows pair words with their adjoints,
/// and the antisymmetry / D-Q / D-G rows equate every non-normal-ordered
/// column with its Wick expansion (the constant column absorbs the delta
/// terms).  Duplicate or linearly dependent rows are kept as generated.
[[nodiscard]] inline ConstraintSystem generate_constraints(
    std::size_t modes, std::size_t particles,
    const ConstraintCategories& cats = ConstraintCategories::all()) {
    if (particles < 2)
        throw std::invalid_argument("generate_constraints: need at least two particles");
    if (modes < 2) throw std::invalid_argument("generate_constraints: need at least two modes");

    ConstraintSystem cs;
    cs.vec = Vectorization(modes);
    cs.particles = particles;
    cs.rewrite_row_of_column.assign(cs.vec.columns(), -1);

    const std::size_t N = modes;
    const double n = static_cast<double>(particles);
    std::vector<Eigen::Triplet<double>> trip;
    constexpr std::ptrdiff_t kSelf = -2;     // row is its own adjoint image
    constexpr std::ptrdiff_t kRewrite = -1;  // resolve later via the rewrite map
    std::vector<std::ptrdiff_t> adjoint;

    auto begin_row = [&](const std::string& label, std::ptrdiff_t adj) -> std::size_t {
        cs.labels.push_back(label);
        adjoint.push_back(adj);
        return cs.labels.size() - 1;
    };
    auto put = [&](std::size_t row, std::size_t col, double val) {
        trip.emplace_back(static_cast<int>(row), static_cast<int>(col), val);
    };

    if (cats.trace) {
        std::size_t row = begin_row("trace", kSelf);
        for (std::size_t p = 0; p < N; ++p) put(row, cs.vec.one_body_column(p, p), 1.0);
        put(row, cs.vec.constant_column(), -n);

        row = begin_row("trace", kSelf);
        for (std::size_t p = 0; p < N; ++p)
            for (std::size_t q = 0; q < N; ++q) {
                if (p == q) continue;
                put(row, cs.vec.two_body_column(p, q, q, p), 1.0);
            }
        put(row, cs.vec.constant_column(), -n * (n - 1.0));
    }

    if (cats.hermiticity) {
        for (std::size_t p = 0; p < N; ++p)
            for (std::size_t q = p + 1; q < N; ++q) {
                const std::size_t row = begin_row("hermiticity", kSelf);
                put(row, cs.vec.one_body_column(p, q), 1.0);
                put(row, cs.vec.one_body_column(q, p), -1.0);
            }
        // Normal-form words correspond to composite index pairs (I, J) with
        // I = (p, q), J = (d, c); the adjoint swaps I and J, so emit one row
        // per unordered pair with I < J.
        for (std::size_t p = 0; p < N; ++p)
            for (std::size_t q = p + 1; q < N; ++q)
                for (std::size_t d = 0; d < N; ++d)
                    for (std::size_t c = d + 1; c < N; ++c) {
                        const std::size_t I = p * N + q, J = d * N + c;
                        if (I >= J) continue;
                        const std::size_t row = begin_row("hermiticity", kSelf);
                        put(row, cs.vec.two_body_column(p, q, c, d), 1.0);
                        put(row, cs.vec.two_body_column(d, c, q, p), -1.0);
                    }
    }

    std::size_t contraction_base = cs.labels.size();
    if (cats.contraction) {
        for (std::size_t p = 0; p < N; ++p)
            for (std::size_t s = 0; s < N; ++s) {
                const std::ptrdiff_t adj =
                    static_cast<std::ptrdiff_t>(contraction_base + s * N + p);
                const std::size_t row = begin_row("contraction", adj);
                for (std::size_t q = 0; q < N; ++q)
                    put(row, cs.vec.two_body_column(p, q, q, s), 1.0);
                put(row, cs.vec.one_body_column(p, s), -(n - 1.0));
            }
    }

    // Rewriting rows: column word minus its normal-ordered expansion.  These
    // vanish identically as operators, so they always annihilate marginal
    // vectors; in the one-norm program they are what lets weight move between
    // the particle, hole, and particle-hole pictures.
    auto rewrite_row = [&](const std::string& label, std::size_t col) {
        const std::size_t row = begin_row(label, kRewrite);
        cs.rewrite_row_of_column[col] = static_cast<std::ptrdiff_t>(row);
        put(row, col, 1.0);
        FermionOperatorSum one_word;
        one_word.add(cs.vec.word_of(col), Complex{1.0, 0.0});
        const FermionOperatorSum nf = one_word.normal_ordered();
        for (const auto& [w, c] : nf.terms()) put(row, cs.vec.column_of(w), -c.real());
    };

    if (cats.antisymmetry) {
        for (std::size_t a = 0; a < N; ++a)
            for (std::size_t b = 0; b < N; ++b)
                for (std::size_t c = 0; c < N; ++c)
                    for (std::size_t d = 0; d < N; ++d) {
                        if (detail::two_body_word_canonical(a, b, c, d)) continue;
                        rewrite_row("antisymmetry", cs.vec.two_body_column(a, b, c, d));
                    }
    }
    if (cats.d_q) {
        for (std::size_t p = 0; p < N; ++p)
            for (std::size_t q = 0; q < N; ++q) rewrite_row("D-Q", cs.vec.hole_one_column(p, q));
        for (std::size_t a = 0; a < N; ++a)
            for (std::size_t b = 0; b < N; ++b)
                for (std::size_t c = 0; c < N; ++c)
                    for (std::size_t d = 0; d < N; ++d)
                        rewrite_row("D-Q", cs.vec.hole_two_column(a, b, c, d));
    }
    if (cats.d_g) {
        for (std::size_t a = 0; a < N; ++a)
            for (std::size_t b = 0; b < N; ++b)
                for (std::size_t c = 0; c < N; ++c)
                    for (std::size_t d = 0; d < N; ++d)
                        rewrite_row("D-G", cs.vec.particle_hole_column(a, b, c, d));
    }

    cs.adjoint_row.resize(cs.labels.size());
    for (std::size_t r = 0; r < cs.labels.size(); ++r)
        cs.adjoint_row[r] = (adjoint[r] >= 0) ? static_cast<std::size_t>(adjoint[r]) : r;
    // Rewrite rows pair through the adjoint of the column they rewrite.
    for (std::size_t col = 0; col < cs.vec.columns(); ++col) {
        const std::ptrdiff_t row = cs.rewrite_row_of_column[col];
        if (row < 0) continue;
        const std::size_t acol = adjoint_column(cs.vec, col);
        const std::ptrdiff_t arow = cs.rewrite_row_of_column[acol];
        cs.adjoint_row[static_cast<std::size_t>(row)] =
            (arow >= 0) ? static_cast<std::size_t>(arow) : static_cast<std::size_t>(row);
    }

    cs.rows.resize(static_cast<Eigen::Index>(cs.labels.size()),
                   static_cast<Eigen::Index>(cs.vec.columns()));
    cs.rows.setFromTriplets(trip.begin(), trip.end());
    cs.rows.makeCompressed();
    return cs;
}

/// Coefficient-space image of a state's marginals: the expectation value of
/// every column word, with the hole and particle-hole families derived from
/// (1D, 2D) through the exact linear maps.  Rows of a ConstraintSystem built
/// for the same mode count and particle number annihilate this vector.
[[nodiscard]] inline VectorXr marginal_vector(const OneRDM& d1, const TwoRDM& d2,
                                              const Vectorization& vec,
                                              double imag_tol = 1e-8) {
    const std::size_t r = d2.r;
    if (d1.dim() != r || vec.modes != r)
        throw std::invalid_argument("marginal_vector: dimension mismatch");
    const HoleRDM q1 = map_d1_to_q1(d1);
    const TwoHoleRDM q2 = map_d2_to_q2(d1, d2);
    const ParticleHoleRDM g2 = map_d2_to_g2(d1, d2);

    auto real_checked = [&](Complex z) {
        if (std::abs(z.imag()) > imag_tol)
            throw std::invalid_argument("marginal_vector: complex marginal entry");
        return z.real();
    };

    VectorXr x = VectorXr::Zero(static_cast<Eigen::Index>(vec.columns()));
    x(static_cast<Eigen::Index>(vec.constant_column())) = 1.0;
    for (std::size_t p = 0; p < r; ++p)
        for (std::size_t q = 0; q < r; ++q) {
            x(static_cast<Eigen::Index>(vec.one_body_column(p, q))) =
                real_checked(d1.mat(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)));
            x(static_cast<Eigen::Index>(vec.hole_one_column(p, q))) =
                real_checked(q1.mat(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)));
        }
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b)
            for (std::size_t c = 0; c < r; ++c)
                for (std::size_t d = 0; d < r; ++d) {
                    const auto row = static_cast<Eigen::Index>(a * r + b);
                    const auto col = static_cast<Eigen::Index>(d * r + c);
                    x(static_cast<Eigen::Index>(vec.two_body_column(a, b, c, d))) =
                        real_checked(d2.mat(row, col));
                    x(static_cast<Eigen::Index>(vec.hole_two_column(a, b, c, d))) =
                        real_checked(q2.mat(row, col));
                    x(static_cast<Eigen::Index>(vec.particle_hole_column(a, b, c, d))) =
                        real_checked(g2.mat(row, col));
                }
    return x;
}

}  // namespace rdmkit
