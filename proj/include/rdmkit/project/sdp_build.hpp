// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rdmkit/core/basis.hpp"
#include "rdmkit/core/fermion_op.hpp"
#include "rdmkit/core/observables.hpp"
#include "rdmkit/core/rdm.hpp"
#include "rdmkit/core/spin_blocks.hpp"
#include "rdmkit/sdp/problem.hpp"
#include "rdmkit/sdp/solver.hpp"

namespace rdmkit {

struct ReconstructionOptions {
    bool spin_adapted = true;
    bool fix_particle_number = false;
    bool fix_sz = false;
    bool fix_s2 = false;
    double particle_number = 0.0;  // <= 0 means: use basis.n
    double sz = 0.0;
    double s2 = 0.0;
};

struct FamilyCount {
    std::string name;
    std::size_t rows = 0;
};

namespace detail {

struct CoordPart {
    std::size_t block;
    std::size_t i, j;
    double c;
};

/// Variable layout of the reconstruction program.  Full mode stores each
/// marginal over its literal index space.  Adapted mode stores the Sz-sector
/// blocks, with both antisymmetric-pair families in the isometric wedge basis
/// (same scaling convention as SpinBlockedTwoRDM, so traces, Frobenius norms,
/// and spectra of the represented part match the full matrices) and the
/// particle-hole family split by spin transfer.  The translators below map a
/// full-matrix element to its stored coordinates; an empty result means the
/// element is structurally zero in this layout.
struct ReconLayout {
    SpinOrbitalBasis basis;
    bool adapted = false;
    std::vector<std::size_t> dims;
    std::vector<std::size_t> d1_ids, q1_ids;  // adapted: {alpha, beta}
    std::vector<std::size_t> d2_ids, q2_ids;  // adapted: {aa, bb, ab}
    std::vector<std::size_t> g2_ids;          // adapted: {neutral, alpha-beta, beta-alpha}
    std::vector<std::size_t> m_ids;           // Schur blocks, aligned with d2_ids
    std::vector<Eigen::SparseMatrix<double>> d2_iso;  // pair-space isometry per d2 block

    [[nodiscard]] static ReconLayout make(const SpinOrbitalBasis& b, bool adapted) {
        ReconLayout lay;
        lay.basis = b;
        lay.adapted = adapted;
        const std::size_t r = b.r;
        if (!adapted) {
            const std::size_t d = r * r;
            lay.dims = {r, r, d, d, d, 2 * d};
            lay.d1_ids = {0};
            lay.q1_ids = {1};
            lay.d2_ids = {2};
            lay.q2_ids = {3};
            lay.g2_ids = {4};
            lay.m_ids = {5};
            Eigen::SparseMatrix<double> id(static_cast<Eigen::Index>(d),
                                           static_cast<Eigen::Index>(d));
            id.setIdentity();
            lay.d2_iso = {id};
            return lay;
        }
        const std::size_t m = b.r_s;
        const std::size_t w2 = pair_count(m);
        const std::size_t m2 = m * m;
        lay.dims = {m,  m,  m,  m,        // d1a d1b q1a q1b
                    w2, w2, m2,           // d2aa d2bb d2ab
                    w2, w2, m2,           // q2aa q2bb q2ab
                    2 * m2, m2, m2,       // g neutral / alpha-beta / beta-alpha
                    2 * w2, 2 * w2, 2 * m2};
        lay.d1_ids = {0, 1};
        lay.q1_ids = {2, 3};
        lay.d2_ids = {4, 5, 6};
        lay.q2_ids = {7, 8, 9};
        lay.g2_ids = {10, 11, 12};
        lay.m_ids = {13, 14, 15};

        const double irt2 = 1.0 / std::sqrt(2.0);
        auto same_spin_iso = [&](Spin s) {
            Eigen::SparseMatrix<double> u(static_cast<Eigen::Index>(r * r),
                                          static_cast<Eigen::Index>(w2));
            std::vector<Eigen::Triplet<double>> t;
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t bb = a + 1; bb < m; ++bb) {
                    const auto col = static_cast<int>(pair_index(a, bb, m));
                    t.emplace_back(static_cast<int>(b.so(a, s) * r + b.so(bb, s)), col, irt2);
                    t.emplace_back(static_cast<int>(b.so(bb, s) * r + b.so(a, s)), col, -irt2);
                }
            u.setFromTriplets(t.begin(), t.end());
            return u;
        };
        Eigen::SparseMatrix<double> uab(static_cast<Eigen::Index>(r * r),
                                        static_cast<Eigen::Index>(m2));
        {
            std::vector<Eigen::Triplet<double>> t;
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) {
                    const auto col = static_cast<int>(i * m + j);
                    t.emplace_back(static_cast<int>(b.so(i, Spin::alpha) * r + b.so(j, Spin::beta)),
                                   col, irt2);
                    t.emplace_back(static_cast<int>(b.so(j, Spin::beta) * r + b.so(i, Spin::alpha)),
                                   col, -irt2);
                }
            uab.setFromTriplets(t.begin(), t.end());
        }
        lay.d2_iso = {same_spin_iso(Spin::alpha), same_spin_iso(Spin::beta), std::move(uab)};
        return lay;
    }

    [[nodiscard]] std::vector<CoordPart> one_body(const std::vector<std::size_t>& ids,
                                                  std::size_t p, std::size_t q) const {
        if (!adapted) return {{ids[0], p, q, 1.0}};
        if (basis.spin_of(p) != basis.spin_of(q)) return {};
        const std::size_t blk = ids[basis.spin_of(p) == Spin::alpha ? 0 : 1];
        return {{blk, basis.spatial_of(p), basis.spatial_of(q), 1.0}};
    }

    /// Element mat(p*r + q, s*r + t) of an antisymmetric-pair family.
    [[nodiscard]] std::vector<CoordPart> pair_elem(const std::vector<std::size_t>& ids,
                                                   std::size_t p, std::size_t q, std::size_t s,
                                                   std::size_t t) const {
        const std::size_t r = basis.r;
        if (!adapted) return {{ids[0], p * r + q, s * r + t, 1.0}};
        const int cr = (basis.spin_of(p) == Spin::alpha ? 1 : 0) +
                       (basis.spin_of(q) == Spin::alpha ? 1 : 0);
        const int cc = (basis.spin_of(s) == Spin::alpha ? 1 : 0) +
                       (basis.spin_of(t) == Spin::alpha ? 1 : 0);
        if (cr != cc) return {};
        const std::size_t m = basis.r_s;
        if (cr == 2 || cr == 0) {
            std::size_t a = basis.spatial_of(p), b2 = basis.spatial_of(q);
            std::size_t c = basis.spatial_of(s), d = basis.spatial_of(t);
            if (a == b2 || c == d) return {};
            double sg = 0.5;  // stored block is twice the matrix element
            if (a > b2) {
                std::swap(a, b2);
                sg = -sg;
            }
            if (c > d) {
                std::swap(c, d);
                sg = -sg;
            }
            return {{ids[cr == 2 ? 0 : 1], pair_index(a, b2, m), pair_index(c, d, m), sg}};
        }
        double sg = 0.5;
        std::size_t i, j, k, l;
        if (basis.spin_of(p) == Spin::alpha) {
            i = basis.spatial_of(p);
            j = basis.spatial_of(q);
        } else {
            i = basis.spatial_of(q);
            j = basis.spatial_of(p);
            sg = -sg;
        }
        if (basis.spin_of(s) == Spin::alpha) {
            k = basis.spatial_of(s);
            l = basis.spatial_of(t);
        } else {
            k = basis.spatial_of(t);
            l = basis.spatial_of(s);
            sg = -sg;
        }
        return {{ids[2], i * m + j, k * m + l, sg}};
    }

    /// Element mat(p*r + q, s*r + t) of the particle-hole family.
    [[nodiscard]] std::vector<CoordPart> ph_elem(std::size_t p, std::size_t q, std::size_t s,
                                                 std::size_t t) const {
        const std::size_t r = basis.r;
        if (!adapted) return {{g2_ids[0], p * r + q, s * r + t, 1.0}};
        const int cr = (basis.spin_of(p) == Spin::alpha ? 1 : 0) -
                       (basis.spin_of(q) == Spin::alpha ? 1 : 0);
        const int cc = (basis.spin_of(s) == Spin::alpha ? 1 : 0) -
                       (basis.spin_of(t) == Spin::alpha ? 1 : 0);
        if (cr != cc) return {};
        const std::size_t m = basis.r_s;
        const std::size_t i = basis.spatial_of(p), j = basis.spatial_of(q);
        const std::size_t k = basis.spatial_of(s), l = basis.spatial_of(t);
        if (cr == 1) return {{g2_ids[1], i * m + j, k * m + l, 1.0}};
        if (cr == -1) return {{g2_ids[2], i * m + j, k * m + l, 1.0}};
        const std::size_t offr = (basis.spin_of(p) == Spin::beta ? m * m : 0) + i * m + j;
        const std::size_t offc = (basis.spin_of(s) == Spin::beta ? m * m : 0) + k * m + l;
        return {{g2_ids[0], offr, offc, 1.0}};
    }

    /// Stored-coordinate representatives (p, q) of the one-body family,
    /// upper triangle of each block in emission order.
    [[nodiscard]] std::vector<std::array<std::size_t, 2>> one_body_reps() const {
        std::vector<std::array<std::size_t, 2>> v;
        if (!adapted) {
            for (std::size_t p = 0; p < basis.r; ++p)
                for (std::size_t q = p; q < basis.r; ++q) v.push_back({p, q});
            return v;
        }
        for (const Spin s : {Spin::alpha, Spin::beta})
            for (std::size_t i = 0; i < basis.r_s; ++i)
                for (std::size_t j = i; j < basis.r_s; ++j)
                    v.push_back({basis.so(i, s), basis.so(j, s)});
        return v;
    }

    /// Representatives (p, q, s, t) of the pair family coordinates.
    [[nodiscard]] std::vector<std::array<std::size_t, 4>> pair_reps() const {
        std::vector<std::array<std::size_t, 4>> v;
        const std::size_t r = basis.r;
        if (!adapted) {
            const std::size_t d = r * r;
            for (std::size_t I = 0; I < d; ++I)
                for (std::size_t J = I; J < d; ++J) v.push_back({I / r, I % r, J / r, J % r});
            return v;
        }
        const std::size_t m = basis.r_s;
        std::vector<std::array<std::size_t, 2>> pairs;
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b2 = a + 1; b2 < m; ++b2) pairs.push_back({a, b2});
        for (const Spin s : {Spin::alpha, Spin::beta})
            for (std::size_t I = 0; I < pairs.size(); ++I)
                for (std::size_t J = I; J < pairs.size(); ++J)
                    v.push_back({basis.so(pairs[I][0], s), basis.so(pairs[I][1], s),
                                 basis.so(pairs[J][0], s), basis.so(pairs[J][1], s)});
        for (std::size_t I = 0; I < m * m; ++I)
            for (std::size_t J = I; J < m * m; ++J)
                v.push_back({basis.so(I / m, Spin::alpha), basis.so(I % m, Spin::beta),
                             basis.so(J / m, Spin::alpha), basis.so(J % m, Spin::beta)});
        return v;
    }

    /// Representatives of the particle-hole family coordinates.
    [[nodiscard]] std::vector<std::array<std::size_t, 4>> ph_reps() const {
        std::vector<std::array<std::size_t, 4>> v;
        const std::size_t r = basis.r;
        if (!adapted) {
            const std::size_t d = r * r;
            for (std::size_t I = 0; I < d; ++I)
                for (std::size_t J = I; J < d; ++J) v.push_back({I / r, I % r, J / r, J % r});
            return v;
        }
        const std::size_t m = basis.r_s;
        auto neutral = [&](std::size_t x) -> std::array<std::size_t, 2> {
            const Spin s = x < m * m ? Spin::alpha : Spin::beta;
            const std::size_t rest = x % (m * m);
            return {basis.so(rest / m, s), basis.so(rest % m, s)};
        };
        for (std::size_t I = 0; I < 2 * m * m; ++I)
            for (std::size_t J = I; J < 2 * m * m; ++J) {
                const auto a = neutral(I), b2 = neutral(J);
                v.push_back({a[0], a[1], b2[0], b2[1]});
            }
        for (std::size_t I = 0; I < m * m; ++I)
            for (std::size_t J = I; J < m * m; ++J)
                v.push_back({basis.so(I / m, Spin::alpha), basis.so(I % m, Spin::beta),
                             basis.so(J / m, Spin::alpha), basis.so(J % m, Spin::beta)});
        for (std::size_t I = 0; I < m * m; ++I)
            for (std::size_t J = I; J < m * m; ++J)
                v.push_back({basis.so(I / m, Spin::beta), basis.so(I % m, Spin::alpha),
                             basis.so(J / m, Spin::beta), basis.so(J % m, Spin::alpha)});
        return v;
    }
};

}  // namespace detail

/// The assembled reconstruction program plus the bookkeeping needed to swap
/// in new measured data (only the Schur link right-hand sides depend on it)
/// and to reassemble the full-index reconstruction from a solution.
struct ReconstructionProgram {
    SDPProblem problem;
    detail::ReconLayout layout;
    ReconstructionOptions options;
    std::vector<FamilyCount> families;
    std::vector<std::size_t> d2_family_sizes;
    std::vector<std::size_t> link_row_start;  // per d2 sector

    /// Right-hand side for a different measured D2 on the same layout.
    [[nodiscard]] VectorXr rhs_for(const TwoRDM& measured) const {
        if (measured.r != layout.basis.r)
            throw std::invalid_argument("rhs_for: dimension mismatch");
        VectorXr b = problem.b;
        const MatrixXr meas = measured.mat.real();
        for (std::size_t k = 0; k < layout.d2_ids.size(); ++k) {
            const auto w = static_cast<Eigen::Index>(problem.block_dims[layout.d2_ids[k]]);
            const MatrixXr mk = layout.d2_iso[k].transpose() * (meas * layout.d2_iso[k]);
            for (Eigen::Index i = 0; i < w; ++i)
                for (Eigen::Index j = 0; j < w; ++j)
                    b(static_cast<Eigen::Index>(link_row_start[k]) + i * w + j) = -mk(i, j);
        }
        return b;
    }
};

/// min Tr[F] over {D1, Q1, D2, Q2, G2, M} PSD subject to the marginal maps:
/// one-body completeness D1 + Q1 = I, contraction of D2 to D1, the hole and
/// particle-hole rearrangement maps, the D2 trace, pair antisymmetry, the
/// Schur coupling M = [[I, E], [E^T, F]] with E = D2 - measured, and optional
/// rows pinning the particle number, Sz, and S^2 expectations.  D1 is the
/// program's own variable, tied to D2 by the contraction rows, so the maps
/// stay noise-consistent with the measured data.
[[nodiscard]] inline ReconstructionProgram build_sdp_reconstruction(
    const TwoRDM& d2_measured, const SpinOrbitalBasis& basis,
    const ReconstructionOptions& opts = {}) {
    if (d2_measured.r != basis.r)
        throw std::invalid_argument("build_sdp_reconstruction: dimension mismatch");
    if (basis.n < 2) throw std::invalid_argument("build_sdp_reconstruction: need n >= 2");
    const double n_target =
        opts.fix_particle_number && opts.particle_number > 0.0
            ? opts.particle_number
            : static_cast<double>(basis.n);
    if (opts.fix_sz) {
        const double two_sz = 2.0 * opts.sz;
        const auto k = static_cast<long long>(std::llround(two_sz));
        const auto nn = static_cast<long long>(std::llround(n_target));
        if (std::abs(two_sz - static_cast<double>(k)) > 1e-9 || ((k - nn) % 2 != 0))
            throw std::invalid_argument("build_sdp_reconstruction: Sz target unreachable");
    }
    if (opts.fix_s2 && opts.s2 < -1e-12)
        throw std::invalid_argument("build_sdp_reconstruction: negative S^2 target");

    ReconstructionProgram prog;
    prog.layout = detail::ReconLayout::make(basis, opts.spin_adapted);
    prog.options = opts;
    const detail::ReconLayout& lay = prog.layout;
    const std::size_t r = basis.r;
    const double n = static_cast<double>(basis.n);

    SDPProblemBuilder bld(lay.dims);
    for (std::size_t k = 0; k < lay.m_ids.size(); ++k) {
        const std::size_t w = lay.dims[lay.d2_ids[k]];
        for (std::size_t i = 0; i < w; ++i) bld.cost(lay.m_ids[k], w + i, w + i, 1.0);
    }
    for (const std::size_t id : lay.d2_ids) prog.d2_family_sizes.push_back(lay.dims[id]);

    auto put = [&](const std::vector<detail::CoordPart>& parts, double scale) {
        if (scale == 0.0) return;
        for (const auto& pp : parts) bld.entry(pp.block, pp.i, pp.j, scale * pp.c);
    };
    auto family = [&](const char* name, std::size_t start) {
        prog.families.push_back({name, bld.rows() - start});
    };

    // One-body completeness: D1(p,q) + Q1(p,q) = delta_pq.
    std::size_t mark = bld.rows();
    for (const auto& [p, q] : lay.one_body_reps()) {
        bld.new_row(p == q ? 1.0 : 0.0);
        put(lay.one_body(lay.d1_ids, p, q), 1.0);
        put(lay.one_body(lay.q1_ids, p, q), 1.0);
    }
    family("one_marginal_sum", mark);

    // Contraction: sum_q D2(pq, sq) = (n-1) D1(p,s).
    mark = bld.rows();
    for (const auto& [p, s] : lay.one_body_reps()) {
        bld.new_row(0.0);
        for (std::size_t q = 0; q < r; ++q) put(lay.pair_elem(lay.d2_ids, p, q, s, q), 1.0);
        put(lay.one_body(lay.d1_ids, p, s), -(n - 1.0));
    }
    family("contraction", mark);

    // Hole map, one row per stored Q2 coordinate.
    mark = bld.rows();
    for (const auto& [p, q, s, t] : lay.pair_reps()) {
        const double dps = p == s ? 1.0 : 0.0, dqt = q == t ? 1.0 : 0.0;
        const double dpt = p == t ? 1.0 : 0.0, dqs = q == s ? 1.0 : 0.0;
        bld.new_row(dps * dqt - dpt * dqs);
        put(lay.pair_elem(lay.q2_ids, p, q, s, t), 1.0);
        put(lay.one_body(lay.d1_ids, s, p), dqt);
        put(lay.one_body(lay.d1_ids, s, q), -dpt);
        put(lay.one_body(lay.d1_ids, t, p), -dqs);
        put(lay.one_body(lay.d1_ids, t, q), dps);
        put(lay.pair_elem(lay.d2_ids, t, s, q, p), -1.0);
    }
    family("hole_map", mark);

    // Particle-hole map, one row per stored G2 coordinate.
    mark = bld.rows();
    for (const auto& [p, q, s, t] : lay.ph_reps()) {
        bld.new_row(0.0);
        put(lay.ph_elem(p, q, s, t), 1.0);
        put(lay.one_body(lay.d1_ids, p, s), -(q == t ? 1.0 : 0.0));
        put(lay.pair_elem(lay.d2_ids, p, t, s, q), 1.0);
    }
    family("particle_hole_map", mark);

    // Schur identity quadrant.
    mark = bld.rows();
    for (std::size_t k = 0; k < lay.m_ids.size(); ++k) {
        const std::size_t w = lay.dims[lay.d2_ids[k]];
        for (std::size_t i = 0; i < w; ++i)
            for (std::size_t j = i; j < w; ++j) {
                bld.new_row(i == j ? 1.0 : 0.0);
                bld.entry(lay.m_ids[k], i, j, 1.0);
            }
    }
    family("schur_identity", mark);

    // Schur link: M(i, w+j) - D2(i,j) = -measured(i,j), sector by sector.
    mark = bld.rows();
    const MatrixXr meas = d2_measured.mat.real();
    for (std::size_t k = 0; k < lay.m_ids.size(); ++k) {
        const std::size_t w = lay.dims[lay.d2_ids[k]];
        const MatrixXr mk = lay.d2_iso[k].transpose() * (meas * lay.d2_iso[k]);
        prog.link_row_start.push_back(bld.rows());
        for (std::size_t i = 0; i < w; ++i)
            for (std::size_t j = 0; j < w; ++j) {
                bld.new_row(-mk(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
                bld.entry(lay.m_ids[k], i, w + j, 1.0);
                bld.entry(lay.d2_ids[k], i, j, -1.0);
            }
    }
    family("schur_link", mark);

    // D2 trace.  Skipped when the particle-number row is active: that row
    // together with the contraction rows already forces Tr D2 = n(n-1), and
    // keeping both would make AA^T singular.
    mark = bld.rows();
    if (!opts.fix_particle_number) {
        bld.new_row(n * (n - 1.0));
        for (std::size_t p = 0; p < r; ++p)
            for (std::size_t q = 0; q < r; ++q) put(lay.pair_elem(lay.d2_ids, p, q, p, q), 1.0);
    }
    family("pair_trace", mark);

    // Pair antisymmetry.  Adapted coordinates build it in; the full layout
    // gets one row per basis element of the orthogonal complement of the
    // doubly antisymmetric symmetric forms (symmetric-pair rows), which keeps
    // the row set linearly independent.
    mark = bld.rows();
    if (!lay.adapted) {
        const std::size_t blk = lay.d2_ids[0];
        std::vector<std::array<std::size_t, 2>> sym;
        for (std::size_t p = 0; p < r; ++p)
            for (std::size_t q = p; q < r; ++q) sym.push_back({p, q});
        auto images = [&](const std::array<std::size_t, 2>& pr) {
            std::vector<std::size_t> out{pr[0] * r + pr[1]};
            if (pr[0] != pr[1]) out.push_back(pr[1] * r + pr[0]);
            return out;
        };
        for (std::size_t a = 0; a < sym.size(); ++a)
            for (std::size_t b2 = a; b2 < sym.size(); ++b2) {
                bld.new_row(0.0);
                for (const std::size_t x : images(sym[a]))
                    for (const std::size_t y : images(sym[b2])) bld.entry(blk, x, y, 1.0);
            }
        for (const auto& sg : sym)
            for (std::size_t s = 0; s < r; ++s)
                for (std::size_t t = s + 1; t < r; ++t) {
                    bld.new_row(0.0);
                    for (const std::size_t x : images(sg)) {
                        bld.entry(blk, x, s * r + t, 1.0);
                        bld.entry(blk, x, t * r + s, -1.0);
                    }
                }
    }
    family("antisymmetry", mark);

    // Optional expectation rows over (D1, D2).
    auto operator_row = [&](const FermionOperatorSum& op, double target) {
        const FermionOperatorSum no = op.normal_ordered();
        double constant = 0.0;
        for (const auto& [w, c] : no.terms()) {
            if (std::abs(c.imag()) > 1e-10)
                throw std::invalid_argument("build_sdp_reconstruction: complex operator row");
            if (w.empty()) constant += c.real();
        }
        bld.new_row(target - constant);
        for (const auto& [w, c] : no.terms()) {
            if (w.empty()) continue;
            if (w.size() == 2) {
                put(lay.one_body(lay.d1_ids, w[0].mode, w[1].mode), c.real());
            } else if (w.size() == 4) {
                put(lay.pair_elem(lay.d2_ids, w[0].mode, w[1].mode, w[3].mode, w[2].mode),
                    c.real());
            } else {
                throw std::logic_error("build_sdp_reconstruction: operator beyond two-body");
            }
        }
    };
    mark = bld.rows();
    if (opts.fix_particle_number) operator_row(build_number_operator(r), n_target);
    family("particle_number", mark);
    mark = bld.rows();
    if (opts.fix_sz) operator_row(build_sz_operator(basis), opts.sz);
    family("spin_z", mark);
    mark = bld.rows();
    if (opts.fix_s2) operator_row(build_s2_operator(basis), opts.s2);
    family("spin_squared", mark);

    prog.problem = bld.finish();
    return prog;
}

/// Full-index reconstruction assembled from the solved D2 blocks.
[[nodiscard]] inline TwoRDM reconstruct_d2(const ReconstructionProgram& prog,
                                           const SDPSolution& sol) {
    const std::size_t r = prog.layout.basis.r;
    MatrixXr full = MatrixXr::Zero(static_cast<Eigen::Index>(r * r),
                                   static_cast<Eigen::Index>(r * r));
    for (std::size_t k = 0; k < prog.layout.d2_ids.size(); ++k) {
        const auto& u = prog.layout.d2_iso[k];
        full += u * sol.X[prog.layout.d2_ids[k]] * u.transpose();
    }
    TwoRDM out(r);
    out.mat = full.cast<Complex>();
    return out;
}

}  // namespace rdmkit
