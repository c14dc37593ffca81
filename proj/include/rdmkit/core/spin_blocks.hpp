// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "rdmkit/core/basis.hpp"
#include "rdmkit/core/rdm.hpp"

namespace rdmkit {

/// Flat index of the ordered spatial pair i < j among the C(r_s, 2) pairs,
/// pairs enumerated lexicographically: (0,1), (0,2), ..., (0,r_s-1), (1,2), ...
[[nodiscard]] inline std::size_t pair_index(std::size_t i, std::size_t j, std::size_t r_s) {
    if (i >= j || j >= r_s) throw std::invalid_argument("pair_index: need i < j < r_s");
    return i * r_s - i * (i + 1) / 2 + (j - i - 1);
}

[[nodiscard]] inline std::size_t pair_count(std::size_t r_s) { return r_s * (r_s - 1) / 2; }

/// Spin-sector decomposition of a 2-RDM for an Sz eigenstate.  Same-spin
/// sectors are stored in the antisymmetric-pair (wedge) basis, which is an
/// isometry onto their support:
///   aa(ij, kl) = 2 D(i_a j_a, k_a l_a)   for spatial i < j, k < l,
/// so Frobenius norms, traces, and spectra of the nonzero part carry over
/// unchanged.  The opposite-spin sector keeps the full product basis:
///   ab(ij, kl) = D(i_a j_b, k_a l_b).
/// The beta-alpha sector is determined by ab through double antisymmetry and
/// is not stored.
struct SpinBlockedTwoRDM {
    std::size_t r_s = 0;
    MatrixXc aa;
    MatrixXc bb;
    MatrixXc ab;
};

[[nodiscard]] inline SpinBlockedTwoRDM spin_blocks(const TwoRDM& d2,
                                                   const SpinOrbitalBasis& basis) {
    if (d2.r != basis.r) throw std::invalid_argument("spin_blocks: dimension mismatch");
    const std::size_t r_s = basis.r_s;
    const std::size_t np = pair_count(r_s);
    SpinBlockedTwoRDM out;
    out.r_s = r_s;
    out.aa = MatrixXc::Zero(np, np);
    out.bb = MatrixXc::Zero(np, np);
    out.ab = MatrixXc::Zero(r_s * r_s, r_s * r_s);

    auto same_spin = [&](Spin s, MatrixXc& blk) {
        for (std::size_t i = 0; i < r_s; ++i)
            for (std::size_t j = i + 1; j < r_s; ++j)
                for (std::size_t k = 0; k < r_s; ++k)
                    for (std::size_t l = k + 1; l < r_s; ++l)
                        blk(static_cast<Eigen::Index>(pair_index(i, j, r_s)),
                            static_cast<Eigen::Index>(pair_index(k, l, r_s))) =
                            2.0 * d2(basis.so(i, s), basis.so(j, s), basis.so(k, s),
                                     basis.so(l, s));
    };
    same_spin(Spin::alpha, out.aa);
    same_spin(Spin::beta, out.bb);

    for (std::size_t i = 0; i < r_s; ++i)
        for (std::size_t j = 0; j < r_s; ++j)
            for (std::size_t k = 0; k < r_s; ++k)
                for (std::size_t l = 0; l < r_s; ++l)
                    out.ab(static_cast<Eigen::Index>(i * r_s + j),
                           static_cast<Eigen::Index>(k * r_s + l)) =
                        d2(basis.so(i, Spin::alpha), basis.so(j, Spin::beta),
                           basis.so(k, Spin::alpha), basis.so(l, Spin::beta));
    return out;
}

/// Inverse of spin_blocks on the spin-structured subspace: rebuilds every
/// element implied by antisymmetry and Sz conservation, zeros elsewhere.
[[nodiscard]] inline TwoRDM reassemble(const SpinBlockedTwoRDM& blocks,
                                       const SpinOrbitalBasis& basis) {
    if (blocks.r_s != basis.r_s) throw std::invalid_argument("reassemble: dimension mismatch");
    const std::size_t r_s = basis.r_s;
    TwoRDM d2(basis.r);

    auto same_spin = [&](Spin s, const MatrixXc& blk) {
        for (std::size_t i = 0; i < r_s; ++i)
            for (std::size_t j = i + 1; j < r_s; ++j)
                for (std::size_t k = 0; k < r_s; ++k)
                    for (std::size_t l = k + 1; l < r_s; ++l) {
                        const Complex v =
                            0.5 * blk(static_cast<Eigen::Index>(pair_index(i, j, r_s)),
                                      static_cast<Eigen::Index>(pair_index(k, l, r_s)));
                        const std::size_t a = basis.so(i, s), b = basis.so(j, s);
                        const std::size_t c = basis.so(k, s), d = basis.so(l, s);
                        d2(a, b, c, d) = v;
                        d2(b, a, c, d) = -v;
                        d2(a, b, d, c) = -v;
                        d2(b, a, d, c) = v;
                    }
    };
    same_spin(Spin::alpha, blocks.aa);
    same_spin(Spin::beta, blocks.bb);

    for (std::size_t i = 0; i < r_s; ++i)
        for (std::size_t j = 0; j < r_s; ++j)
            for (std::size_t k = 0; k < r_s; ++k)
                for (std::size_t l = 0; l < r_s; ++l) {
                    const Complex v = blocks.ab(static_cast<Eigen::Index>(i * r_s + j),
                                                static_cast<Eigen::Index>(k * r_s + l));
                    const std::size_t a = basis.so(i, Spin::alpha), b = basis.so(j, Spin::beta);
                    const std::size_t c = basis.so(k, Spin::alpha), d = basis.so(l, Spin::beta);
                    d2(a, b, c, d) = v;
                    d2(b, a, c, d) = -v;
                    d2(a, b, d, c) = -v;
                    d2(b, a, d, c) = v;
                }
    return d2;
}

/// Largest element the spin-block model cannot represent: anything that
/// changes total Sz between the bra and ket pair.  Zero (to rounding) for
/// any Sz eigenstate; a projection target for noisy data.
[[nodiscard]] inline double spin_structure_defect(const TwoRDM& d2,
                                                  const SpinOrbitalBasis& basis) {
    if (d2.r != basis.r) throw std::invalid_argument("spin_structure_defect: dimension mismatch");
    const std::size_t r = basis.r;
    double worst = 0.0;
    for (std::size_t p = 0; p < r; ++p)
        for (std::size_t q = 0; q < r; ++q)
            for (std::size_t s = 0; s < r; ++s)
                for (std::size_t t = 0; t < r; ++t) {
                    const int sz_ket = (basis.spin_of(p) == Spin::alpha ? 1 : -1) +
                                       (basis.spin_of(q) == Spin::alpha ? 1 : -1);
                    const int sz_bra = (basis.spin_of(s) == Spin::alpha ? 1 : -1) +
                                       (basis.spin_of(t) == Spin::alpha ? 1 : -1);
                    if (sz_ket != sz_bra) worst = std::max(worst, std::abs(d2(p, q, s, t)));
                }
    return worst;
}

}  // namespace rdmkit
