// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rdmkit/core/basis.hpp"
#include "rdmkit/core/fermion_op.hpp"
#include "rdmkit/core/rdm.hpp"
#include "rdmkit/core/wedge.hpp"
#include "rdmkit/oracle/determinants.hpp"

namespace rdmkit {

/// Full-Fock-space density matrix over 2^r occupation states, indexed by
/// determinant bitmask (Jordan-Wigner computational-basis identification).
struct DensityMatrix {
    std::size_t r = 0;  // modes
    MatrixXc rho;

    DensityMatrix() = default;
    explicit DensityMatrix(std::size_t modes)
        : r(modes), rho(MatrixXc::Zero(std::size_t{1} << modes, std::size_t{1} << modes)) {}

    [[nodiscard]] static DensityMatrix pure(std::size_t modes, const VectorXc& fock_state) {
        DensityMatrix d(modes);
        d.rho = fock_state * fock_state.adjoint();
        return d;
    }

    [[nodiscard]] Complex trace() const { return rho.trace(); }
};

/// Embeds a sector state vector into the full Fock space.
[[nodiscard]] inline VectorXc embed_in_fock(const SectorBasis& sector, const VectorXr& v) {
    VectorXc out = VectorXc::Zero(Eigen::Index{1} << sector.basis.r);
    for (std::size_t i = 0; i < sector.dim(); ++i)
        out(static_cast<Eigen::Index>(sector.dets[i])) = v(static_cast<Eigen::Index>(i));
    return out;
}

namespace detail {

/// <bra| a+_p a_q |ket> accumulated over a sector basis.
template <typename Vec>
MatrixXc one_rdm_from_sector(const SectorBasis& sector, const Vec& v) {
    const std::size_t r = sector.basis.r;
    MatrixXc d1 = MatrixXc::Zero(r, r);
    for (std::size_t col = 0; col < sector.dim(); ++col) {
        const auto amp = v(static_cast<Eigen::Index>(col));
        if (amp == Complex{0.0, 0.0}) continue;
        for (std::uint32_t q = 0; q < r; ++q) {
            auto r1 = apply_ladder(sector.dets[col], q, false);
            if (!r1) continue;
            for (std::uint32_t p = 0; p < r; ++p) {
                auto r2 = apply_ladder(r1->first, p, true);
                if (!r2) continue;
                auto it = sector.index.find(r2->first);
                if (it == sector.index.end()) continue;
                const auto bra = v(static_cast<Eigen::Index>(it->second));
                d1(p, q) += std::conj(bra) * amp * double(r1->second * r2->second);
            }
        }
    }
    return d1;
}

template <typename Vec>
MatrixXc two_rdm_from_sector(const SectorBasis& sector, const Vec& v) {
    const std::size_t r = sector.basis.r;
    MatrixXc d2 = MatrixXc::Zero(r * r, r * r);
    // mat(p*r+q, s*r+t) = <a+_p a+_q a_t a_s>, rightmost operator first.
    for (std::size_t col = 0; col < sector.dim(); ++col) {
        const auto amp = v(static_cast<Eigen::Index>(col));
        if (amp == Complex{0.0, 0.0}) continue;
        for (std::uint32_t s = 0; s < r; ++s) {
            auto r1 = apply_ladder(sector.dets[col], s, false);
            if (!r1) continue;
            for (std::uint32_t t = 0; t < r; ++t) {
                auto r2 = apply_ladder(r1->first, t, false);
                if (!r2) continue;
                for (std::uint32_t q = 0; q < r; ++q) {
                    auto r3 = apply_ladder(r2->first, q, true);
                    if (!r3) continue;
                    for (std::uint32_t p = 0; p < r; ++p) {
                        auto r4 = apply_ladder(r3->first, p, true);
                        if (!r4) continue;
                        auto it = sector.index.find(r4->first);
                        if (it == sector.index.end()) continue;
                        const auto bra = v(static_cast<Eigen::Index>(it->second));
                        const int sign = r1->second * r2->second * r3->second * r4->second;
                        d2(p * r + q, s * r + t) += std::conj(bra) * amp * double(sign);
                    }
                }
            }
        }
    }
    return d2;
}

}  // namespace detail

/// Measures (1-RDM, 2-RDM) from a normalized sector state vector.
[[nodiscard]] inline std::pair<OneRDM, TwoRDM> measure_rdms(const SectorBasis& sector,
                                                            const VectorXr& v,
                                                            double norm_tol = 1e-8) {
    if (std::abs(v.norm() - 1.0) > norm_tol)
        throw std::invalid_argument("measure_rdms: state not normalized");
    VectorXc vc = v.cast<Complex>();
    OneRDM d1(detail::one_rdm_from_sector(sector, vc));
    TwoRDM d2(sector.basis.r, detail::two_rdm_from_sector(sector, vc));
    return {std::move(d1), std::move(d2)};
}

[[nodiscard]] inline std::pair<OneRDM, TwoRDM> measure_rdms(const SectorBasis& sector,
                                                            const VectorXc& v,
                                                            double norm_tol = 1e-8) {
    if (std::abs(v.norm() - 1.0) > norm_tol)
        throw std::invalid_argument("measure_rdms: state not normalized");
    OneRDM d1(detail::one_rdm_from_sector(sector, v));
    TwoRDM d2(sector.basis.r, detail::two_rdm_from_sector(sector, v));
    return {std::move(d1), std::move(d2)};
}

/// <v| word |v> over a sector basis (applies the rightmost operator first;
/// paths leaving the sector contribute zero).
[[nodiscard]] inline Complex word_expectation(const SectorBasis& sector, const VectorXc& v,
                                              const LadderWord& w) {
    Complex acc{0.0, 0.0};
    for (std::size_t col = 0; col < sector.dim(); ++col) {
        const auto amp = v(static_cast<Eigen::Index>(col));
        if (amp == Complex{0.0, 0.0}) continue;
        auto res = apply_word(sector.dets[col], w);
        if (!res) continue;
        auto it = sector.index.find(res->first);
        if (it == sector.index.end()) continue;
        acc += std::conj(v(static_cast<Eigen::Index>(it->second))) * amp * double(res->second);
    }
    return acc;
}

/// Measures the rank-p marginal in pair normalization,
///   T^{i1..ip}_{j1..jp} = (1/p!) <a+_{i1}..a+_{ip} a_{jp}..a_{j1}>.
/// Only strictly increasing index tuples are evaluated; the rest follow by
/// antisymmetry, which also serves as a cross-check on the wedge algebra.
[[nodiscard]] inline AntisymTensor measure_rdm_tensor(const SectorBasis& sector,
                                                      const VectorXc& v, std::size_t p,
                                                      double imag_tol = 1e-10) {
    const std::size_t r = sector.basis.r;
    AntisymTensor t(r, p);
    const std::size_t side = t.side();

    // All strictly increasing p-tuples over r modes.
    std::vector<std::vector<std::size_t>> tuples;
    std::vector<std::size_t> cur(p);
    for (std::size_t k = 0; k < p; ++k) cur[k] = k;
    if (p <= r) {
        while (true) {
            tuples.push_back(cur);
            std::size_t i = p;
            while (i > 0 && cur[i - 1] == r - p + i - 1) --i;
            if (i == 0) break;
            ++cur[i - 1];
            for (std::size_t j = i; j < p; ++j) cur[j] = cur[j - 1] + 1;
        }
    }

    // Permutations of 0..p-1 with parities.
    std::vector<std::pair<std::vector<std::size_t>, double>> perms;
    std::vector<std::size_t> perm(p);
    for (std::size_t k = 0; k < p; ++k) perm[k] = k;
    do {
        std::size_t inv = 0;
        for (std::size_t a = 0; a < p; ++a)
            for (std::size_t b = a + 1; b < p; ++b)
                if (perm[a] > perm[b]) ++inv;
        perms.emplace_back(perm, inv % 2 == 0 ? 1.0 : -1.0);
    } while (std::next_permutation(perm.begin(), perm.end()));

    const double inv_pfact = 1.0 / double(detail::factorial(p));
    for (const auto& up : tuples) {
        for (const auto& lo : tuples) {
            LadderWord w;
            for (std::size_t k = 0; k < p; ++k)
                w.push_back({static_cast<std::uint32_t>(up[k]), true});
            for (std::size_t k = p; k-- > 0;)
                w.push_back({static_cast<std::uint32_t>(lo[k]), false});
            const Complex e = word_expectation(sector, v, w);
            if (std::abs(e.imag()) > imag_tol)
                throw std::runtime_error("measure_rdm_tensor: imaginary part exceeds tolerance");
            const double val = e.real() * inv_pfact;
            if (val == 0.0) continue;
            for (const auto& [pu, su] : perms) {
                std::size_t uf = 0;
                for (std::size_t k = 0; k < p; ++k) uf = uf * r + up[pu[k]];
                for (const auto& [pl, sl] : perms) {
                    std::size_t lf = 0;
                    for (std::size_t k = 0; k < p; ++k) lf = lf * r + lo[pl[k]];
                    t.data[uf * side + lf] = su * sl * val;
                }
            }
        }
    }
    return t;
}

/// Tr[word * rho] over the full Fock space.
[[nodiscard]] inline Complex word_expectation(const DensityMatrix& dm, const LadderWord& w) {
    Complex acc{0.0, 0.0};
    for (Det d = 0; d < (Det{1} << dm.r); ++d) {
        auto res = apply_word(d, w);
        if (!res) continue;
        acc += double(res->second) * dm.rho(static_cast<Eigen::Index>(d),
                                            static_cast<Eigen::Index>(res->first));
    }
    return acc;
}

/// Measures (1-RDM, 2-RDM) from a Fock-space density matrix:
/// D^p_q = Tr[a+_p a_q rho], etc.
[[nodiscard]] inline std::pair<OneRDM, TwoRDM> measure_rdms(const DensityMatrix& dm,
                                                            double trace_tol = 1e-8) {
    if (std::abs(dm.trace() - Complex{1.0, 0.0}) > trace_tol)
        throw std::invalid_argument("measure_rdms: density matrix trace != 1");
    const std::size_t r = dm.r;
    OneRDM d1(r);
    TwoRDM d2(r);
    // Tr[W rho] accumulated by walking rho columns through the word action.
    for (Det d = 0; d < (Det{1} << r); ++d) {
        for (std::uint32_t q = 0; q < r; ++q) {
            auto r1 = apply_ladder(d, q, false);
            if (!r1) continue;
            for (std::uint32_t p = 0; p < r; ++p) {
                auto r2 = apply_ladder(r1->first, p, true);
                if (!r2) continue;
                d1.mat(p, q) += double(r1->second * r2->second) *
                                dm.rho(static_cast<Eigen::Index>(d),
                                       static_cast<Eigen::Index>(r2->first));
            }
        }
    }
    for (Det d = 0; d < (Det{1} << r); ++d) {
        for (std::uint32_t s = 0; s < r; ++s) {
            auto r1 = apply_ladder(d, s, false);
            if (!r1) continue;
            for (std::uint32_t t = 0; t < r; ++t) {
                auto r2 = apply_ladder(r1->first, t, false);
                if (!r2) continue;
                for (std::uint32_t q = 0; q < r; ++q) {
                    auto r3 = apply_ladder(r2->first, q, true);
                    if (!r3) continue;
                    for (std::uint32_t p = 0; p < r; ++p) {
                        auto r4 = apply_ladder(r3->first, p, true);
                        if (!r4) continue;
                        const int sign = r1->second * r2->second * r3->second * r4->second;
                        d2.mat(static_cast<Eigen::Index>(p * r + q),
                               static_cast<Eigen::Index>(s * r + t)) +=
                            double(sign) * dm.rho(static_cast<Eigen::Index>(d),
                                                  static_cast<Eigen::Index>(r4->first));
                    }
                }
            }
        }
    }
    return {std::move(d1), std::move(d2)};
}

}  // namespace rdmkit
