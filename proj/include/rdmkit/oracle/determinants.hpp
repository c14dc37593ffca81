// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "rdmkit/core/basis.hpp"
#include "rdmkit/core/fermion_op.hpp"

namespace rdmkit {

/// Occupation-number basis state as a bitmask: bit k set means spin
/// orbital k occupied.  Amplitude conventions follow the ordered product
/// a+_{k1} a+_{k2} ... |vac> with k1 < k2 < ..., which matches the
/// Jordan-Wigner computational-basis identification.
using Det = std::uint64_t;

/// Applies a_k (create = false) or a+_k (create = true) to a determinant.
/// Returns the resulting determinant and the fermionic sign, or nullopt if
/// the result vanishes.  Sign is the parity of occupied modes below k.
[[nodiscard]] inline std::optional<std::pair<Det, int>> apply_ladder(Det d, std::uint32_t k,
                                                                     bool create) {
    const Det bit = Det{1} << k;
    if (create ? (d & bit) : !(d & bit)) return std::nullopt;
    const int sign = (std::popcount(d & (bit - 1)) % 2 == 0) ? 1 : -1;
    return std::pair{d ^ bit, sign};
}

/// Applies a ladder word (leftmost operator acts last) to a determinant.
[[nodiscard]] inline std::optional<std::pair<Det, int>> apply_word(Det d, const LadderWord& w) {
    int sign = 1;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        auto r = apply_ladder(d, it->mode, it->create);
        if (!r) return std::nullopt;
        d = r->first;
        sign *= r->second;
    }
    return std::pair{d, sign};
}

/// Fixed (n_alpha, n_beta) determinant sector over a spin-orbital basis.
/// Determinants are sorted ascending as integers (canonical order).
struct SectorBasis {
    SpinOrbitalBasis basis;
    std::size_t n_alpha = 0;
    std::size_t n_beta = 0;
    std::vector<Det> dets;
    std::unordered_map<Det, std::size_t> index;

    SectorBasis() = default;

    SectorBasis(const SpinOrbitalBasis& b, std::size_t na, std::size_t nb)
        : basis(b), n_alpha(na), n_beta(nb) {
        if (na + nb > b.r) throw std::invalid_argument("SectorBasis: too many particles");
        Det alpha_mask = 0, beta_mask = 0;
        for (std::size_t i = 0; i < b.r; ++i)
            (b.spin_of(i) == Spin::alpha ? alpha_mask : beta_mask) |= Det{1} << i;
        for (Det d = 0; d < (Det{1} << b.r); ++d) {
            if (std::popcount(d & alpha_mask) == static_cast<int>(na) &&
                std::popcount(d & beta_mask) == static_cast<int>(nb))
                dets.push_back(d);
        }
        index.reserve(dets.size());
        for (std::size_t i = 0; i < dets.size(); ++i) index.emplace(dets[i], i);
    }

    /// Spin-agnostic sector: all determinants with total particle count n
    /// over m modes (used by the concentration studies, where modes carry
    /// no spin interpretation).
    [[nodiscard]] static SectorBasis particle_number_sector(std::size_t m, std::size_t n) {
        if (n > m) throw std::invalid_argument("particle_number_sector: n > m");
        SectorBasis s;
        s.basis.r = m;  // m spinless modes; r_s/spin fields are not meaningful here
        s.basis.r_s = m;
        s.basis.n = n;
        s.n_alpha = n;
        s.n_beta = 0;
        for (Det d = 0; d < (Det{1} << m); ++d)
            if (std::popcount(d) == static_cast<int>(n)) s.dets.push_back(d);
        s.index.reserve(s.dets.size());
        for (std::size_t i = 0; i < s.dets.size(); ++i) s.index.emplace(s.dets[i], i);
        return s;
    }

    /// Sector selected by total particle count and spin projection:
    /// n_alpha - n_beta = ms2 with n_alpha + n_beta = b.n.
    [[nodiscard]] static SectorBasis ms2_sector(const SpinOrbitalBasis& b, int ms2) {
        const long na2 = static_cast<long>(b.n) + ms2;
        if (na2 < 0 || na2 % 2 != 0)
            throw std::invalid_argument("ms2_sector: incompatible particle count and ms2");
        const auto na = static_cast<std::size_t>(na2 / 2);
        if (na > b.n) throw std::invalid_argument("ms2_sector: ms2 out of range");
        return SectorBasis(b, na, b.n - na);
    }

    /// Whole Fock space over m spinless modes (all 2^m occupation states).
    [[nodiscard]] static SectorBasis full_space(std::size_t m) {
        SectorBasis s;
        s.basis.r = m;
        s.basis.r_s = m;
        s.basis.n = 0;  // not a fixed-number sector
        for (Det d = 0; d < (Det{1} << m); ++d) s.dets.push_back(d);
        s.index.reserve(s.dets.size());
        for (std::size_t i = 0; i < s.dets.size(); ++i) s.index.emplace(s.dets[i], i);
        return s;
    }

    [[nodiscard]] std::size_t dim() const { return dets.size(); }
};

}  // namespace rdmkit
