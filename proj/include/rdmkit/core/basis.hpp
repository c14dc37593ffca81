// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>

namespace rdmkit {

/// Spin labels for spin orbitals.  Interleaved ordering puts alpha on even
/// indices and beta on odd indices: spin orbital = 2 * spatial + spin.
enum class Spin : int { alpha = 0, beta = 1 };

enum class SpinOrdering { interleaved, blocked };

/// Describes the single-particle basis: r spin orbitals over r_s spatial
/// orbitals, n particles, eta = r - n holes.
struct SpinOrbitalBasis {
    std::size_t r = 0;    // spin orbitals, r = 2 * r_s
    std::size_t r_s = 0;  // spatial orbitals
    std::size_t n = 0;    // particles
    SpinOrdering ordering = SpinOrdering::interleaved;

    SpinOrbitalBasis() = default;

    SpinOrbitalBasis(std::size_t spatial_orbitals, std::size_t particles,
                     SpinOrdering ord = SpinOrdering::interleaved)
        : r(2 * spatial_orbitals), r_s(spatial_orbitals), n(particles), ordering(ord) {
        if (n > r) throw std::invalid_argument("SpinOrbitalBasis: n > r");
    }

    /// Hole count eta = r - n.
    [[nodiscard]] std::size_t eta() const { return r - n; }

    /// Spin orbital index of (spatial, spin) under the interleaved ordering.
    [[nodiscard]] std::size_t so(std::size_t spatial, Spin s) const {
        if (ordering != SpinOrdering::interleaved)
            return spatial + (s == Spin::beta ? r_s : 0);
        return 2 * spatial + (s == Spin::beta ? 1 : 0);
    }

    [[nodiscard]] Spin spin_of(std::size_t spin_orbital) const {
        if (ordering != SpinOrdering::interleaved)
            return spin_orbital < r_s ? Spin::alpha : Spin::beta;
        return (spin_orbital % 2 == 0) ? Spin::alpha : Spin::beta;
    }

    [[nodiscard]] std::size_t spatial_of(std::size_t spin_orbital) const {
        if (ordering != SpinOrdering::interleaved)
            return spin_orbital % r_s;
        return spin_orbital / 2;
    }
};

}  // namespace rdmkit
