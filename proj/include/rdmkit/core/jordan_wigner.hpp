// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rdmkit/core/fermion_op.hpp"
#include "rdmkit/core/qubit_op.hpp"

namespace rdmkit {

namespace detail {

/// One Pauli string with phase, used while multiplying out ladder images.
struct PhasedPauli {
    std::complex<double> coeff;
    PauliString p;
};

/// Multiplies accumulated strings by the two-string image of one ladder
/// operator: a_m   = Z_{<m} (X_m + i Y_m) / 2,
///           a+_m  = Z_{<m} (X_m - i Y_m) / 2.
inline void multiply_ladder_image(std::vector<PhasedPauli>& acc, std::uint32_t mode,
                                  bool create) {
    const std::uint64_t parity = (mode == 0) ? 0 : ((1ull << mode) - 1);
    const PauliString px{1ull << mode, parity};           // X_m Z_{<m}
    const PauliString py{1ull << mode, parity | (1ull << mode)};  // Y_m Z_{<m}
    const std::complex<double> yfac = create ? std::complex<double>{0.0, -0.5}
                                             : std::complex<double>{0.0, 0.5};
    std::vector<PhasedPauli> next;
    next.reserve(acc.size() * 2);
    for (const auto& t : acc) {
        for (const auto& [factor, rhs] : {std::pair{std::complex<double>{0.5, 0.0}, px},
                                          std::pair{yfac, py}}) {
            auto [p, phase] = pauli_multiply(t.p, rhs);
            next.push_back({t.coeff * factor * phase, p});
        }
    }
    acc = std::move(next);
}

}  // namespace detail

/// Jordan-Wigner transform: mode k maps to qubit k, with the parity string
/// over lower modes.  On computational basis states this reproduces the
/// determinant sign convention (parity of occupied modes below k), so
/// fermionic state vectors and qubit state vectors carry identical
/// amplitudes.  Linear: JW(aA + bB) = a JW(A) + b JW(B).
[[nodiscard]] inline QubitOperatorSum jordan_wigner(const FermionOperatorSum& op) {
    if (op.mode_count() > 64)
        throw std::invalid_argument("jordan_wigner: more than 64 modes");
    QubitOperatorSum out;
    for (const auto& [word, coeff] : op.terms()) {
        std::vector<detail::PhasedPauli> acc{{{1.0, 0.0}, PauliString{}}};
        for (const auto& lop : word) detail::multiply_ladder_image(acc, lop.mode, lop.create);
        for (const auto& t : acc) out.add(t.p, coeff * t.coeff);
    }
    out.prune();
    return out;
}

}  // namespace rdmkit
