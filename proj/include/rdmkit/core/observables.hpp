// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>

#include "rdmkit/core/basis.hpp"
#include "rdmkit/core/fermion_op.hpp"
#include "rdmkit/core/rdm.hpp"

namespace rdmkit {

/// Expectation of an at-most-two-body operator against a (D1, D2) pair.
/// The operator is normal ordered first, so hole and particle-hole words
/// are handled through the anticommutation expansion.  Throws if any
/// normal-ordered word is unbalanced or longer than four operators: such
/// expectations are not functions of the one- and two-particle marginals.
[[nodiscard]] inline Complex expectation_value(const FermionOperatorSum& op, const OneRDM& d1,
                                               const TwoRDM& d2) {
    const std::size_t n_modes = d2.r;
    if (d1.dim() != n_modes)
        throw std::invalid_argument("expectation_value: D1/D2 dimension mismatch");
    if (op.mode_count() > n_modes)
        throw std::invalid_argument("expectation_value: operator mode out of range");
    Complex acc{0.0, 0.0};
    const FermionOperatorSum no = op.normal_ordered();  // named: terms() borrows from it
    for (const auto& [w, c] : no.terms()) {
        if (w.empty()) {
            acc += c;
        } else if (w.size() == 2) {
            if (!(w[0].create && !w[1].create))
                throw std::invalid_argument("expectation_value: unbalanced 2-word");
            acc += c * d1.mat(w[0].mode, w[1].mode);
        } else if (w.size() == 4) {
            if (!(w[0].create && w[1].create && !w[2].create && !w[3].create))
                throw std::invalid_argument("expectation_value: unbalanced 4-word");
            // a+_p a+_q a_s a_r: row (p, q), column pair reads a_s a_r with
            // r rightmost, so the column composite index is r * N + s.
            acc += c * d2.mat(static_cast<Eigen::Index>(w[0].mode * n_modes + w[1].mode),
                              static_cast<Eigen::Index>(w[3].mode * n_modes + w[2].mode));
        } else {
            throw std::invalid_argument("expectation_value: operator is more than two-body");
        }
    }
    return acc;
}

/// Total number operator sum_p a+_p a_p.
[[nodiscard]] inline FermionOperatorSum build_number_operator(std::size_t r) {
    FermionOperatorSum op;
    for (std::uint32_t p = 0; p < r; ++p) op.add_one_body(p, p, 1.0);
    return op;
}

/// S_z = (1/2) sum_i (n_{i alpha} - n_{i beta}) over spatial orbitals.
[[nodiscard]] inline FermionOperatorSum build_sz_operator(const SpinOrbitalBasis& b) {
    FermionOperatorSum op;
    for (std::size_t i = 0; i < b.r_s; ++i) {
        op.add_one_body(static_cast<std::uint32_t>(b.so(i, Spin::alpha)),
                        static_cast<std::uint32_t>(b.so(i, Spin::alpha)), 0.5);
        op.add_one_body(static_cast<std::uint32_t>(b.so(i, Spin::beta)),
                        static_cast<std::uint32_t>(b.so(i, Spin::beta)), -0.5);
    }
    return op;
}

/// S_+ = sum_i a+_{i alpha} a_{i beta}.
[[nodiscard]] inline FermionOperatorSum build_s_plus_operator(const SpinOrbitalBasis& b) {
    FermionOperatorSum op;
    for (std::size_t i = 0; i < b.r_s; ++i)
        op.add_one_body(static_cast<std::uint32_t>(b.so(i, Spin::alpha)),
                        static_cast<std::uint32_t>(b.so(i, Spin::beta)), 1.0);
    return op;
}

/// S^2 = S_- S_+ + S_z^2 + S_z.
[[nodiscard]] inline FermionOperatorSum build_s2_operator(const SpinOrbitalBasis& b) {
    FermionOperatorSum sp = build_s_plus_operator(b);
    FermionOperatorSum sz = build_sz_operator(b);
    FermionOperatorSum op = sp.adjoint() * sp;
    op += sz * sz;
    op += sz;
    return op;
}

[[nodiscard]] inline double compute_number(const OneRDM& d1) { return d1.trace().real(); }

[[nodiscard]] inline double compute_sz(const SpinOrbitalBasis& b, const OneRDM& d1) {
    double sz = 0.0;
    for (std::size_t i = 0; i < b.r_s; ++i) {
        sz += 0.5 * d1.mat(static_cast<Eigen::Index>(b.so(i, Spin::alpha)),
                           static_cast<Eigen::Index>(b.so(i, Spin::alpha)))
                        .real();
        sz -= 0.5 * d1.mat(static_cast<Eigen::Index>(b.so(i, Spin::beta)),
                           static_cast<Eigen::Index>(b.so(i, Spin::beta)))
                        .real();
    }
    return sz;
}

[[nodiscard]] inline double compute_s2(const SpinOrbitalBasis& b, const OneRDM& d1,
                                       const TwoRDM& d2) {
    return expectation_value(build_s2_operator(b), d1, d2).real();
}

}  // namespace rdmkit
