// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cctype>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdmkit/core/basis.hpp"
#include "rdmkit/core/fermion_op.hpp"
#include "rdmkit/core/rdm.hpp"

namespace rdmkit {

/// Molecular integrals in the spatial-orbital basis.  h is the one-body
/// tensor; V holds chemist-notation (ij|kl) two-electron integrals with the
/// full 8-fold permutational symmetry expanded; e_core is the scalar shift
/// (nuclear repulsion plus any frozen-core energy).  All values in Hartree.
struct IntegralSet {
    std::size_t norb = 0;  // spatial orbitals
    std::vector<double> h;        // norb^2, row-major
    std::vector<double> v_chem;   // norb^4, chemist (ij|kl), index ((i*n+j)*n+k)*n+l
    double e_core = 0.0;

    [[nodiscard]] double h1(std::size_t i, std::size_t j) const { return h[i * norb + j]; }
    [[nodiscard]] double chem(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
        return v_chem[((i * norb + j) * norb + k) * norb + l];
    }

    /// One-body element between spin orbitals (interleaved ordering).
    [[nodiscard]] double h1_so(std::size_t p, std::size_t q) const {
        if ((p ^ q) & 1) return 0.0;  // spin mismatch
        return h1(p / 2, q / 2);
    }

    /// Physicist-notation spin-orbital integral <pq|rs> = (pr|qs) with spin
    /// deltas p~r, q~s; NOT antisymmetrized (consumers handle exchange).
    [[nodiscard]] double v_so(std::size_t p, std::size_t q, std::size_t r, std::size_t s) const {
        if (((p ^ r) & 1) || ((q ^ s) & 1)) return 0.0;
        return chem(p / 2, r / 2, q / 2, s / 2);
    }
};

struct FcidumpData {
    IntegralSet ints;
    SpinOrbitalBasis basis;
    int ms2 = 0;
};

namespace detail {

inline void set_chem_8fold(IntegralSet& s, std::size_t i, std::size_t j, std::size_t k,
                           std::size_t l, double val, double sym_tol, std::size_t line_no) {
    const std::size_t n = s.norb;
    const std::size_t idx[8][4] = {{i, j, k, l}, {j, i, k, l}, {i, j, l, k}, {j, i, l, k},
                                   {k, l, i, j}, {l, k, i, j}, {k, l, j, i}, {l, k, j, i}};
    for (const auto& q : idx) {
        double& slot = s.v_chem[((q[0] * n + q[1]) * n + q[2]) * n + q[3]];
        if (slot != 0.0 && std::abs(slot - val) > sym_tol)
            throw std::runtime_error("fcidump line " + std::to_string(line_no) +
                                     ": integral violates 8-fold symmetry");
        slot = val;
    }
}

}  // namespace detail

/// Reads an FCIDUMP file: a &FCI ... &END namelist header with NORB, NELEC
/// and MS2, then lines "value i j k l" (1-based).  Two-electron entries have
/// all four indices nonzero, one-electron entries have k = l = 0, and the
/// final line with all indices zero carries the core energy.
[[nodiscard]] inline FcidumpData load_fcidump(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_fcidump: cannot open " + path);

    std::string header;
    std::string line;
    std::size_t line_no = 0;
    bool header_done = false;
    while (!header_done && std::getline(in, line)) {
        ++line_no;
        header += ' ' + line;
        std::string upper;
        for (char c : line) upper += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        if (upper.find("&END") != std::string::npos || upper.find("/") != std::string::npos)
            header_done = true;
    }
    if (!header_done) throw std::runtime_error("load_fcidump: missing &END in header");

    auto header_int = [&header](const std::string& key) -> long {
        std::string upper;
        for (char c : header) upper += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        auto pos = upper.find(key);
        if (pos == std::string::npos)
            throw std::runtime_error("load_fcidump: header lacks " + key);
        pos = upper.find('=', pos);
        if (pos == std::string::npos)
            throw std::runtime_error("load_fcidump: malformed " + key);
        return std::strtol(upper.c_str() + pos + 1, nullptr, 10);
    };

    const long norb = header_int("NORB");
    const long nelec = header_int("NELEC");
    const long ms2 = header_int("MS2");
    if (norb <= 0 || norb > 16)
        throw std::runtime_error("load_fcidump: NORB out of supported range");
    if (nelec < 0 || nelec > 2 * norb)
        throw std::runtime_error("load_fcidump: NELEC out of range");

    FcidumpData out;
    out.ints.norb = static_cast<std::size_t>(norb);
    out.ints.h.assign(out.ints.norb * out.ints.norb, 0.0);
    out.ints.v_chem.assign(out.ints.norb * out.ints.norb * out.ints.norb * out.ints.norb, 0.0);
    out.ms2 = static_cast<int>(ms2);
    out.basis = SpinOrbitalBasis(out.ints.norb, static_cast<std::size_t>(nelec));

    const double sym_tol = 1e-8;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        double val;
        long i, j, k, l;
        if (!(ss >> val)) continue;  // blank line
        if (!(ss >> i >> j >> k >> l))
            throw std::runtime_error("fcidump line " + std::to_string(line_no) +
                                     ": expected four indices");
        if (i < 0 || j < 0 || k < 0 || l < 0 || i > norb || j > norb || k > norb || l > norb)
            throw std::runtime_error("fcidump line " + std::to_string(line_no) +
                                     ": index out of range");
        if (i == 0 && j == 0 && k == 0 && l == 0) {
            out.ints.e_core = val;
        } else if (k == 0 && l == 0) {
            if (i == 0 || j == 0)
                throw std::runtime_error("fcidump line " + std::to_string(line_no) +
                                         ": bad one-electron indices");
            const auto a = static_cast<std::size_t>(i - 1), b = static_cast<std::size_t>(j - 1);
            out.ints.h[a * out.ints.norb + b] = val;
            out.ints.h[b * out.ints.norb + a] = val;  // Hermitian (real symmetric)
        } else {
            if (i == 0 || j == 0 || k == 0 || l == 0)
                throw std::runtime_error("fcidump line " + std::to_string(line_no) +
                                         ": bad two-electron indices");
            detail::set_chem_8fold(out.ints, static_cast<std::size_t>(i - 1),
                                   static_cast<std::size_t>(j - 1), static_cast<std::size_t>(k - 1),
                                   static_cast<std::size_t>(l - 1), val, sym_tol, line_no);
        }
    }
    return out;
}

/// Second-quantized Hamiltonian over spin orbitals (interleaved ordering):
/// sum h_pq a+_p a_q  +  1/2 sum <pq|rs> a+_p a+_q a_s a_r, plus e_core.
[[nodiscard]] inline FermionOperatorSum build_hamiltonian_operator(const IntegralSet& ints) {
    const std::size_t r = 2 * ints.norb;
    FermionOperatorSum h;
    h.add(LadderWord{}, ints.e_core);
    for (std::size_t p = 0; p < r; ++p)
        for (std::size_t q = 0; q < r; ++q) {
            const double v = ints.h1_so(p, q);
            if (v != 0.0)
                h.add_one_body(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(q), v);
        }
    for (std::size_t p = 0; p < r; ++p)
        for (std::size_t q = 0; q < r; ++q)
            for (std::size_t rr = 0; rr < r; ++rr)
                for (std::size_t s = 0; s < r; ++s) {
                    const double v = ints.v_so(p, q, rr, s);
                    if (v != 0.0)
                        h.add_two_body(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(q),
                                       static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(rr),
                                       0.5 * v);
                }
    return h;
}

/// Electronic energy as a direct contraction of the integrals with the
/// marginals: e_core + sum h_pq D1(p,q) + 1/2 sum <pq|rs> <a+_p a+_q a_s a_r>.
/// Equivalent to expectation_value(build_hamiltonian_operator(ints), ...)
/// but without the normal-ordering pass.
[[nodiscard]] inline double compute_energy(const IntegralSet& ints, const OneRDM& d1,
                                           const TwoRDM& d2) {
    const std::size_t r = 2 * ints.norb;
    if (d1.dim() != r || d2.r != r)
        throw std::invalid_argument("compute_energy: marginal dimensions do not match integrals");
    Complex e = ints.e_core;
    for (std::size_t p = 0; p < r; ++p)
        for (std::size_t q = 0; q < r; ++q) {
            const double v = ints.h1_so(p, q);
            if (v != 0.0) e += v * d1.mat(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
        }
    for (std::size_t p = 0; p < r; ++p)
        for (std::size_t q = 0; q < r; ++q)
            for (std::size_t rr = 0; rr < r; ++rr)
                for (std::size_t s = 0; s < r; ++s) {
                    const double v = ints.v_so(p, q, rr, s);
                    if (v != 0.0)
                        e += 0.5 * v *
                             d2.mat(static_cast<Eigen::Index>(p * r + q),
                                    static_cast<Eigen::Index>(rr * r + s));
                }
    return e.real();
}

}  // namespace rdmkit
