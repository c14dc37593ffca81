// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rdmkit {

/// Pauli string over up to 64 qubits in the symplectic (x, z) encoding:
/// qubit q carries X when only x-bit q is set, Z when only z-bit q is set,
/// Y when both are set.  The encoded operator is the plain tensor product
/// of those single-qubit Paulis (no global i factors hidden in the masks).
struct PauliString {
    std::uint64_t x = 0;
    std::uint64_t z = 0;

    friend bool operator==(const PauliString&, const PauliString&) = default;
    friend auto operator<=>(const PauliString&, const PauliString&) = default;

    [[nodiscard]] bool is_identity() const { return x == 0 && z == 0; }

    /// Human-readable form like "X0 Z2 Y3"; "I" for the identity.
    [[nodiscard]] std::string str() const {
        if (is_identity()) return "I";
        std::string s;
        for (int q = 0; q < 64; ++q) {
            const bool bx = (x >> q) & 1, bz = (z >> q) & 1;
            if (!bx && !bz) continue;
            if (!s.empty()) s += ' ';
            s += bx ? (bz ? 'Y' : 'X') : 'Z';
            s += std::to_string(q);
        }
        return s;
    }
};

/// Product of two single-qubit Paulis encoded as (x, z) bit pairs, returning
/// the i-power phase exponent: P(a) * P(b) = i^k * P(a xor b).
[[nodiscard]] inline int pauli_phase_exponent(bool ax, bool az, bool bx, bool bz) {
    // Lookup over (a, b) in {I,X,Y,Z}: XY=iZ, YZ=iX, ZX=iY and cyclic inverses.
    static constexpr int table[4][4] = {
        // b: I  X  Y  Z      a:
        {0, 0, 0, 0},      // I
        {0, 0, 1, 3},      // X
        {0, 3, 0, 1},      // Y
        {0, 1, 3, 0},      // Z
    };
    const int a = ax ? (az ? 2 : 1) : (az ? 3 : 0);
    const int b = bx ? (bz ? 2 : 1) : (bz ? 3 : 0);
    return table[a][b];
}

/// Product of two strings: a * b = phase * (a xor b), phase in {1, i, -1, -i}.
[[nodiscard]] inline std::pair<PauliString, std::complex<double>> pauli_multiply(
    const PauliString& a, const PauliString& b) {
    int iexp = 0;
    std::uint64_t overlap = (a.x | a.z) & (b.x | b.z);
    while (overlap) {
        const int q = std::countr_zero(overlap);
        overlap &= overlap - 1;
        iexp += pauli_phase_exponent((a.x >> q) & 1, (a.z >> q) & 1, (b.x >> q) & 1,
                                     (b.z >> q) & 1);
    }
    static constexpr std::complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return {PauliString{a.x ^ b.x, a.z ^ b.z}, ipow[iexp & 3]};
}

/// Weighted sum of Pauli strings with complex accumulation.  Hermitian
/// operators have real coefficients; real_terms() checks and extracts them.
class QubitOperatorSum {
  public:
    using Coeff = std::complex<double>;
    using TermMap = std::map<PauliString, Coeff>;

    void add(PauliString p, Coeff c) {
        if (c == Coeff{0.0, 0.0}) return;
        auto it = terms_.find(p);
        if (it == terms_.end()) {
            terms_.emplace(p, c);
        } else {
            it->second += c;
            if (std::abs(it->second) == 0.0) terms_.erase(it);
        }
    }

    [[nodiscard]] const TermMap& terms() const { return terms_; }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }

    QubitOperatorSum& operator+=(const QubitOperatorSum& o) {
        for (const auto& [p, c] : o.terms_) add(p, c);
        return *this;
    }
    QubitOperatorSum& operator*=(Coeff c) {
        if (c == Coeff{0.0, 0.0}) {
            terms_.clear();
            return *this;
        }
        for (auto& [p, v] : terms_) v *= c;
        return *this;
    }

    friend QubitOperatorSum operator*(const QubitOperatorSum& a, const QubitOperatorSum& b) {
        QubitOperatorSum out;
        for (const auto& [pa, ca] : a.terms_)
            for (const auto& [pb, cb] : b.terms_) {
                auto [p, phase] = pauli_multiply(pa, pb);
                out.add(p, ca * cb * phase);
            }
        return out;
    }

    /// Drops terms with |coefficient| <= tol (cleans numerical residue).
    void prune(double tol = 1e-14) {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = (std::abs(it->second) <= tol) ? terms_.erase(it) : std::next(it);
    }

    /// Coefficients as reals; throws if any imaginary residue exceeds tol.
    [[nodiscard]] std::vector<std::pair<PauliString, double>> real_terms(
        double tol = 1e-10) const {
        std::vector<std::pair<PauliString, double>> out;
        out.reserve(terms_.size());
        for (const auto& [p, c] : terms_) {
            if (std::abs(c.imag()) > tol)
                throw std::runtime_error("QubitOperatorSum: non-real coefficient on " + p.str());
            out.emplace_back(p, c.real());
        }
        return out;
    }

  private:
    TermMap terms_;
};

/// Sum of |coefficient| over non-identity Pauli terms.  The identity is
/// excluded: it is a deterministic shift with zero measurement variance.
[[nodiscard]] inline double lambda_norm(const QubitOperatorSum& op, double tol = 1e-12) {
    double s = 0.0;
    for (const auto& [p, c] : op.terms())
        if (!p.is_identity() && std::abs(c) > tol) s += std::abs(c);
    return s;
}

/// Applies a Pauli string to a state vector over n_qubits qubits indexed by
/// bitmask.  Per qubit: Z contributes (-1)^bit on the incoming basis state,
/// X flips the bit, Y = iXZ adds a factor i on top of both.
template <typename Vec>
[[nodiscard]] Vec apply_pauli(const PauliString& p, const Vec& state, std::size_t n_qubits) {
    if (n_qubits > 64) throw std::invalid_argument("apply_pauli: more than 64 qubits");
    const std::uint64_t dim = std::uint64_t(1) << n_qubits;
    if (static_cast<std::uint64_t>(state.size()) != dim)
        throw std::invalid_argument("apply_pauli: state dimension mismatch");
    if ((p.x | p.z) >> n_qubits)
        throw std::invalid_argument("apply_pauli: string touches qubits outside the register");
    static constexpr std::complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const int y_phase = std::popcount(p.x & p.z) & 3;
    Vec out = state;
    for (std::uint64_t b = 0; b < dim; ++b) {
        const int zsign = std::popcount(b & p.z) & 1;
        std::complex<double> phase = ipow[y_phase];
        if (zsign) phase = -phase;
        out[static_cast<std::ptrdiff_t>(b ^ p.x)] = phase * state[static_cast<std::ptrdiff_t>(b)];
    }
    return out;
}

/// <state|P|state> without materializing P.
template <typename Vec>
[[nodiscard]] std::complex<double> pauli_expectation(const PauliString& p, const Vec& state,
                                                     std::size_t n_qubits) {
    const Vec applied = apply_pauli(p, state, n_qubits);
    std::complex<double> acc{0.0, 0.0};
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(state.size()); ++b)
        acc += std::conj(state[b]) * applied[b];
    return acc;
}

}  // namespace rdmkit
