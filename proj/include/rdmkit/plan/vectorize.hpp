// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdmkit/core/fermion_op.hpp"
#include "rdmkit/core/rdm.hpp"

namespace rdmkit {

/// Families of operator words that get their own column blocks in the term
/// vectorization.  A Hamiltonian only occupies the first three; the hole and
/// particle-hole families exist so that marginal-mapping constraint rows can
/// be written as exact linear identities, with the constant column absorbing
/// the delta terms of Wick rearrangement.
enum class TermFamily : std::uint8_t {
    constant,       // identity
    one_body,       // a+_p a_q
    two_body,       // a+_a a+_b a_c a_d
    hole_one,       // a_p a+_q
    hole_two,       // a_a a_b a+_c a+_d
    particle_hole,  // a+_a a_b a+_c a_d
};

/// Column indexing for operator coefficient vectors over N modes.  One-body
/// words map to element 1 + p + qN; higher families continue the same
/// digit-minor-first pattern at consecutive offsets.
struct Vectorization {
    std::size_t modes = 0;

    Vectorization() = default;
    explicit Vectorization(std::size_t n_modes) : modes(n_modes) {
        if (n_modes == 0) throw std::invalid_argument("Vectorization: zero modes");
    }

    [[nodiscard]] std::size_t n2() const { return modes * modes; }
    [[nodiscard]] std::size_t n4() const { return n2() * n2(); }

    [[nodiscard]] std::size_t one_body_offset() const { return 1; }
    [[nodiscard]] std::size_t two_body_offset() const { return 1 + n2(); }
    [[nodiscard]] std::size_t hole_one_offset() const { return 1 + n2() + n4(); }
    [[nodiscard]] std::size_t hole_two_offset() const { return 1 + 2 * n2() + n4(); }
    [[nodiscard]] std::size_t particle_hole_offset() const { return 1 + 2 * n2() + 2 * n4(); }
    [[nodiscard]] std::size_t columns() const { return 1 + 2 * n2() + 3 * n4(); }

    [[nodiscard]] std::size_t constant_column() const { return 0; }
    [[nodiscard]] std::size_t one_body_column(std::size_t p, std::size_t q) const {
        return one_body_offset() + p + q * modes;
    }
    [[nodiscard]] std::size_t two_body_column(std::size_t a, std::size_t b, std::size_t c,
                                              std::size_t d) const {
        return two_body_offset() + a + b * modes + c * n2() + d * n2() * modes;
    }
    [[nodiscard]] std::size_t hole_one_column(std::size_t p, std::size_t q) const {
        return hole_one_offset() + p + q * modes;
    }
    [[nodiscard]] std::size_t hole_two_column(std::size_t a, std::size_t b, std::size_t c,
                                              std::size_t d) const {
        return hole_two_offset() + a + b * modes + c * n2() + d * n2() * modes;
    }
    [[nodiscard]] std::size_t particle_hole_column(std::size_t a, std::size_t b, std::size_t c,
                                                   std::size_t d) const {
        return particle_hole_offset() + a + b * modes + c * n2() + d * n2() * modes;
    }

    /// Column of a word matching one of the families, -1 for any other shape.
    /// Out-of-range modes always throw.
    [[nodiscard]] std::ptrdiff_t column_if(const LadderWord& w) const {
        for (const auto& op : w)
            if (op.mode >= modes) throw std::invalid_argument("column_if: mode out of range");
        if (w.empty()) return static_cast<std::ptrdiff_t>(constant_column());
        if (w.size() == 2) {
            if (w[0].create && !w[1].create)
                return static_cast<std::ptrdiff_t>(one_body_column(w[0].mode, w[1].mode));
            if (!w[0].create && w[1].create)
                return static_cast<std::ptrdiff_t>(hole_one_column(w[0].mode, w[1].mode));
        }
        if (w.size() == 4) {
            const bool c0 = w[0].create, c1 = w[1].create, c2 = w[2].create, c3 = w[3].create;
            if (c0 && c1 && !c2 && !c3)
                return static_cast<std::ptrdiff_t>(
                    two_body_column(w[0].mode, w[1].mode, w[2].mode, w[3].mode));
            if (!c0 && !c1 && c2 && c3)
                return static_cast<std::ptrdiff_t>(
                    hole_two_column(w[0].mode, w[1].mode, w[2].mode, w[3].mode));
            if (c0 && !c1 && c2 && !c3)
                return static_cast<std::ptrdiff_t>(
                    particle_hole_column(w[0].mode, w[1].mode, w[2].mode, w[3].mode));
        }
        return -1;
    }

    /// Column of an arbitrary word that matches one of the families; throws
    /// for any other shape (three-body and beyond are out of scope).
    [[nodiscard]] std::size_t column_of(const LadderWord& w) const {
        const std::ptrdiff_t col = column_if(w);
        if (col < 0)
            throw std::invalid_argument("column_of: word shape outside the column families");
        return static_cast<std::size_t>(col);
    }

    [[nodiscard]] TermFamily family_of(std::size_t col) const {
        if (col >= columns()) throw std::invalid_argument("family_of: column out of range");
        if (col == 0) return TermFamily::constant;
        if (col < two_body_offset()) return TermFamily::one_body;
        if (col < hole_one_offset()) return TermFamily::two_body;
        if (col < hole_two_offset()) return TermFamily::hole_one;
        if (col < particle_hole_offset()) return TermFamily::hole_two;
        return TermFamily::particle_hole;
    }

    [[nodiscard]] LadderWord word_of(std::size_t col) const {
        const TermFamily f = family_of(col);
        const auto N = static_cast<std::uint32_t>(modes);
        auto digits2 = [N](std::size_t rem) {
            return LadderWord{{static_cast<std::uint32_t>(rem % N), true},
                              {static_cast<std::uint32_t>(rem / N), false}};
        };
        auto digits4 = [N](std::size_t rem, bool c0, bool c1, bool c2, bool c3) {
            const auto a = static_cast<std::uint32_t>(rem % N);
            const auto b = static_cast<std::uint32_t>((rem / N) % N);
            const auto c = static_cast<std::uint32_t>((rem / (std::size_t(N) * N)) % N);
            const auto d = static_cast<std::uint32_t>(rem / (std::size_t(N) * N * N));
            return LadderWord{{a, c0}, {b, c1}, {c, c2}, {d, c3}};
        };
        switch (f) {
            case TermFamily::constant:
                return {};
            case TermFamily::one_body:
                return digits2(col - one_body_offset());
            case TermFamily::two_body:
                return digits4(col - two_body_offset(), true, true, false, false);
            case TermFamily::hole_one: {
                auto w = digits2(col - hole_one_offset());
                w[0].create = false;
                w[1].create = true;
                return w;
            }
            case TermFamily::hole_two:
                return digits4(col - hole_two_offset(), false, false, true, true);
            case TermFamily::particle_hole:
                return digits4(col - particle_hole_offset(), true, false, true, false);
        }
        throw std::logic_error("word_of: unreachable");
    }
};

/// Literal coefficient vector of an operator over the column dictionary.
/// Words are taken as stored (no normal ordering); coefficients must be real
/// to imag_tol.
[[nodiscard]] inline VectorXr vectorize_operator(const FermionOperatorSum& op,
                                                 const Vectorization& vec,
                                                 double imag_tol = 1e-10) {
    VectorXr v = VectorXr::Zero(static_cast<Eigen::Index>(vec.columns()));
    for (const auto& [w, c] : op.terms()) {
        if (std::abs(c.imag()) > imag_tol)
            throw std::invalid_argument("vectorize_operator: complex coefficient");
        v(static_cast<Eigen::Index>(vec.column_of(w))) += c.real();
    }
    return v;
}

/// Like vectorize_operator, but words outside the column families are first
/// normal ordered (the expansion lands entirely on family words).  Operators
/// built from one- and two-body integrals vectorize literally; this path
/// only matters for hand-built products.
[[nodiscard]] inline VectorXr vectorize_any(const FermionOperatorSum& op,
                                            const Vectorization& vec, double imag_tol = 1e-10) {
    VectorXr v = VectorXr::Zero(static_cast<Eigen::Index>(vec.columns()));
    for (const auto& [w, c] : op.terms()) {
        if (std::abs(c.imag()) > imag_tol)
            throw std::invalid_argument("vectorize_any: complex coefficient");
        const std::ptrdiff_t col = vec.column_if(w);
        if (col >= 0) {
            v(static_cast<Eigen::Index>(col)) += c.real();
            continue;
        }
        FermionOperatorSum one_term;
        one_term.add(w, Complex{1.0, 0.0});
        for (const auto& [nw, nc] : one_term.normal_ordered().terms())
            v(static_cast<Eigen::Index>(vec.column_of(nw))) += c.real() * nc.real();
    }
    return v;
}

/// Inverse of vectorize_operator on its image; zeros are skipped.
[[nodiscard]] inline FermionOperatorSum devectorize(const VectorXr& v, const Vectorization& vec,
                                                    double drop_tol = 0.0) {
    if (static_cast<std::size_t>(v.size()) != vec.columns())
        throw std::invalid_argument("devectorize: length mismatch");
    FermionOperatorSum op;
    for (Eigen::Index j = 0; j < v.size(); ++j) {
        if (std::abs(v(j)) <= drop_tol) continue;
        op.add(vec.word_of(static_cast<std::size_t>(j)), Complex{v(j), 0.0});
    }
    return op;
}

/// Word-level one-norm of a term vector, constant column excluded.  This is
/// the measurement cost of the vector as written: each column is one
/// observable, whether or not its word is in normal form.  Normal ordering
/// first (as the operator overload of lambda_norm does) can only report a
/// different number when the vector leans on non-canonical words.
[[nodiscard]] inline double lambda_norm(const VectorXr& terms, const Vectorization& vec) {
    if (static_cast<std::size_t>(terms.size()) != vec.columns())
        throw std::invalid_argument("lambda_norm: length mismatch");
    double s = 0.0;
    for (Eigen::Index j = 0; j < terms.size(); ++j)
        if (static_cast<std::size_t>(j) != vec.constant_column()) s += std::abs(terms(j));
    return s;
}

/// Canonical (normal-ordered) column subspace: the constant, every one-body
/// word, and two-body words with ascending creators and descending
/// annihilators.  Everything else is expressible through these by operator
/// identities, which is exactly what the rewriting constraint rows encode.
struct CanonicalColumns {
    Vectorization vec;
    std::vector<std::size_t> full_index;           // canonical slot -> full column
    std::vector<std::ptrdiff_t> canonical_slot;    // full column -> slot or -1

    explicit CanonicalColumns(const Vectorization& v) : vec(v) {
        const std::size_t N = vec.modes;
        canonical_slot.assign(vec.columns(), -1);
        auto push = [&](std::size_t col) {
            canonical_slot[col] = static_cast<std::ptrdiff_t>(full_index.size());
            full_index.push_back(col);
        };
        push(vec.constant_column());
        for (std::size_t q = 0; q < N; ++q)
            for (std::size_t p = 0; p < N; ++p) push(vec.one_body_column(p, q));
        for (std::size_t a = 0; a < N; ++a)
            for (std::size_t b = a + 1; b < N; ++b)
                for (std::size_t c = 0; c < N; ++c)
                    for (std::size_t d = 0; d < c; ++d)
                        push(vec.two_body_column(a, b, c, d));
    }

    [[nodiscard]] std::size_t size() const { return full_index.size(); }

    /// Compressed coefficient vector: each column's word is normal ordered
    /// and its coefficients accumulated on canonical slots.  The compressed
    /// vector represents the same operator.
    [[nodiscard]] VectorXr compress(const VectorXr& full) const {
        if (static_cast<std::size_t>(full.size()) != vec.columns())
            throw std::invalid_argument("compress: length mismatch");
        VectorXr out = VectorXr::Zero(static_cast<Eigen::Index>(size()));
        for (Eigen::Index j = 0; j < full.size(); ++j) {
            const double w = full(j);
            if (w == 0.0) continue;
            const auto slot = canonical_slot[static_cast<std::size_t>(j)];
            if (slot >= 0) {
                out(slot) += w;
                continue;
            }
            FermionOperatorSum op;
            op.add(vec.word_of(static_cast<std::size_t>(j)), Complex{1.0, 0.0});
            const FermionOperatorSum no = op.normal_ordered();
            for (const auto& [word, c] : no.terms()) {
                const auto k = canonical_slot[vec.column_of(word)];
                if (k < 0) throw std::logic_error("compress: normal form not canonical");
                out(k) += w * c.real();
            }
        }
        return out;
    }

    /// Lift a compressed vector back onto the full column space.
    [[nodiscard]] VectorXr expand(const VectorXr& compressed) const {
        if (static_cast<std::size_t>(compressed.size()) != size())
            throw std::invalid_argument("expand: length mismatch");
        VectorXr out = VectorXr::Zero(static_cast<Eigen::Index>(vec.columns()));
        for (std::size_t s = 0; s < size(); ++s)
            out(static_cast<Eigen::Index>(full_index[s])) = compressed(static_cast<Eigen::Index>(s));
        return out;
    }
};

}  // namespace rdmkit
