// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace rdmkit {

/// Single ladder operator: creation (a+_mode) or annihilation (a_mode).
struct LadderOp {
    std::uint32_t mode = 0;
    bool create = false;

    friend bool operator==(const LadderOp&, const LadderOp&) = default;
    friend auto operator<=>(const LadderOp&, const LadderOp&) = default;
};

/// Product of ladder operators, leftmost first.  The empty word is the
/// identity operator.
using LadderWord = std::vector<LadderOp>;

/// Weighted sum of ladder words.  Words are kept exactly as inserted;
/// canonicalization and normal ordering are explicit operations so that a
/// sum can faithfully carry non-normal-ordered terms (hole and
/// particle-hole words) when callers need them.
class FermionOperatorSum {
  public:
    using Coeff = std::complex<double>;
    using TermMap = std::map<LadderWord, Coeff>;

    FermionOperatorSum() = default;

    /// The multiplicative identity times c.
    [[nodiscard]] static FermionOperatorSum constant(Coeff c) {
        FermionOperatorSum s;
        s.add(LadderWord{}, c);
        return s;
    }

    void add(const LadderWord& word, Coeff c) {
        if (c == Coeff{0.0, 0.0}) return;
        auto it = terms_.find(word);
        if (it == terms_.end()) {
            terms_.emplace(word, c);
        } else {
            it->second += c;
            if (it->second == Coeff{0.0, 0.0}) terms_.erase(it);
        }
    }

    /// a+_p a_q with coefficient c.
    void add_one_body(std::uint32_t p, std::uint32_t q, Coeff c) {
        add(LadderWord{{p, true}, {q, false}}, c);
    }

    /// a+_p a+_q a_s a_r with coefficient c (word order as written).
    void add_two_body(std::uint32_t p, std::uint32_t q, std::uint32_t s, std::uint32_t r,
                      Coeff c) {
        add(LadderWord{{p, true}, {q, true}, {s, false}, {r, false}}, c);
    }

    [[nodiscard]] const TermMap& terms() const { return terms_; }

    /// Coefficient of a word, zero when absent.
    [[nodiscard]] Coeff coefficient(const LadderWord& word) const {
        const auto it = terms_.find(word);
        return it == terms_.end() ? Coeff{0.0, 0.0} : it->second;
    }

    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    [[nodiscard]] bool empty() const { return terms_.empty(); }

    FermionOperatorSum& operator+=(const FermionOperatorSum& o) {
        for (const auto& [w, c] : o.terms_) add(w, c);
        return *this;
    }
    FermionOperatorSum& operator-=(const FermionOperatorSum& o) {
        for (const auto& [w, c] : o.terms_) add(w, -c);
        return *this;
    }
    FermionOperatorSum& operator*=(Coeff c) {
        if (c == Coeff{0.0, 0.0}) {
            terms_.clear();
            return *this;
        }
        for (auto& [w, v] : terms_) v *= c;
        return *this;
    }

    friend FermionOperatorSum operator+(FermionOperatorSum a, const FermionOperatorSum& b) {
        a += b;
        return a;
    }
    friend FermionOperatorSum operator-(FermionOperatorSum a, const FermionOperatorSum& b) {
        a -= b;
        return a;
    }
    friend FermionOperatorSum operator*(FermionOperatorSum a, Coeff c) {
        a *= c;
        return a;
    }
    friend FermionOperatorSum operator*(Coeff c, FermionOperatorSum a) {
        a *= c;
        return a;
    }

    /// Operator product (concatenates words, distributes coefficients).
    friend FermionOperatorSum operator*(const FermionOperatorSum& a,
                                        const FermionOperatorSum& b) {
        FermionOperatorSum out;
        for (const auto& [wa, ca] : a.terms_) {
            for (const auto& [wb, cb] : b.terms_) {
                LadderWord w = wa;
                w.insert(w.end(), wb.begin(), wb.end());
                out.add(w, ca * cb);
            }
        }
        return out;
    }

    /// Hermitian adjoint: reverse each word, flip create flags, conjugate
    /// coefficients.
    [[nodiscard]] FermionOperatorSum adjoint() const {
        FermionOperatorSum out;
        for (const auto& [w, c] : terms_) {
            LadderWord rw(w.rbegin(), w.rend());
            for (auto& op : rw) op.create = !op.create;
            out.add(rw, std::conj(c));
        }
        return out;
    }

    /// Largest mode index appearing plus one (0 for pure constants).
    [[nodiscard]] std::uint32_t mode_count() const {
        std::uint32_t m = 0;
        for (const auto& [w, c] : terms_)
            for (const auto& op : w) m = std::max(m, op.mode + 1);
        return m;
    }

    /// Rewrites every word into normal order (creations left, ascending;
    /// annihilations right, descending) using the anticommutation rules.
    /// The result is a canonical form: equal operators produce equal maps.
    [[nodiscard]] FermionOperatorSum normal_ordered() const {
        FermionOperatorSum out;
        for (const auto& [w, c] : terms_) normal_order_word(w, c, out);
        return out;
    }

    /// Sum of |coefficient| over non-identity words (no canonicalization).
    [[nodiscard]] double coefficient_norm1() const {
        double s = 0.0;
        for (const auto& [w, c] : terms_)
            if (!w.empty()) s += std::abs(c);
        return s;
    }

  private:
    // Pushes one word into normal order, accumulating the expansion in out.
    static void normal_order_word(LadderWord w, Coeff c, FermionOperatorSum& out) {
        // Iterative worklist; each anticommutation either swaps (sign flip)
        // or also spawns the contracted word (delta term).
        std::vector<std::pair<LadderWord, Coeff>> work{{std::move(w), c}};
        while (!work.empty()) {
            auto [word, coeff] = std::move(work.back());
            work.pop_back();
            bool reduced = false;
            for (std::size_t i = 0; i + 1 < word.size(); ++i) {
                LadderOp& x = word[i];
                LadderOp& y = word[i + 1];
                if (!x.create && y.create) {
                    // a_i a+_j = delta_ij - a+_j a_i
                    if (x.mode == y.mode) {
                        LadderWord contracted;
                        contracted.reserve(word.size() - 2);
                        contracted.insert(contracted.end(), word.begin(),
                                          word.begin() + static_cast<std::ptrdiff_t>(i));
                        contracted.insert(contracted.end(),
                                          word.begin() + static_cast<std::ptrdiff_t>(i) + 2,
                                          word.end());
                        work.emplace_back(std::move(contracted), coeff);
                    }
                    std::swap(x, y);
                    work.emplace_back(std::move(word), -coeff);
                    reduced = true;
                    break;
                }
                if (x.create == y.create && x.mode == y.mode) {
                    reduced = true;  // a+a+ or aa with equal modes vanishes
                    break;
                }
                bool out_of_order = x.create ? (x.mode > y.mode)    // creations ascend
                                             : (!y.create && x.mode < y.mode);  // annihilations descend
                if (x.create && !y.create) out_of_order = false;
                if (out_of_order) {
                    std::swap(x, y);
                    work.emplace_back(std::move(word), -coeff);
                    reduced = true;
                    break;
                }
            }
            if (!reduced) out.add(word, coeff);
        }
    }

    TermMap terms_;
};

/// (A + A^dagger) / 2.
[[nodiscard]] inline FermionOperatorSum hermitian_average(const FermionOperatorSum& a) {
    FermionOperatorSum out = a;
    out += a.adjoint();
    out *= FermionOperatorSum::Coeff{0.5, 0.0};
    return out;
}

}  // namespace rdmkit
