// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdmkit/core/rdm.hpp"

namespace rdmkit {

/// Rank-p reduced density tensor over r modes, stored as a flat real array of
/// r^(2p) entries.  Index layout: the p upper (creation) indices form the
/// major digits, the p lower (annihilation) indices the minor digits, each
/// group big-endian in base r.  Pair-normalized convention throughout:
///   T^{i1..ip}_{j1..jp} = (1/p!) <a+_{i1}..a+_{ip} a_{jp}..a_{j1}>,
/// so the full trace of a rank-p marginal of an n-particle state is C(n,p).
/// Rank is capped at 4; rank-4 storage is r^8 doubles, which at r = 8 is the
/// largest tensor the library ever materializes.
struct AntisymTensor {
    std::size_t r = 0;
    std::size_t rank = 0;
    std::vector<double> data;

    AntisymTensor() = default;
    AntisymTensor(std::size_t r_, std::size_t rank_) : r(r_), rank(rank_) {
        if (rank_ == 0 || rank_ > 4)
            throw std::invalid_argument("AntisymTensor: rank must be 1..4");
        std::size_t total = 1;
        for (std::size_t k = 0; k < 2 * rank_; ++k) total *= r_;
        data.assign(total, 0.0);
    }

    /// Number of composite index values per side, r^rank.
    [[nodiscard]] std::size_t side() const {
        std::size_t s = 1;
        for (std::size_t k = 0; k < rank; ++k) s *= r;
        return s;
    }

    [[nodiscard]] double& at(std::size_t upper_flat, std::size_t lower_flat) {
        return data[upper_flat * side() + lower_flat];
    }
    [[nodiscard]] double at(std::size_t upper_flat, std::size_t lower_flat) const {
        return data[upper_flat * side() + lower_flat];
    }

    [[nodiscard]] double trace() const {
        const std::size_t s = side();
        double t = 0.0;
        for (std::size_t i = 0; i < s; ++i) t += data[i * s + i];
        return t;
    }
};

namespace detail {

[[nodiscard]] constexpr std::size_t factorial(std::size_t n) {
    std::size_t f = 1;
    for (std::size_t k = 2; k <= n; ++k) f *= k;
    return f;
}

/// One way of splitting positions {0..p+q-1} between the two factors of a
/// wedge product: `first` lists the positions handed to the left factor in
/// increasing order, `second` the rest.  `sign` is the parity of the
/// permutation that sorts (first, second) back to 0..p+q-1.
struct Shuffle {
    std::vector<std::size_t> first;
    std::vector<std::size_t> second;
    double sign = 1.0;
};

[[nodiscard]] inline std::vector<Shuffle> enumerate_shuffles(std::size_t p, std::size_t q) {
    const std::size_t total = p + q;
    std::vector<Shuffle> out;
    std::vector<std::size_t> pick(p);
    // Iterate over all p-subsets of {0..total-1} in lexicographic order.
    for (std::size_t k = 0; k < p; ++k) pick[k] = k;
    while (true) {
        Shuffle sh;
        sh.first = pick;
        std::size_t inversions = 0;
        std::size_t next = 0;
        for (std::size_t pos = 0; pos < total; ++pos) {
            if (next < p && pick[next] == pos) {
                // Position pos sits at slot `next` of the concatenation; it
                // jumped left past (pos - next) second-factor entries.
                inversions += pos - next;
                ++next;
            } else {
                sh.second.push_back(pos);
            }
        }
        sh.sign = (inversions % 2 == 0) ? 1.0 : -1.0;
        out.push_back(std::move(sh));
        // Advance the subset.
        std::size_t i = p;
        while (i > 0 && pick[i - 1] == total - p + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < p; ++j) pick[j] = pick[j - 1] + 1;
    }
    return out;
}

}  // namespace detail

/// out += scale * (a wedge b), the Grassmann (antisymmetrized) product.  With
/// both inputs antisymmetric the full double permutation sum collapses to a
/// sum over shuffles with prefactor (p! q! / (p+q)!)^2.  Associative, so
/// higher powers can be built by chaining.  This convention satisfies
/// [I wedge I]^{ij}_{ij} = 1/2 for i != j on rank-1 identities.
inline void wedge_accumulate(AntisymTensor& out, const AntisymTensor& a,
                             const AntisymTensor& b, double scale = 1.0) {
    if (a.r != b.r || a.r != out.r)
        throw std::invalid_argument("wedge_accumulate: mode count mismatch");
    const std::size_t p = a.rank, q = b.rank;
    if (out.rank != p + q)
        throw std::invalid_argument("wedge_accumulate: output rank must be " +
                                    std::to_string(p + q));
    const std::size_t r = a.r;
    const std::size_t total = p + q;

    const auto shuffles = detail::enumerate_shuffles(p, q);
    const double pref = scale *
        (double(detail::factorial(p)) * double(detail::factorial(q)) /
         double(detail::factorial(total))) *
        (double(detail::factorial(p)) * double(detail::factorial(q)) /
         double(detail::factorial(total)));

    // Strides for re-encoding sub-tuples, big-endian base r.
    std::array<std::size_t, 4> stride_a{}, stride_b{};
    for (std::size_t k = 0; k < p; ++k) {
        stride_a[k] = 1;
        for (std::size_t j = k + 1; j < p; ++j) stride_a[k] *= r;
    }
    for (std::size_t k = 0; k < q; ++k) {
        stride_b[k] = 1;
        for (std::size_t j = k + 1; j < q; ++j) stride_b[k] *= r;
    }

    // Upper and lower groups share the encoding, so one pair of lookup
    // tables serves both: tab_x[f * S + s] is the flat sub-index handed to
    // factor x when shuffle s splits composite index f.
    const std::size_t side = out.side();
    const std::size_t S = shuffles.size();
    std::vector<std::size_t> tab_a(side * S), tab_b(side * S);
    std::vector<double> sgn(S);
    {
        std::array<std::size_t, 4> digits{};
        for (std::size_t f = 0; f < side; ++f) {
            std::size_t tmp = f;
            for (std::size_t k = total; k-- > 0;) {
                digits[k] = tmp % r;
                tmp /= r;
            }
            for (std::size_t s = 0; s < S; ++s) {
                std::size_t fa = 0, fb = 0;
                for (std::size_t k = 0; k < p; ++k)
                    fa += digits[shuffles[s].first[k]] * stride_a[k];
                for (std::size_t k = 0; k < q; ++k)
                    fb += digits[shuffles[s].second[k]] * stride_b[k];
                tab_a[f * S + s] = fa;
                tab_b[f * S + s] = fb;
            }
        }
        for (std::size_t s = 0; s < S; ++s) sgn[s] = shuffles[s].sign;
    }

    const std::size_t side_a = a.side(), side_b = b.side();
    for (std::size_t uf = 0; uf < side; ++uf) {
        const std::size_t* ua = &tab_a[uf * S];
        const std::size_t* ub = &tab_b[uf * S];
        for (std::size_t lf = 0; lf < side; ++lf) {
            const std::size_t* la = &tab_a[lf * S];
            const std::size_t* lb = &tab_b[lf * S];
            double acc = 0.0;
            for (std::size_t su = 0; su < S; ++su) {
                const double* row_a = &a.data[ua[su] * side_a];
                const double* row_b = &b.data[ub[su] * side_b];
                double inner = 0.0;
                for (std::size_t sl = 0; sl < S; ++sl)
                    inner += sgn[sl] * row_a[la[sl]] * row_b[lb[sl]];
                acc += sgn[su] * inner;
            }
            out.data[uf * side + lf] += pref * acc;
        }
    }
}

[[nodiscard]] inline AntisymTensor wedge(const AntisymTensor& a, const AntisymTensor& b) {
    AntisymTensor out(a.r, a.rank + b.rank);
    wedge_accumulate(out, a, b);
    return out;
}

/// Rank-1 tensor from a 1-RDM.  Discards imaginary parts above imag_tol with
/// an exception; the library's reference states are real.
[[nodiscard]] inline AntisymTensor from_one_rdm(const OneRDM& d1, double imag_tol = 1e-8) {
    const std::size_t r = d1.dim();
    AntisymTensor t(r, 1);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            const Complex v = d1.mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if (std::abs(v.imag()) > imag_tol)
                throw std::invalid_argument("from_one_rdm: imaginary part exceeds tolerance");
            t.at(i, j) = v.real();
        }
    return t;
}

/// Rank-2 tensor in pair normalization: half the full-normalization 2-RDM.
[[nodiscard]] inline AntisymTensor from_two_rdm_pair(const TwoRDM& d2, double imag_tol = 1e-8) {
    const std::size_t r = d2.r;
    AntisymTensor t(r, 2);
    const std::size_t side = r * r;
    for (std::size_t a = 0; a < side; ++a)
        for (std::size_t b = 0; b < side; ++b) {
            const Complex v =
                d2.mat(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
            if (std::abs(v.imag()) > imag_tol)
                throw std::invalid_argument("from_two_rdm_pair: imaginary part exceeds tolerance");
            t.data[a * side + b] = 0.5 * v.real();
        }
    return t;
}

/// Back to the full-normalization 2-RDM (factor 2).
[[nodiscard]] inline TwoRDM to_two_rdm(const AntisymTensor& t) {
    if (t.rank != 2) throw std::invalid_argument("to_two_rdm: rank must be 2");
    TwoRDM d2(t.r);
    const std::size_t side = t.side();
    for (std::size_t a = 0; a < side; ++a)
        for (std::size_t b = 0; b < side; ++b)
            d2.mat(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                2.0 * t.data[a * side + b];
    return d2;
}

/// Trace out the last index pair: out^I_J = sum_m T^{I m}_{J m}.  For an
/// n-particle rank-p marginal this equals ((n-p+1)/p) times the rank-(p-1)
/// marginal in pair normalization.
[[nodiscard]] inline AntisymTensor contract_last(const AntisymTensor& t) {
    if (t.rank < 2) throw std::invalid_argument("contract_last: rank must be >= 2");
    const std::size_t r = t.r;
    AntisymTensor out(r, t.rank - 1);
    const std::size_t sub = out.side();
    const std::size_t side = t.side();
    for (std::size_t u = 0; u < sub; ++u)
        for (std::size_t l = 0; l < sub; ++l) {
            double acc = 0.0;
            for (std::size_t m = 0; m < r; ++m)
                acc += t.data[(u * r + m) * side + (l * r + m)];
            out.data[u * sub + l] = acc;
        }
    return out;
}

/// Largest antisymmetry defect under adjacent index transpositions, checked
/// on both the upper and the lower group.  Adjacent swaps generate the whole
/// symmetric group, so zero here means fully antisymmetric.
[[nodiscard]] inline double max_adjacent_antisymmetry_violation(const AntisymTensor& t) {
    const std::size_t r = t.r, p = t.rank;
    if (p == 1) return 0.0;
    const std::size_t side = t.side();
    double worst = 0.0;
    std::array<std::size_t, 4> up{}, lo{};
    auto encode = [&](const std::array<std::size_t, 4>& d) {
        std::size_t f = 0;
        for (std::size_t k = 0; k < p; ++k) f = f * r + d[k];
        return f;
    };
    for (std::size_t uf = 0; uf < side; ++uf) {
        std::size_t tmp = uf;
        for (std::size_t k = p; k-- > 0;) {
            up[k] = tmp % r;
            tmp /= r;
        }
        for (std::size_t lf = 0; lf < side; ++lf) {
            tmp = lf;
            for (std::size_t k = p; k-- > 0;) {
                lo[k] = tmp % r;
                tmp /= r;
            }
            const double v = t.data[uf * side + lf];
            for (std::size_t k = 0; k + 1 < p; ++k) {
                auto us = up;
                std::swap(us[k], us[k + 1]);
                const double w = t.data[encode(us) * side + lf];
                worst = std::max(worst, std::abs(v + w));
                auto ls = lo;
                std::swap(ls[k], ls[k + 1]);
                const double x = t.data[uf * side + encode(ls)];
                worst = std::max(worst, std::abs(v + x));
            }
        }
    }
    return worst;
}

}  // namespace rdmkit
