// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <stdexcept>

#include "rdmkit/core/rdm.hpp"

namespace rdmkit {

/// Q1(p, q) = <a_p a+_q> = delta_pq - D1(q, p).
[[nodiscard]] inline HoleRDM map_d1_to_q1(const OneRDM& d1) {
    const auto r = static_cast<Eigen::Index>(d1.dim());
    return HoleRDM(MatrixXc(MatrixXc::Identity(r, r) - d1.mat.transpose()));
}

[[nodiscard]] inline OneRDM map_q1_to_d1(const HoleRDM& q1) {
    const auto r = static_cast<Eigen::Index>(q1.dim());
    return OneRDM(MatrixXc(MatrixXc::Identity(r, r) - q1.mat.transpose()));
}

/// Q2 from (D1, D2) by normal ordering a_p a_q a+_t a+_s:
///   Q2(pq, st) = d_ps d_qt - d_pt d_qs
///              - d_qt D1(s,p) + d_pt D1(s,q) + d_qs D1(t,p) - d_ps D1(t,q)
///              + D2(ts, qp)
/// where pairs are composite row/column indices.  Trace maps n(n-1) to
/// eta(eta-1).
[[nodiscard]] inline TwoHoleRDM map_d2_to_q2(const OneRDM& d1, const TwoRDM& d2) {
    const std::size_t r = d2.r;
    if (d1.dim() != r) throw std::invalid_argument("map_d2_to_q2: dimension mismatch");
    TwoHoleRDM q2(r);
    for (std::size_t p = 0; p < r; ++p)
        for (std::size_t q = 0; q < r; ++q)
            for (std::size_t s = 0; s < r; ++s)
                for (std::size_t t = 0; t < r; ++t) {
                    Complex v = d2.mat(static_cast<Eigen::Index>(t * r + s),
                                       static_cast<Eigen::Index>(q * r + p));
                    if (p == s && q == t) v += 1.0;
                    if (p == t && q == s) v -= 1.0;
                    if (q == t) v -= d1.mat(s, p);
                    if (p == t) v += d1.mat(s, q);
                    if (q == s) v += d1.mat(t, p);
                    if (p == s) v -= d1.mat(t, q);
                    q2.mat(static_cast<Eigen::Index>(p * r + q),
                           static_cast<Eigen::Index>(s * r + t)) = v;
                }
    return q2;
}

/// Inverse of map_d2_to_q2 at fixed D1.
[[nodiscard]] inline TwoRDM map_q2_to_d2(const OneRDM& d1, const TwoHoleRDM& q2) {
    const std::size_t r = q2.r;
    if (d1.dim() != r) throw std::invalid_argument("map_q2_to_d2: dimension mismatch");
    TwoRDM d2(r);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b)
            for (std::size_t c = 0; c < r; ++c)
                for (std::size_t d = 0; d < r; ++d) {
                    Complex v = q2.mat(static_cast<Eigen::Index>(d * r + c),
                                       static_cast<Eigen::Index>(b * r + a));
                    if (d == b && c == a) v -= 1.0;
                    if (d == a && c == b) v += 1.0;
                    if (c == a) v += d1.mat(b, d);
                    if (d == a) v -= d1.mat(b, c);
                    if (c == b) v -= d1.mat(a, d);
                    if (d == b) v += d1.mat(a, c);
                    d2.mat(static_cast<Eigen::Index>(a * r + b),
                           static_cast<Eigen::Index>(c * r + d)) = v;
                }
    return d2;
}

/// G2 from (D1, D2):
///   G2(pq, st) = d_qt D1(p, s) - D2(pt, sq).
/// Trace maps n(n-1) to n(eta+1).
[[nodiscard]] inline ParticleHoleRDM map_d2_to_g2(const OneRDM& d1, const TwoRDM& d2) {
    const std::size_t r = d2.r;
    if (d1.dim() != r) throw std::invalid_argument("map_d2_to_g2: dimension mismatch");
    ParticleHoleRDM g2(r);
    for (std::size_t p = 0; p < r; ++p)
        for (std::size_t q = 0; q < r; ++q)
            for (std::size_t s = 0; s < r; ++s)
                for (std::size_t t = 0; t < r; ++t) {
                    Complex v = -d2.mat(static_cast<Eigen::Index>(p * r + t),
                                        static_cast<Eigen::Index>(s * r + q));
                    if (q == t) v += d1.mat(p, s);
                    g2.mat(static_cast<Eigen::Index>(p * r + q),
                           static_cast<Eigen::Index>(s * r + t)) = v;
                }
    return g2;
}

/// Inverse of map_d2_to_g2 at fixed D1.
[[nodiscard]] inline TwoRDM map_g2_to_d2(const OneRDM& d1, const ParticleHoleRDM& g2) {
    const std::size_t r = g2.r;
    if (d1.dim() != r) throw std::invalid_argument("map_g2_to_d2: dimension mismatch");
    TwoRDM d2(r);
    for (std::size_t p = 0; p < r; ++p)
        for (std::size_t q = 0; q < r; ++q)
            for (std::size_t s = 0; s < r; ++s)
                for (std::size_t t = 0; t < r; ++t) {
                    Complex v = -g2.mat(static_cast<Eigen::Index>(p * r + t),
                                        static_cast<Eigen::Index>(s * r + q));
                    if (t == q) v += d1.mat(p, s);
                    d2.mat(static_cast<Eigen::Index>(p * r + q),
                           static_cast<Eigen::Index>(s * r + t)) = v;
                }
    return d2;
}

/// Raw partial trace over the second index of each pair: sum_q M(pq, sq).
/// Works for any of the pair-indexed marginal matrices.
[[nodiscard]] inline MatrixXc contract_pair_raw(const MatrixXc& m, std::size_t r) {
    MatrixXc out = MatrixXc::Zero(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
    for (std::size_t p = 0; p < r; ++p)
        for (std::size_t s = 0; s < r; ++s)
            for (std::size_t q = 0; q < r; ++q)
                out(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(s)) +=
                    m(static_cast<Eigen::Index>(p * r + q), static_cast<Eigen::Index>(s * r + q));
    return out;
}

/// Raw partial trace over the second index pair: sum_q D2(pq, sq).  Equals
/// (n-1) D1(p, s) for an n-particle state.
[[nodiscard]] inline MatrixXc contract_d2_raw(const TwoRDM& d2) {
    return contract_pair_raw(d2.mat, d2.r);
}

/// D1 recovered from a (possibly noisy) D2 via the contraction identity,
/// 1/(n-1) prefactor included.
[[nodiscard]] inline OneRDM contract_d2_to_d1(const TwoRDM& d2, std::size_t n) {
    if (n < 2) throw std::invalid_argument("contract_d2_to_d1: need n >= 2");
    return OneRDM(MatrixXc(contract_d2_raw(d2) / double(n - 1)));
}

/// Smallest eigenvalues of the five marginal forms (Hermitian parts taken
/// first; the maps preserve Hermiticity for Hermitian inputs).
struct PositivityReport {
    double min_eig_d1 = 0.0;
    double min_eig_q1 = 0.0;
    double min_eig_d2 = 0.0;
    double min_eig_q2 = 0.0;
    double min_eig_g2 = 0.0;

    [[nodiscard]] double worst() const {
        double w = min_eig_d1;
        if (min_eig_q1 < w) w = min_eig_q1;
        if (min_eig_d2 < w) w = min_eig_d2;
        if (min_eig_q2 < w) w = min_eig_q2;
        if (min_eig_g2 < w) w = min_eig_g2;
        return w;
    }
    [[nodiscard]] bool all_nonnegative(double tol) const { return worst() >= -tol; }
};

namespace detail {
[[nodiscard]] inline double min_eigenvalue(const MatrixXc& m) {
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(hermitian_part(m),
                                               Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}
}  // namespace detail

/// Evaluates all five 2-positivity forms for a (D1, D2) pair.
[[nodiscard]] inline PositivityReport check_2positivity(const OneRDM& d1, const TwoRDM& d2) {
    PositivityReport rep;
    rep.min_eig_d1 = detail::min_eigenvalue(d1.mat);
    rep.min_eig_q1 = detail::min_eigenvalue(map_d1_to_q1(d1).mat);
    rep.min_eig_d2 = detail::min_eigenvalue(d2.mat);
    rep.min_eig_q2 = detail::min_eigenvalue(map_d2_to_q2(d1, d2).mat);
    rep.min_eig_g2 = detail::min_eigenvalue(map_d2_to_g2(d1, d2).mat);
    return rep;
}

}  // namespace rdmkit
