// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <stdexcept>

#include "rdmkit/core/basis.hpp"

namespace rdmkit {

using Complex = std::complex<double>;
using MatrixXc = Eigen::MatrixXcd;
using MatrixXr = Eigen::MatrixXd;
using VectorXr = Eigen::VectorXd;
using VectorXc = Eigen::VectorXcd;

/// One-particle marginal: mat(i, j) = <a+_i a_j>.  Hermitian with trace n
/// for valid states; eigenvalues in [0, 1] when representable.
struct OneRDM {
    MatrixXc mat;

    OneRDM() = default;
    explicit OneRDM(std::size_t r) : mat(MatrixXc::Zero(r, r)) {}
    explicit OneRDM(MatrixXc m) : mat(std::move(m)) {
        if (mat.rows() != mat.cols()) throw std::invalid_argument("OneRDM: not square");
    }

    [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(mat.rows()); }
    [[nodiscard]] Complex trace() const { return mat.trace(); }
};

/// Two-particle marginal stored as an r^2 x r^2 matrix over composite
/// indices: mat(p*r + q, s*r + t) = <a+_p a+_q a_t a_s>.  The subscript
/// pair of D2^{pq}_{st} reads the annihilation word right to left, so the
/// composite column index (s, t) carries the word a_t a_s.
///
/// Invariants for valid states: Hermitian as a matrix, antisymmetric under
/// p<->q and s<->t (sign flip), trace n(n-1), and contraction over the
/// second slot reproduces (n-1) * OneRDM.
struct TwoRDM {
    std::size_t r = 0;  // spin orbitals
    MatrixXc mat;       // r^2 x r^2

    TwoRDM() = default;
    explicit TwoRDM(std::size_t r_) : r(r_), mat(MatrixXc::Zero(r_ * r_, r_ * r_)) {}
    TwoRDM(std::size_t r_, MatrixXc m) : r(r_), mat(std::move(m)) {
        if (static_cast<std::size_t>(mat.rows()) != r * r ||
            static_cast<std::size_t>(mat.cols()) != r * r)
            throw std::invalid_argument("TwoRDM: matrix is not r^2 x r^2");
    }

    [[nodiscard]] std::size_t dim() const { return r * r; }
    [[nodiscard]] Complex trace() const { return mat.trace(); }

    /// Element <a+_p a+_q a_t a_s> (tensor accessor; s, t follow the
    /// superscript/subscript convention above).
    [[nodiscard]] Complex operator()(std::size_t p, std::size_t q, std::size_t s,
                                     std::size_t t) const {
        return mat(static_cast<Eigen::Index>(p * r + q), static_cast<Eigen::Index>(s * r + t));
    }
    [[nodiscard]] Complex& operator()(std::size_t p, std::size_t q, std::size_t s,
                                      std::size_t t) {
        return mat(static_cast<Eigen::Index>(p * r + q), static_cast<Eigen::Index>(s * r + t));
    }
};

/// One-hole marginal: mat(p, q) = <a_p a+_q> = delta_pq - D1(q, p).
struct HoleRDM {
    MatrixXc mat;
    HoleRDM() = default;
    explicit HoleRDM(std::size_t r) : mat(MatrixXc::Zero(r, r)) {}
    explicit HoleRDM(MatrixXc m) : mat(std::move(m)) {}
    [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(mat.rows()); }
    [[nodiscard]] Complex trace() const { return mat.trace(); }
};

/// Two-hole marginal: mat(p*r + q, s*r + t) = <a_p a_q a+_t a+_s>.
/// Trace eta(eta-1) for valid states.
struct TwoHoleRDM {
    std::size_t r = 0;
    MatrixXc mat;
    TwoHoleRDM() = default;
    explicit TwoHoleRDM(std::size_t r_) : r(r_), mat(MatrixXc::Zero(r_ * r_, r_ * r_)) {}
    TwoHoleRDM(std::size_t r_, MatrixXc m) : r(r_), mat(std::move(m)) {}
    [[nodiscard]] std::size_t dim() const { return r * r; }
    [[nodiscard]] Complex trace() const { return mat.trace(); }
};

/// Particle-hole marginal: mat(p*r + q, s*r + t) = <a+_p a_q a+_t a_s>.
/// Trace n(eta+1) for valid states.
struct ParticleHoleRDM {
    std::size_t r = 0;
    MatrixXc mat;
    ParticleHoleRDM() = default;
    explicit ParticleHoleRDM(std::size_t r_) : r(r_), mat(MatrixXc::Zero(r_ * r_, r_ * r_)) {}
    ParticleHoleRDM(std::size_t r_, MatrixXc m) : r(r_), mat(std::move(m)) {}
    [[nodiscard]] std::size_t dim() const { return r * r; }
    [[nodiscard]] Complex trace() const { return mat.trace(); }
};

/// Largest |imaginary part| over all elements; guards the real-arithmetic
/// assumptions of the molecular test systems.
[[nodiscard]] inline double max_imag(const MatrixXc& m) {
    return m.imag().cwiseAbs().maxCoeff();
}

/// Hermitian part (m + m^dagger) / 2.
[[nodiscard]] inline MatrixXc hermitian_part(const MatrixXc& m) {
    return 0.5 * (m + m.adjoint());
}

}  // namespace rdmkit
