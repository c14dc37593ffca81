// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdmkit/core/rdm.hpp"
#include "rdmkit/oracle/measure.hpp"

namespace rdmkit {

enum class ChannelKind {
    dephasing,
    amplitude_damping_dephasing,
    depolarizing,
};

[[nodiscard]] inline std::string to_string(ChannelKind k) {
    switch (k) {
        case ChannelKind::dephasing: return "dephasing";
        case ChannelKind::amplitude_damping_dephasing: return "amplitude-damping-plus-dephasing";
        case ChannelKind::depolarizing: return "depolarizing";
    }
    return "?";
}

/// Single-qubit decoherence applied uniformly and independently to every
/// mode of a Fock-space density matrix.  One elapsed-time fraction drives
/// all three decay strengths:
///   dephasing      p = (1 - exp(-t/T2)) / 2, Kraus {sqrt(1-p) I, sqrt(p) Z};
///                  off-diagonals shrink by exactly exp(-t/T2)
///   damping        gamma = 1 - exp(-t/T1), standard two-operator form,
///                  composed after dephasing for the combined channel
///   depolarizing   p = 1 - exp(-t/T2), uniform {X, Y, Z} mixture at p/3
/// elapsed_fraction is t/T2; t1_over_t2 rescales the damping clock (the
/// default ties T1 to T2).
struct ChannelModel {
    ChannelKind kind = ChannelKind::dephasing;
    double elapsed_fraction = 0.05;
    double t1_over_t2 = 1.0;

    [[nodiscard]] std::vector<Eigen::Matrix2cd> kraus_ops() const {
        if (elapsed_fraction < 0.0)
            throw std::invalid_argument("ChannelModel: negative elapsed fraction");
        if (t1_over_t2 <= 0.0) throw std::invalid_argument("ChannelModel: T1/T2 must be positive");
        const Complex one{1.0, 0.0};
        Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
        Eigen::Matrix2cd x, y, z;
        x << 0.0, one, one, 0.0;
        y << 0.0, Complex{0.0, -1.0}, Complex{0.0, 1.0}, 0.0;
        z << one, 0.0, 0.0, -one;

        const double p_phi = (1.0 - std::exp(-elapsed_fraction)) / 2.0;
        std::vector<Eigen::Matrix2cd> deph{std::sqrt(1.0 - p_phi) * id, std::sqrt(p_phi) * z};
        switch (kind) {
            case ChannelKind::dephasing: return deph;
            case ChannelKind::amplitude_damping_dephasing: {
                const double gamma = 1.0 - std::exp(-elapsed_fraction / t1_over_t2);
                Eigen::Matrix2cd k0 = Eigen::Matrix2cd::Zero(), k1 = Eigen::Matrix2cd::Zero();
                k0(0, 0) = 1.0;
                k0(1, 1) = std::sqrt(1.0 - gamma);
                k1(0, 1) = std::sqrt(gamma);
                std::vector<Eigen::Matrix2cd> out;
                for (const auto& kd : {k0, k1})
                    for (const auto& kp : deph) out.push_back(kd * kp);
                return out;
            }
            case ChannelKind::depolarizing: {
                const double p_d = 1.0 - std::exp(-elapsed_fraction);
                return {std::sqrt(1.0 - p_d) * id, std::sqrt(p_d / 3.0) * x,
                        std::sqrt(p_d / 3.0) * y, std::sqrt(p_d / 3.0) * z};
            }
        }
        throw std::logic_error("ChannelModel: unknown kind");
    }
};

/// Largest element of |sum_i K_i' K_i - I|; zero for a trace-preserving set.
[[nodiscard]] inline double kraus_completeness_error(const std::vector<Eigen::Matrix2cd>& ops) {
    Eigen::Matrix2cd acc = Eigen::Matrix2cd::Zero();
    for (const auto& k : ops) acc += k.adjoint() * k;
    return (acc - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
}

namespace detail {

/// rho -> sum_k (I (x) K_k (x) I) rho (...)' with K_k acting on one mode bit.
[[nodiscard]] inline MatrixXc apply_one_qubit(const MatrixXc& rho, std::size_t qubit,
                                              const std::vector<Eigen::Matrix2cd>& ops) {
    const Eigen::Index dim = rho.rows();
    const auto bit = static_cast<Eigen::Index>(std::size_t{1} << qubit);
    MatrixXc out = MatrixXc::Zero(dim, dim);
    MatrixXc half(dim, dim);
    for (const auto& k : ops) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            const Eigen::Index b = (i & bit) ? 1 : 0;
            half.row(i) = k(b, 0) * rho.row(i & ~bit) + k(b, 1) * rho.row(i | bit);
        }
        for (Eigen::Index j = 0; j < dim; ++j) {
            const Eigen::Index b = (j & bit) ? 1 : 0;
            out.col(j) += std::conj(k(b, 0)) * half.col(j & ~bit) +
                          std::conj(k(b, 1)) * half.col(j | bit);
        }
    }
    return out;
}

}  // namespace detail

/// Applies the channel's single-qubit Kraus set to every mode of the state
/// under the occupation-number (Jordan-Wigner computational basis)
/// identification.  Trace is preserved; the output stays positive but in
/// general leaves the fixed-particle-number sector, which is exactly the
/// corruption the projections are asked to repair.
[[nodiscard]] inline DensityMatrix apply_channel(const DensityMatrix& state,
                                                 const ChannelModel& channel,
                                                 double trace_tol = 1e-8) {
    if (std::abs(state.trace() - Complex{1.0, 0.0}) > trace_tol)
        throw std::invalid_argument("apply_channel: density matrix trace != 1");
    const auto ops = channel.kraus_ops();
    if (kraus_completeness_error(ops) > 1e-12)
        throw std::logic_error("apply_channel: Kraus set is not trace preserving");
    DensityMatrix out = state;
    for (std::size_t q = 0; q < state.r; ++q) out.rho = detail::apply_one_qubit(out.rho, q, ops);
    return out;
}

/// Heisenberg picture: sum_k K' O K on every mode, so that
/// Tr[channel(rho) O] = Tr[rho adjoint_channel(O)].  Unital for dephasing
/// and depolarizing but not for damping, which is why it acts on operators
/// rather than states.
[[nodiscard]] inline MatrixXc apply_channel_adjoint(const MatrixXc& op, std::size_t modes,
                                                    const ChannelModel& channel) {
    auto ops = channel.kraus_ops();
    for (auto& k : ops) k = Eigen::Matrix2cd(k.adjoint());
    MatrixXc out = op;
    for (std::size_t q = 0; q < modes; ++q) out = detail::apply_one_qubit(out, q, ops);
    return out;
}

}  // namespace rdmkit
