// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>

#include "rdmkit/core/basis.hpp"
#include "rdmkit/core/maps.hpp"
#include "rdmkit/core/rdm.hpp"
#include "rdmkit/project/psd.hpp"

namespace rdmkit {

struct IterativeConfig {
    double eig_tol = 1e-7;  // convergence threshold on the most negative eigenvalue
    std::size_t max_sweeps = 500;
};

struct IterativeDiagnostics {
    std::size_t sweeps = 0;
    bool converged = false;
    bool stalled = false;
    double eig_floor = 0.0;        // most negative eigenvalue across {D1, Q1, D2, Q2, G2}
    double trace_residual = 0.0;   // |Tr D2 - n(n-1)| at exit
    double last_change = 0.0;      // Frobenius movement of D2 in the final sweep
};

/// Sweeps of fixed-trace positive projection through the D2 -> Q2 -> G2 chain.
/// Each node is hermitized, projected to the positive cone at its fixed trace,
/// and mapped back.  The 1-RDM entering every inverse map is read off the
/// projected node itself (partial trace plus the hole-side completion), which
/// keeps it equal to the contraction of the D2 the map produces; feeding back
/// a stale 1-RDM instead makes the sweep expansive and it diverges on noisy
/// input.  Any representable D2 is a fixed point.
[[nodiscard]] inline std::pair<TwoRDM, IterativeDiagnostics> project_iterative_2pos(
    const TwoRDM& d2_measured, const SpinOrbitalBasis& basis, const IterativeConfig& cfg = {}) {
    if (cfg.eig_tol <= 0.0) throw std::invalid_argument("project_iterative_2pos: eig_tol <= 0");
    if (d2_measured.r != basis.r)
        throw std::invalid_argument("project_iterative_2pos: dimension mismatch");
    if (basis.n < 2 || basis.eta() < 2)
        throw std::invalid_argument("project_iterative_2pos: need n >= 2 and r - n >= 2");

    const std::size_t r = basis.r;
    const double n = static_cast<double>(basis.n);
    const double eta = static_cast<double>(basis.eta());
    const MatrixXc id = MatrixXc::Identity(static_cast<Eigen::Index>(r),
                                           static_cast<Eigen::Index>(r));

    TwoRDM d2 = d2_measured;
    IterativeDiagnostics diag;
    OneRDM d1(r);
    for (std::size_t sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
        const MatrixXc before = d2.mat;

        d2.mat = psd_project_fixed_trace(d2.mat, n * (n - 1.0));
        d1.mat = hermitian_part(contract_pair_raw(d2.mat, r)) / (n - 1.0);

        TwoHoleRDM q2 = map_d2_to_q2(d1, d2);
        q2.mat = psd_project_fixed_trace(q2.mat, eta * (eta - 1.0));
        d1.mat = id - (hermitian_part(contract_pair_raw(q2.mat, r)) / (eta - 1.0)).transpose();
        d2 = map_q2_to_d2(d1, q2);

        ParticleHoleRDM g2 = map_d2_to_g2(d1, d2);
        g2.mat = psd_project_fixed_trace(g2.mat, n * (eta + 1.0));
        d1.mat = hermitian_part(contract_pair_raw(g2.mat, r)) / (eta + 1.0);
        d2 = map_g2_to_d2(d1, g2);

        diag.sweeps = sweep + 1;
        diag.last_change = (d2.mat - before).norm();

        OneRDM d1c = contract_d2_to_d1(d2, basis.n);
        d1c.mat = hermitian_part(d1c.mat);
        const PositivityReport rep = check_2positivity(d1c, d2);
        diag.eig_floor = rep.worst();
        diag.trace_residual = std::abs(d2.mat.real().trace() - n * (n - 1.0));
        if (diag.eig_floor > -cfg.eig_tol) {
            diag.converged = true;
            break;
        }
        if (diag.last_change <= 1e-15 * std::max(1.0, before.norm())) {
            diag.stalled = true;  // limit cycle; returning the best available iterate
            break;
        }
    }
    return {std::move(d2), diag};
}

}  // namespace rdmkit
