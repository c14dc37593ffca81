// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rdmkit/core/fermion_op.hpp"
#include "rdmkit/core/rdm.hpp"
#include "rdmkit/oracle/determinants.hpp"

namespace rdmkit {

using SparseMatrixR = Eigen::SparseMatrix<double>;

/// Matrix of a fermionic operator over a determinant sector.  Throws if any
/// coefficient has imaginary residue above tol (molecular Hamiltonians here
/// are real).
[[nodiscard]] inline SparseMatrixR build_hamiltonian(const FermionOperatorSum& op,
                                                     const SectorBasis& sector,
                                                     double imag_tol = 1e-12) {
    const auto dim = static_cast<Eigen::Index>(sector.dim());
    std::vector<Eigen::Triplet<double>> trips;
    for (std::size_t col = 0; col < sector.dim(); ++col) {
        const Det d = sector.dets[col];
        for (const auto& [word, coeff] : op.terms()) {
            if (std::abs(coeff.imag()) > imag_tol)
                throw std::runtime_error("build_hamiltonian: complex coefficient");
            auto r = apply_word(d, word);
            if (!r) continue;
            auto it = sector.index.find(r->first);
            if (it == sector.index.end()) continue;  // leaves the sector (e.g. N-changing word)
            trips.emplace_back(static_cast<Eigen::Index>(it->second),
                               static_cast<Eigen::Index>(col), coeff.real() * r->second);
        }
    }
    SparseMatrixR m(dim, dim);
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

/// Dense variant for small sectors and cross-checks.
[[nodiscard]] inline MatrixXr build_hamiltonian_dense(const FermionOperatorSum& op,
                                                      const SectorBasis& sector,
                                                      double imag_tol = 1e-12) {
    return MatrixXr(build_hamiltonian(op, sector, imag_tol));
}

/// Applies a fermionic operator to a sector state vector (complex).
[[nodiscard]] inline VectorXc apply_operator(const FermionOperatorSum& op,
                                             const SectorBasis& sector, const VectorXc& v) {
    if (static_cast<std::size_t>(v.size()) != sector.dim())
        throw std::invalid_argument("apply_operator: dimension mismatch");
    VectorXc out = VectorXc::Zero(v.size());
    for (std::size_t col = 0; col < sector.dim(); ++col) {
        const Complex amp = v(static_cast<Eigen::Index>(col));
        if (amp == Complex{0.0, 0.0}) continue;
        for (const auto& [word, coeff] : op.terms()) {
            auto r = apply_word(sector.dets[col], word);
            if (!r) continue;
            auto it = sector.index.find(r->first);
            if (it == sector.index.end()) continue;
            out(static_cast<Eigen::Index>(it->second)) += coeff * amp * double(r->second);
        }
    }
    return out;
}

}  // namespace rdmkit
