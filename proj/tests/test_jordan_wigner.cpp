// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <complex>

#include "rdmkit/core/fermion_op.hpp"
#include "rdmkit/core/jordan_wigner.hpp"
#include "rdmkit/core/qubit_op.hpp"
#include "rdmkit/core/rdm.hpp"
#include "rdmkit/oracle/determinants.hpp"

using namespace rdmkit;

namespace {

// Dense matrix of a Pauli string over n qubits, derived directly from the
// single-qubit matrices (independent of the symplectic phase table).
// Qubit k acts on bit k of the basis-state index.
MatrixXc pauli_matrix(const PauliString& ps, std::size_t n) {
    const auto dim = Eigen::Index{1} << n;
    MatrixXc m = MatrixXc::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        const auto c = static_cast<std::uint64_t>(col);
        const auto row = static_cast<Eigen::Index>(c ^ ps.x);
        Complex amp{1.0, 0.0};
        for (std::size_t k = 0; k < n; ++k) {
            const bool xk = (ps.x >> k) & 1, zk = (ps.z >> k) & 1, bk = (c >> k) & 1;
            if (xk && zk) amp *= bk ? Complex{0.0, -1.0} : Complex{0.0, 1.0};  // Y
            else if (zk && bk) amp *= -1.0;                                   // Z
        }
        m(row, col) = amp;
    }
    return m;
}

MatrixXc qubit_op_matrix(const QubitOperatorSum& op, std::size_t n) {
    const auto dim = Eigen::Index{1} << n;
    MatrixXc m = MatrixXc::Zero(dim, dim);
    for (const auto& [ps, c] : op.terms()) m += c * pauli_matrix(ps, n);
    return m;
}

MatrixXc fermion_op_matrix(const FermionOperatorSum& op, std::size_t m) {
    const auto dim = Eigen::Index{1} << m;
    MatrixXc mat = MatrixXc::Zero(dim, dim);
    for (const auto& [w, c] : op.terms())
        for (Det d = 0; d < (Det{1} << m); ++d)
            if (auto r = apply_word(d, w))
                mat(static_cast<Eigen::Index>(r->first), static_cast<Eigen::Index>(d)) +=
                    c * double(r->second);
    return mat;
}

FermionOperatorSum ladder(std::uint32_t mode, bool create) {
    FermionOperatorSum s;
    s.add(LadderWord{{mode, create}}, 1.0);
    return s;
}

}  // namespace

TEST_CASE("pauli string products reproduce matrix products") {
    const std::size_t n = 2;
    // All 16 two-qubit strings against each other.
    for (std::uint64_t ax = 0; ax < 4; ++ax)
        for (std::uint64_t az = 0; az < 4; ++az)
            for (std::uint64_t bx = 0; bx < 4; ++bx)
                for (std::uint64_t bz = 0; bz < 4; ++bz) {
                    PauliString a{ax, az}, b{bx, bz};
                    QubitOperatorSum prod;
                    QubitOperatorSum qa, qb;
                    qa.add(a, 1.0);
                    qb.add(b, 1.0);
                    prod = qa * qb;
                    MatrixXc lhs = qubit_op_matrix(prod, n);
                    MatrixXc rhs = pauli_matrix(a, n) * pauli_matrix(b, n);
                    REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() < 1e-14);
                }
}

TEST_CASE("transformed ladder operators satisfy the anticommutation relations") {
    const std::size_t m = 4;
    for (std::uint32_t p = 0; p < m; ++p) {
        for (std::uint32_t q = 0; q < m; ++q) {
            MatrixXc ap = qubit_op_matrix(jordan_wigner(ladder(p, false)), m);
            MatrixXc aqd = qubit_op_matrix(jordan_wigner(ladder(q, true)), m);
            MatrixXc aq = qubit_op_matrix(jordan_wigner(ladder(q, false)), m);
            MatrixXc anti = ap * aqd + aqd * ap;
            MatrixXc target = (p == q) ? MatrixXc(MatrixXc::Identity(16, 16))
                                       : MatrixXc(MatrixXc::Zero(16, 16));
            REQUIRE((anti - target).cwiseAbs().maxCoeff() < 1e-13);
            MatrixXc anti2 = ap * aq + aq * ap;
            REQUIRE(anti2.cwiseAbs().maxCoeff() < 1e-13);
        }
    }
}

TEST_CASE("transform agrees with the determinant action of every short word") {
    const std::size_t m = 4;
    // Single ladders, all one-body words, and a selection of two-body words.
    for (std::uint32_t p = 0; p < m; ++p)
        for (int flag = 0; flag < 2; ++flag) {
            auto op = ladder(p, flag == 1);
            MatrixXc viaq = qubit_op_matrix(jordan_wigner(op), m);
            MatrixXc direct = fermion_op_matrix(op, m);
            REQUIRE((viaq - direct).cwiseAbs().maxCoeff() < 1e-13);
        }
    for (std::uint32_t p = 0; p < m; ++p)
        for (std::uint32_t q = 0; q < m; ++q) {
            FermionOperatorSum op;
            op.add_one_body(p, q, Complex{0.7, -0.3});
            MatrixXc viaq = qubit_op_matrix(jordan_wigner(op), m);
            MatrixXc direct = fermion_op_matrix(op, m);
            REQUIRE((viaq - direct).cwiseAbs().maxCoeff() < 1e-13);
        }
    const std::uint32_t two_body[][4] = {{0, 1, 1, 0}, {0, 2, 3, 1}, {3, 2, 1, 0}, {1, 3, 3, 1}};
    for (const auto& w : two_body) {
        FermionOperatorSum op;
        op.add_two_body(w[0], w[1], w[2], w[3], 1.0);
        MatrixXc viaq = qubit_op_matrix(jordan_wigner(op), m);
        MatrixXc direct = fermion_op_matrix(op, m);
        REQUIRE((viaq - direct).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("occupation operators map to (1 - Z_k)/2") {
    const std::size_t m = 3;
    for (std::uint32_t k = 0; k < m; ++k) {
        FermionOperatorSum nk;
        nk.add_one_body(k, k, 1.0);
        auto q = jordan_wigner(nk);
        REQUIRE(q.terms().size() == 2);
        PauliString id{0, 0}, zk{0, std::uint64_t{1} << k};
        REQUIRE(std::abs(q.terms().at(id) - Complex{0.5, 0.0}) < 1e-15);
        REQUIRE(std::abs(q.terms().at(zk) - Complex{-0.5, 0.0}) < 1e-15);
    }
}

TEST_CASE("pauli-level 1-norm excludes the identity coefficient") {
    QubitOperatorSum q;
    q.add(PauliString{0, 0}, Complex{-3.0, 0.0});
    q.add(PauliString{1, 0}, Complex{0.5, 0.0});
    q.add(PauliString{0, 2}, Complex{-1.5, 0.0});
    REQUIRE(lambda_norm(q) == Catch::Approx(2.0));
}

TEST_CASE("real_terms rejects residual imaginary coefficients") {
    QubitOperatorSum q;
    q.add(PauliString{1, 1}, Complex{0.0, 0.3});
    REQUIRE_THROWS_AS(q.real_terms(), std::runtime_error);
}
