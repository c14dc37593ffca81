// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "rdmkit/core/fermion_op.hpp"
#include "rdmkit/core/rdm.hpp"
#include "rdmkit/oracle/determinants.hpp"

using namespace rdmkit;

namespace {

// Dense Fock-space matrix of an operator sum, built directly from the
// determinant action.  This is the independent reference implementation the
// algebraic routines are checked against.
MatrixXc op_matrix(const FermionOperatorSum& op, std::size_t m) {
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

TEST_CASE("anticommutation relations hold as operator identities") {
    const std::size_t m = 3;
    for (std::uint32_t p = 0; p < m; ++p) {
        for (std::uint32_t q = 0; q < m; ++q) {
            FermionOperatorSum anti = ladder(p, false) * ladder(q, true) +
                                      ladder(q, true) * ladder(p, false);
            FermionOperatorSum no = anti.normal_ordered();
            if (p == q) {
                REQUIRE(no.size() == 1);
                REQUIRE(no.terms().begin()->first.empty());
                REQUIRE(no.terms().begin()->second == Complex{1.0, 0.0});
            } else {
                REQUIRE(no.empty());
            }
            FermionOperatorSum cc = ladder(p, true) * ladder(q, true) +
                                    ladder(q, true) * ladder(p, true);
            REQUIRE(cc.normal_ordered().empty());
        }
    }
}

TEST_CASE("normal ordering canonicalizes creation order with sign") {
    FermionOperatorSum s;
    s.add(LadderWord{{2, true}, {1, true}}, 1.0);
    auto no = s.normal_ordered();
    REQUIRE(no.size() == 1);
    const auto& [w, c] = *no.terms().begin();
    REQUIRE(w == LadderWord{{1, true}, {2, true}});
    REQUIRE(c == Complex{-1.0, 0.0});

    FermionOperatorSum doubled;
    doubled.add(LadderWord{{1, true}, {1, true}}, 3.0);
    REQUIRE(doubled.normal_ordered().empty());
}

TEST_CASE("normal ordering preserves the operator's matrix action") {
    const std::size_t m = 4;
    std::mt19937_64 rng(20260816);
    std::uniform_int_distribution<int> len_dist(0, 5);
    std::uniform_int_distribution<std::uint32_t> mode_dist(0, m - 1);
    std::uniform_int_distribution<int> flag_dist(0, 1);
    std::normal_distribution<double> coeff_dist(0.0, 1.0);

    for (int trial = 0; trial < 40; ++trial) {
        FermionOperatorSum op;
        for (int t = 0; t < 4; ++t) {
            LadderWord w(static_cast<std::size_t>(len_dist(rng)));
            for (auto& o : w) o = LadderOp{mode_dist(rng), flag_dist(rng) == 1};
            op.add(w, Complex{coeff_dist(rng), coeff_dist(rng)});
        }
        MatrixXc before = op_matrix(op, m);
        MatrixXc after = op_matrix(op.normal_ordered(), m);
        REQUIRE((before - after).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("normal ordering is idempotent and canonical") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint32_t> mode_dist(0, 3);
    std::uniform_int_distribution<int> flag_dist(0, 1);
    for (int trial = 0; trial < 20; ++trial) {
        FermionOperatorSum op;
        LadderWord w(4);
        for (auto& o : w) o = LadderOp{mode_dist(rng), flag_dist(rng) == 1};
        op.add(w, 1.0);
        auto once = op.normal_ordered();
        auto twice = once.normal_ordered();
        REQUIRE(once.terms() == twice.terms());
    }
}

TEST_CASE("adjoint is an involution and reverses products") {
    FermionOperatorSum a;
    a.add(LadderWord{{0, true}, {2, false}}, Complex{1.0, 2.0});
    a.add(LadderWord{{1, false}}, Complex{0.0, -1.0});
    REQUIRE(a.adjoint().adjoint().terms() == a.terms());

    FermionOperatorSum b;
    b.add(LadderWord{{3, true}}, Complex{0.5, 0.25});
    auto lhs = (a * b).adjoint();
    auto rhs = b.adjoint() * a.adjoint();
    REQUIRE(lhs.terms() == rhs.terms());
}

TEST_CASE("hermitian average fixes Hermitian operators and symmetrizes") {
    FermionOperatorSum n01;
    n01.add_one_body(0, 1, Complex{0.0, 1.0});
    auto h = hermitian_average(n01);
    REQUIRE(h.adjoint().terms() == h.terms());

    // A number operator is already Hermitian.
    FermionOperatorSum num;
    num.add_one_body(2, 2, 1.0);
    REQUIRE(hermitian_average(num).terms() == num.terms());
}

TEST_CASE("coefficient 1-norm skips the identity term") {
    FermionOperatorSum op = FermionOperatorSum::constant(5.0);
    op.add_one_body(0, 1, Complex{3.0, 4.0});
    op.add_one_body(1, 0, -2.0);
    REQUIRE(op.coefficient_norm1() == Catch::Approx(7.0));
}

TEST_CASE("mode_count reflects the largest index used") {
    FermionOperatorSum op;
    REQUIRE(op.mode_count() == 0);
    op.add_one_body(4, 2, 1.0);
    REQUIRE(op.mode_count() == 5);
}
