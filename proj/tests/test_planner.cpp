// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "rdmkit/core/jordan_wigner.hpp"
#include "rdmkit/core/observables.hpp"
#include "rdmkit/core/qubit_op.hpp"
#include "rdmkit/oracle/fcidump.hpp"
#include "rdmkit/oracle/ground_state.hpp"
#include "rdmkit/oracle/hamiltonian.hpp"
#include "rdmkit/oracle/measure.hpp"
#include "rdmkit/plan/allocate.hpp"
#include "rdmkit/plan/constraints.hpp"
#include "rdmkit/plan/l1min.hpp"
#include "rdmkit/plan/simplex.hpp"
#include "rdmkit/plan/vectorize.hpp"

using namespace rdmkit;

namespace {

std::string data_path(const std::string& name) {
    return std::string(RDMKIT_DATA_DIR) + "/" + name;
}

struct Solved {
    FcidumpData fd;
    FermionOperatorSum hop;
    SectorBasis sector;
    VectorXc state;
    OneRDM d1;
    TwoRDM d2;
};

Solved solve(const std::string& name) {
    Solved s;
    s.fd = load_fcidump(data_path(name));
    s.hop = build_hamiltonian_operator(s.fd.ints);
    s.sector = SectorBasis::ms2_sector(s.fd.basis, s.fd.ms2);
    auto h = build_hamiltonian(s.hop, s.sector);
    s.state = ground_state(h).vector.cast<Complex>();
    auto [d1, d2] = measure_rdms(s.sector, s.state);
    s.d1 = std::move(d1);
    s.d2 = std::move(d2);
    return s;
}

// Pinned against the first verified run; guards the whole
// load -> transform -> norm chain against silent regressions.
constexpr double kH2PauliOneNorm = 1.885050482665696;

}  // namespace

TEST_CASE("vectorization columns and words are mutually inverse") {
    Vectorization vec(4);
    REQUIRE(vec.columns() == 1 + 2 * 16 + 3 * 256);
    for (std::size_t j = 0; j < vec.columns(); ++j) {
        const LadderWord w = vec.word_of(j);
        REQUIRE(vec.column_of(w) == j);
    }
    // Family shapes that are not columns are rejected, not misfiled.
    REQUIRE(vec.column_if(LadderWord{{0, true}, {1, true}}) == -1);              // two creators
    REQUIRE(vec.column_if(LadderWord{{0, true}, {1, false}, {2, false}}) == -1); // odd length
    REQUIRE_THROWS_AS(vec.column_of(LadderWord{{4, true}, {0, false}}), std::invalid_argument);
}

TEST_CASE("vectorize and devectorize round-trip family operators") {
    Vectorization vec(4);
    FermionOperatorSum op;
    op.add(LadderWord{}, Complex{0.25, 0.0});
    op.add(LadderWord{{2, true}, {1, false}}, Complex{-1.5, 0.0});
    op.add(LadderWord{{0, true}, {3, true}, {2, false}, {1, false}}, Complex{0.75, 0.0});
    op.add(LadderWord{{1, false}, {1, true}}, Complex{2.0, 0.0});  // hole word, kept literal
    const VectorXr v = vectorize_operator(op, vec);
    const FermionOperatorSum back = devectorize(v, vec);
    for (const auto& [w, c] : op.terms()) REQUIRE(std::abs(back.coefficient(w) - c) < 1e-15);
    REQUIRE(back.size() == op.size());

    // Complex coefficients cannot be represented.
    FermionOperatorSum bad;
    bad.add(LadderWord{{0, true}, {1, false}}, Complex{0.0, 1.0});
    REQUIRE_THROWS_AS(vectorize_operator(bad, vec), std::invalid_argument);
}

TEST_CASE("canonical compression agrees with normal ordering") {
    Vectorization vec(4);
    const CanonicalColumns canon(vec);
    REQUIRE(canon.full_index.size() == 1 + 16 + 36);  // const, one-body, 6x6 pair space

    FermionOperatorSum op;
    op.add(LadderWord{{2, false}, {0, true}}, Complex{1.0, 0.0});
    op.add(LadderWord{{3, true}, {1, true}, {0, false}, {2, false}}, Complex{-0.5, 0.0});
    op.add(LadderWord{{1, false}, {1, true}}, Complex{0.3, 0.0});
    const VectorXr full = vectorize_operator(op, vec);
    const VectorXr packed = canon.compress(full);
    const FermionOperatorSum direct = op.normal_ordered();
    const FermionOperatorSum expanded = devectorize(canon.expand(packed), vec, 1e-14);
    for (const auto& [w, c] : direct.terms())
        REQUIRE(std::abs(expanded.coefficient(w) - c) < 1e-12);
    REQUIRE(expanded.size() == direct.size());
}

TEST_CASE("constraint generation counts rows by category") {
    auto cs = generate_constraints(4, 2);
    const auto counts = cs.category_counts();
    REQUIRE(counts.at("trace") == 2);
    REQUIRE(counts.at("hermiticity") == 21);
    REQUIRE(counts.at("contraction") == 16);
    REQUIRE(counts.at("antisymmetry") == 220);
    REQUIRE(counts.at("D-Q") == 272);
    REQUIRE(counts.at("D-G") == 256);
    REQUIRE(cs.row_count() == 787);
    REQUIRE(cs.adjoint_row.size() == 787);
    for (std::size_t r = 0; r < cs.row_count(); ++r) {
        REQUIRE(cs.adjoint_row[r] < cs.row_count());
        REQUIRE(cs.adjoint_row[cs.adjoint_row[r]] == r);  // involution
    }

    REQUIRE_THROWS_AS(generate_constraints(4, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(generate_constraints(1, 2), std::invalid_argument);

    // Disabling categories drops exactly their rows.
    ConstraintCategories cats = ConstraintCategories::none();
    cats.antisymmetry = true;
    REQUIRE(generate_constraints(4, 2, cats).row_count() == 220);
}

TEST_CASE("constraint rows annihilate measured marginals") {
    for (const char* name : {"h2_sto3g_0.7414.fcidump", "h4_chain_sto3g_0.7414.fcidump"}) {
        auto s = solve(name);
        const std::size_t r = s.fd.basis.r;
        Vectorization vec(r);
        auto cs = generate_constraints(r, s.fd.basis.n);
        const VectorXr m = marginal_vector(s.d1, s.d2, vec);
        const VectorXr resid = cs.rows * m;
        REQUIRE(resid.cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("constraint rows flag corrupted marginals") {
    auto s = solve("h2_sto3g_0.7414.fcidump");
    Vectorization vec(4);
    auto cs = generate_constraints(4, 2);
    TwoRDM bad = s.d2;
    bad.mat(1, 1) += 1e-3;  // breaks trace and contraction sums
    const VectorXr m = marginal_vector(s.d1, bad, vec);
    REQUIRE((cs.rows * m).cwiseAbs().maxCoeff() > 1e-5);
}

TEST_CASE("one-norms of coefficient lists and operators") {
    REQUIRE(lambda_norm(std::vector<double>{3.0, -1.0}) == 4.0);
    REQUIRE(lambda_norm(std::vector<double>{}) == 0.0);

    // Operator overload normal-orders first and skips the constant.
    FermionOperatorSum op;
    op.add(LadderWord{}, Complex{10.0, 0.0});
    op.add(LadderWord{{1, false}, {0, true}}, Complex{2.0, 0.0});   // = -2 a+_0 a_1
    op.add(LadderWord{{0, true}, {1, false}}, Complex{1.0, 0.0});   // merges to -1
    REQUIRE(lambda_norm(op) == Catch::Approx(1.0).margin(1e-14));

    auto fd = load_fcidump(data_path("h2_sto3g_0.7414.fcidump"));
    auto q = jordan_wigner(build_hamiltonian_operator(fd.ints));
    q.prune();
    REQUIRE(lambda_norm(q) == Catch::Approx(kH2PauliOneNorm).margin(1e-12));
}

TEST_CASE("shot allocation reproduces the closed form") {
    const auto plan = allocate_shots({3.0, 1.0}, 0.5);
    REQUIRE(plan.shots.size() == 2);
    REQUIRE(plan.shots[0] == 48.0);
    REQUIRE(plan.shots[1] == 16.0);
    REQUIRE(plan.shots[0] / plan.shots[1] == 3.0);
    REQUIRE(plan.total() == 64.0);  // (sum |w| sigma / eps)^2
    REQUIRE(plan.lambda == 4.0);
    REQUIRE(plan.predicted_error() == Catch::Approx(0.5).margin(1e-15));

    REQUIRE_THROWS_AS(allocate_shots({1.0}, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(allocate_shots({1.0}, -1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(allocate_shots({1.0}, 0.1, {2.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(allocate_shots({1.0}, 0.1, {0.5, 0.5}), std::invalid_argument);

    // Terms with no spread get no shots and the bound still lands on eps.
    const auto zp = allocate_shots({3.0, 1.0}, 0.5, {0.0, 1.0});
    REQUIRE(zp.shots[0] == 0.0);
    REQUIRE(zp.shots[1] == 4.0);
    REQUIRE(zp.predicted_error() == Catch::Approx(0.5).margin(1e-15));
}

TEST_CASE("shot allocation is locally optimal under transfers") {
    const auto plan = allocate_shots({3.0, -1.0, 0.5}, 0.2, {1.0, 0.7, 0.4});
    const double base = plan.predicted_error();
    for (std::size_t i = 0; i < plan.shots.size(); ++i)
        for (std::size_t j = 0; j < plan.shots.size(); ++j) {
            if (i == j) continue;
            MeasurementPlan moved = plan;
            const double d = 0.05 * moved.shots[i];
            moved.shots[i] -= d;
            moved.shots[j] += d;
            REQUIRE(moved.total() == Catch::Approx(plan.total()).margin(1e-9));
            REQUIRE(moved.predicted_error() >= base - 1e-12);
        }
}

TEST_CASE("pauli application matches matrix definitions") {
    using V = std::vector<Complex>;
    const PauliString X{1, 0}, Z{0, 1}, Y{1, 1};
    V zero{1.0, 0.0}, one{0.0, 1.0};
    REQUIRE(apply_pauli(X, zero, 1)[1] == Complex{1.0, 0.0});
    REQUIRE(apply_pauli(Z, one, 1)[1] == Complex{-1.0, 0.0});
    REQUIRE(apply_pauli(Y, zero, 1)[1] == Complex{0.0, 1.0});   // Y|0> = i|1>
    REQUIRE(apply_pauli(Y, one, 1)[0] == Complex{0.0, -1.0});   // Y|1> = -i|0>

    // X on qubit 0, Z on qubit 1 over a random 2-qubit state: check
    // expectation hermiticity and idempotence of P^2.
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    V psi(4);
    double nrm = 0.0;
    for (auto& a : psi) {
        a = Complex{g(rng), g(rng)};
        nrm += std::norm(a);
    }
    for (auto& a : psi) a /= std::sqrt(nrm);
    const PauliString XZ{1, 2};
    REQUIRE(std::abs(pauli_expectation(XZ, psi, 2).imag()) < 1e-14);
    const V twice = apply_pauli(XZ, apply_pauli(XZ, psi, 2), 2);
    for (std::size_t i = 0; i < 4; ++i) REQUIRE(std::abs(twice[i] - psi[i]) < 1e-14);
}

TEST_CASE("reference spreads shrink the shot budget") {
    auto s = solve("h2_sto3g_0.7414.fcidump");
    auto q = jordan_wigner(s.hop);
    q.prune();
    const VectorXc fock = embed_in_fock(s.sector, VectorXr(s.state.real()));
    const auto sigma = sigma_from_reference(q, fock, s.fd.basis.r);
    for (const double sg : sigma) {
        REQUIRE(sg >= 0.0);
        REQUIRE(sg <= 1.0);
    }
    const double eps = 1.6e-3;
    const auto flat = allocate_shots(q, eps);
    const auto informed = allocate_shots(q, eps, sigma);
    REQUIRE(informed.total() < flat.total());
    REQUIRE(informed.predicted_error() == Catch::Approx(eps).margin(1e-12));
    REQUIRE(flat.labels == informed.labels);
    REQUIRE(flat.labels.size() == q.size() - 1);  // identity carries no shots
}

TEST_CASE("dense one-norm minimization handles the textbook cases") {
    // One row that can cancel the second coordinate exactly.
    VectorXr v(2);
    v << 1.0, 1.0;
    MatrixXr c1(1, 2);
    c1 << 0.0, 1.0;
    const auto r1 = minimize_l1_dense(v, c1);
    REQUIRE(r1.l1 == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(r1.beta(0) == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(r1.residual(0) == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(std::abs(r1.residual(1)) < 1e-12);

    // A zero row buys nothing: beta stays at the feasible origin.
    MatrixXr c0 = MatrixXr::Zero(1, 2);
    const auto r0 = minimize_l1_dense(v, c0);
    REQUIRE(r0.l1 == Catch::Approx(2.0).margin(1e-12));
    REQUIRE(r0.beta(0) == 0.0);

    // Appending rows never hurts.
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    VectorXr vr(8);
    for (Eigen::Index i = 0; i < vr.size(); ++i) vr(i) = g(rng);
    MatrixXr rows(5, 8);
    for (Eigen::Index i = 0; i < rows.rows(); ++i)
        for (Eigen::Index j = 0; j < rows.cols(); ++j) rows(i, j) = g(rng);
    double prev = vr.cwiseAbs().sum() + 1e-12;
    for (Eigen::Index k = 1; k <= rows.rows(); ++k) {
        const auto rk = minimize_l1_dense(vr, rows.topRows(k));
        REQUIRE(rk.lp.optimal);
        REQUIRE(rk.l1 <= prev + 1e-9);
        prev = rk.l1;
    }
}

TEST_CASE("iteration-capped simplex reports and the reweighted fallback recovers") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> g;
    VectorXr v(12);
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = g(rng);
    MatrixXr rows(6, 12);
    for (Eigen::Index i = 0; i < rows.rows(); ++i)
        for (Eigen::Index j = 0; j < rows.cols(); ++j) rows(i, j) = g(rng);

    SimplexOptions capped;
    capped.max_iterations = 1;
    const auto part = minimize_l1_dense(v, rows, -1, capped);
    REQUIRE_FALSE(part.lp.optimal);

    const auto full = minimize_l1_dense(v, rows);
    REQUIRE(full.lp.optimal);
    REQUIRE(part.l1 >= full.l1 - 1e-12);  // capped run is still feasible

    // The reweighted solve is a smooth stand-in, not an exact method: it
    // must land near the optimum and can never beat it.
    const auto irls =
        minimize_l1_irls(rows.transpose(), v, VectorXr::Ones(v.size()), 400);
    REQUIRE(irls.objective <= full.l1 * 1.01);
    REQUIRE(irls.objective >= full.l1 - 1e-9);
}

TEST_CASE("hamiltonian rewriting shrinks the measurement norm") {
    auto s = solve("h2_sto3g_0.7414.fcidump");
    Vectorization vec(4);
    auto cs = generate_constraints(4, 2);
    const VectorXr vh = vectorize_any(s.hop, vec);

    L1MinOptions opt;
    opt.basis = &s.fd.basis;
    const auto rw = minimize_l1(vh, cs, opt);

    REQUIRE(rw.lp.optimal);
    REQUIRE_FALSE(rw.lp.used_irls);
    REQUIRE(rw.lp.quotient_folded);
    REQUIRE(rw.lp.sector_pruned);
    REQUIRE(rw.lambda == Catch::Approx(lambda_norm(s.hop)).margin(1e-12));
    REQUIRE(rw.lambda_tilde <= rw.lambda);
    REQUIRE(rw.lambda_tilde == Catch::Approx(2.301089931661).margin(1e-8));
    REQUIRE(std::abs(rw.lambda_tilde - rw.lp.objective) < 1e-9);
    REQUIRE(rw.lp.gap < 1e-7 * std::max(1.0, rw.lp.objective));

    // terms = input + rows' beta, exactly.
    const VectorXr recon = vh + cs.rows.transpose() * rw.beta;
    REQUIRE((recon - rw.terms).cwiseAbs().maxCoeff() < 1e-12);

    // The rewritten operator is the same observable on every two-particle
    // real state, not just the ground state.
    const auto full = SectorBasis::particle_number_sector(4, 2);
    const FermionOperatorSum ht = rw.operator_sum(vec);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    for (int k = 0; k < 20; ++k) {
        VectorXr x(static_cast<Eigen::Index>(full.dim()));
        for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = g(rng);
        x.normalize();
        const VectorXc xc = x.cast<Complex>();
        const Complex e0 = xc.dot(apply_operator(s.hop, full, xc));
        const Complex e1 = xc.dot(apply_operator(ht, full, xc));
        REQUIRE(std::abs(e1 - e0) <= 1e-8 * std::max(1.0, std::abs(e0)));
    }
}

TEST_CASE("reduction layers do not change the optimum") {
    auto s = solve("h2_sto3g_0.7414.fcidump");
    Vectorization vec(4);
    auto cs = generate_constraints(4, 2);
    const VectorXr vh = vectorize_any(s.hop, vec);

    double values[4];
    for (int mode = 0; mode < 4; ++mode) {
        L1MinOptions opt;
        opt.basis = (mode & 1) ? &s.fd.basis : nullptr;
        opt.use_quotient = (mode & 2) != 0;
        const auto rw = minimize_l1(vh, cs, opt);
        REQUIRE(rw.lp.optimal);
        values[mode] = rw.lambda_tilde;
    }
    for (int mode = 1; mode < 4; ++mode)
        REQUIRE(values[mode] == Catch::Approx(values[0]).margin(1e-9));

    // And the reduced pipeline matches a direct dense solve over the raw
    // row matrix with no presolve at all.
    const auto raw = minimize_l1_dense(
        vectorize_any(s.hop, vec), MatrixXr(cs.rows),
        static_cast<std::ptrdiff_t>(vec.constant_column()));
    REQUIRE(raw.lp.optimal);
    REQUIRE(raw.l1 == Catch::Approx(values[0]).margin(1e-9));
}

TEST_CASE("rewriting helps most on the ring geometry") {
    for (const char* name : {"h4_ring_sto3g_0.7414.fcidump", "h4_chain_sto3g_0.7414.fcidump"}) {
        auto fd = load_fcidump(data_path(name));
        auto hop = build_hamiltonian_operator(fd.ints);
        Vectorization vec(8);
        auto cs = generate_constraints(8, 4);
        REQUIRE(cs.row_count() == 12040);
        L1MinOptions opt;
        opt.basis = &fd.basis;
        const auto rw = minimize_l1(vectorize_any(hop, vec), cs, opt);
        REQUIRE(rw.lp.optimal);
        REQUIRE(rw.lambda_tilde <= rw.lambda);
        if (std::string(name).find("ring") != std::string::npos) {
            const double ratio2 =
                (rw.lambda_tilde * rw.lambda_tilde) / (rw.lambda * rw.lambda);
            REQUIRE(ratio2 <= 0.35);
            REQUIRE(rw.lambda_tilde == Catch::Approx(10.293121529).margin(1e-6));
        } else {
            REQUIRE(rw.lambda_tilde == Catch::Approx(14.903695863).margin(1e-6));
        }
    }
}

TEST_CASE("hermitization preserves the word-level norm and the spectrum") {
    auto s = solve("h2_sto3g_0.7414.fcidump");
    Vectorization vec(4);
    auto cs = generate_constraints(4, 2);
    L1MinOptions opt;
    opt.basis = &s.fd.basis;
    const auto rw = minimize_l1(vectorize_any(s.hop, vec), cs, opt);

    // The folded path already returns a Hermitian vector; averaging with the
    // adjoint is a fixed point and costs nothing.
    const VectorXr sym = hermitize(rw.terms, vec);
    REQUIRE((sym - rw.terms).cwiseAbs().maxCoeff() < 1e-9);

    const FermionOperatorSum hstar = hermitize(rw.operator_sum(vec));
    REQUIRE(lambda_norm(vectorize_operator(hstar, vec), vec) ==
            Catch::Approx(rw.lambda_tilde).margin(1e-9));

    // Hermitian inputs are fixed points; anti-Hermitian parts vanish.
    FermionOperatorSum w;
    w.add(LadderWord{{0, true}, {1, false}}, Complex{1.0, 0.0});
    FermionOperatorSum anti = w;
    anti += w.adjoint() * Complex{-1.0, 0.0};
    REQUIRE(lambda_norm(hermitize(anti)) < 1e-14);
    const FermionOperatorSum sym_op = hermitize(w);
    const FermionOperatorSum twice = hermitize(sym_op);
    for (const auto& [word, c] : sym_op.terms())
        REQUIRE(std::abs(twice.coefficient(word) - c) < 1e-15);
}

TEST_CASE("hermitized rewrite is isospectral on fixed-particle sectors") {
    struct Case {
        const char* name;
        std::size_t modes, particles;
    };
    for (const Case& c : {Case{"h2_sto3g_0.7414.fcidump", 4, 2},
                          Case{"h4_ring_sto3g_0.7414.fcidump", 8, 4}}) {
        auto fd = load_fcidump(data_path(c.name));
        auto hop = build_hamiltonian_operator(fd.ints);
        Vectorization vec(c.modes);
        auto cs = generate_constraints(c.modes, c.particles);
        L1MinOptions opt;
        opt.basis = &fd.basis;
        const auto rw = minimize_l1(vectorize_any(hop, vec), cs, opt);
        const FermionOperatorSum hstar = hermitize(rw.operator_sum(vec));

        const auto sector = SectorBasis::particle_number_sector(c.modes, c.particles);
        const MatrixXr h0 = build_hamiltonian_dense(hop, sector);
        const MatrixXr h1 = build_hamiltonian_dense(hstar, sector);
        Eigen::SelfAdjointEigenSolver<MatrixXr> e0(h0), e1(h1);
        REQUIRE((e0.eigenvalues() - e1.eigenvalues()).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("each constraint family only ever tightens the optimum") {
    auto s = solve("h2_sto3g_0.7414.fcidump");
    Vectorization vec(4);
    const VectorXr vh = vectorize_any(s.hop, vec);

    ConstraintCategories cats = ConstraintCategories::none();
    std::vector<double> path;
    auto run = [&]() {
        const auto rw = minimize_l1(vh, generate_constraints(4, 2, cats));
        REQUIRE(rw.lp.optimal);
        path.push_back(rw.lambda_tilde);
    };
    run();
    cats.antisymmetry = true;
    run();
    cats.trace = true;
    run();
    cats.contraction = true;
    run();
    cats.d_q = true;
    run();
    cats.d_g = true;
    run();
    cats.hermiticity = true;
    run();
    for (std::size_t i = 1; i < path.size(); ++i) REQUIRE(path[i] <= path[i - 1] + 1e-9);

    // With the normal-ordering rows alone the optimum is the canonical
    // one-norm; everything after that is genuine repacking.
    REQUIRE(path[1] == Catch::Approx(lambda_norm(s.hop)).margin(1e-9));
    REQUIRE(path.back() == Catch::Approx(2.301089931661).margin(1e-8));
}

TEST_CASE("pauli-level report tracks both operators through the transform") {
    auto s = solve("h2_sto3g_0.7414.fcidump");
    Vectorization vec(4);
    auto cs = generate_constraints(4, 2);
    L1MinOptions opt;
    opt.basis = &s.fd.basis;
    const auto rw = minimize_l1(vectorize_any(s.hop, vec), cs, opt);
    const auto rep = pauli_report(s.hop, rw, vec);
    REQUIRE(rep.lambda == Catch::Approx(kH2PauliOneNorm).margin(1e-12));
    REQUIRE(rep.lambda_tilde > 0.0);
    REQUIRE(rep.terms > 0);
    REQUIRE(rep.rewritten_terms > 0);
}
