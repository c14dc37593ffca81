// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>

#include "rdmkit/core/maps.hpp"
#include "rdmkit/oracle/fcidump.hpp"
#include "rdmkit/oracle/ground_state.hpp"
#include "rdmkit/oracle/haar.hpp"
#include "rdmkit/oracle/hamiltonian.hpp"
#include "rdmkit/oracle/measure.hpp"

using namespace rdmkit;

namespace {

std::string data_path(const std::string& name) {
    return std::string(RDMKIT_DATA_DIR) + "/" + name;
}

struct Solved {
    FcidumpData fd;
    SectorBasis sector;
    VectorXc state;
    OneRDM d1;
    TwoRDM d2;
};

Solved solve(const std::string& name) {
    Solved s;
    s.fd = load_fcidump(data_path(name));
    s.sector = SectorBasis::ms2_sector(s.fd.basis, s.fd.ms2);
    auto h = build_hamiltonian(build_hamiltonian_operator(s.fd.ints), s.sector);
    s.state = ground_state(h).vector.cast<Complex>();
    auto [d1, d2] = measure_rdms(s.sector, s.state);
    s.d1 = std::move(d1);
    s.d2 = std::move(d2);
    return s;
}

}  // namespace

TEST_CASE("hole marginal map matches direct measurement") {
    auto s = solve("h2_sto3g_0.7414.fcidump");
    const std::size_t r = s.fd.basis.r;
    auto q1 = map_d1_to_q1(s.d1);
    for (std::uint32_t p = 0; p < r; ++p)
        for (std::uint32_t q = 0; q < r; ++q) {
            Complex direct = word_expectation(s.sector, s.state,
                                              LadderWord{{p, false}, {q, true}});
            REQUIRE(std::abs(q1.mat(p, q) - direct) < 1e-12);
        }
    // Roundtrip and trace.
    REQUIRE((map_q1_to_d1(q1).mat - s.d1.mat).cwiseAbs().maxCoeff() < 1e-13);
    const double eta = double(s.fd.basis.eta());
    REQUIRE(q1.trace().real() == Catch::Approx(eta).margin(1e-10));
}

TEST_CASE("two-hole marginal map matches direct measurement") {
    auto s = solve("h2_sto3g_0.7414.fcidump");
    const std::size_t r = s.fd.basis.r;
    auto q2 = map_d2_to_q2(s.d1, s.d2);
    for (std::uint32_t p = 0; p < r; ++p)
        for (std::uint32_t q = 0; q < r; ++q)
            for (std::uint32_t a = 0; a < r; ++a)
                for (std::uint32_t b = 0; b < r; ++b) {
                    // mat(p r + q, a r + b) = <a_p a_q a+_b a+_a>
                    Complex direct = word_expectation(
                        s.sector, s.state,
                        LadderWord{{p, false}, {q, false}, {b, true}, {a, true}});
                    REQUIRE(std::abs(q2.mat(p * r + q, a * r + b) - direct) < 1e-11);
                }
    const double eta = double(s.fd.basis.eta());
    REQUIRE(q2.trace().real() == Catch::Approx(eta * (eta - 1.0)).margin(1e-9));
    auto back = map_q2_to_d2(s.d1, q2);
    REQUIRE((back.mat - s.d2.mat).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("particle-hole marginal map matches direct measurement") {
    auto s = solve("h2_sto3g_0.7414.fcidump");
    const std::size_t r = s.fd.basis.r;
    auto g2 = map_d2_to_g2(s.d1, s.d2);
    for (std::uint32_t p = 0; p < r; ++p)
        for (std::uint32_t q = 0; q < r; ++q)
            for (std::uint32_t a = 0; a < r; ++a)
                for (std::uint32_t b = 0; b < r; ++b) {
                    // mat(p r + q, a r + b) = <a+_p a_q a+_b a_a>
                    Complex direct = word_expectation(
                        s.sector, s.state,
                        LadderWord{{p, true}, {q, false}, {b, true}, {a, false}});
                    REQUIRE(std::abs(g2.mat(p * r + q, a * r + b) - direct) < 1e-11);
                }
    const double n = double(s.fd.basis.n), eta = double(s.fd.basis.eta());
    REQUIRE(g2.trace().real() == Catch::Approx(n * (eta + 1.0)).margin(1e-9));
    auto back = map_g2_to_d2(s.d1, g2);
    REQUIRE((back.mat - s.d2.mat).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("maps hold on the larger four-atom system") {
    auto s = solve("h4_chain_sto3g_0.7500.fcidump");
    const double n = double(s.fd.basis.n), eta = double(s.fd.basis.eta());
    auto q2 = map_d2_to_q2(s.d1, s.d2);
    auto g2 = map_d2_to_g2(s.d1, s.d2);
    REQUIRE(q2.trace().real() == Catch::Approx(eta * (eta - 1.0)).margin(1e-8));
    REQUIRE(g2.trace().real() == Catch::Approx(n * (eta + 1.0)).margin(1e-8));
    REQUIRE((map_q2_to_d2(s.d1, q2).mat - s.d2.mat).cwiseAbs().maxCoeff() < 1e-11);
    REQUIRE((map_g2_to_d2(s.d1, g2).mat - s.d2.mat).cwiseAbs().maxCoeff() < 1e-11);

    // Spot-check a handful of elements against direct measurement.
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::uint32_t> idx(0, static_cast<std::uint32_t>(s.fd.basis.r - 1));
    const std::size_t r = s.fd.basis.r;
    for (int k = 0; k < 50; ++k) {
        std::uint32_t p = idx(rng), q = idx(rng), a = idx(rng), b = idx(rng);
        Complex direct = word_expectation(s.sector, s.state,
                                          LadderWord{{p, false}, {q, false}, {b, true}, {a, true}});
        REQUIRE(std::abs(q2.mat(p * r + q, a * r + b) - direct) < 1e-11);
    }
}

TEST_CASE("pure ground states are 2-positive") {
    auto s = solve("h2_sto3g_0.7414.fcidump");
    auto rep = check_2positivity(s.d1, s.d2);
    REQUIRE(rep.all_nonnegative(1e-9));
    REQUIRE(rep.worst() > -1e-9);
}

TEST_CASE("one-particle marginal recovered from the contraction") {
    auto s = solve("h4_ring_sto3g_0.7414.fcidump");
    auto d1 = contract_d2_to_d1(s.d2, s.fd.basis.n);
    REQUIRE((d1.mat - s.d1.mat).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("ensemble averages approach the analytic fixed points") {
    const std::size_t m = 4, n = 2;
    std::mt19937_64 rng(20260816);

    auto restricted = SectorBasis::particle_number_sector(m, n);
    MatrixXc d1_sum = MatrixXc::Zero(m, m);
    const int trials = 400;
    for (int t = 0; t < trials; ++t) {
        VectorXc psi = sample_haar_state(restricted.dim(), rng);
        auto [d1, d2] = measure_rdms(restricted, psi);
        d1_sum += d1.mat;
    }
    MatrixXc d1_avg = d1_sum / double(trials);
    auto analytic = haar_average_one_rdm(m, n);
    REQUIRE((d1_avg - analytic.mat).cwiseAbs().maxCoeff() < 0.05);

    // Analytic traces: pair-count normalization for the half-scaled form.
    auto d2_prediction = haar_average_two_rdm_half(m, n);
    REQUIRE(d2_prediction.trace().real() == Catch::Approx(1.0));  // C(2,2 choose 2) = 1 pair
    auto d2_free = haar_average_two_rdm_half(m);
    REQUIRE(d2_free.trace().real() == Catch::Approx(double(m * (m - 1)) / 8.0));
}
