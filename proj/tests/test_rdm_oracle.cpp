// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <json.hpp>
#include <string>

#include "rdmkit/core/maps.hpp"
#include "rdmkit/core/observables.hpp"
#include "rdmkit/oracle/fcidump.hpp"
#include "rdmkit/oracle/ground_state.hpp"
#include "rdmkit/oracle/hamiltonian.hpp"
#include "rdmkit/oracle/measure.hpp"

using namespace rdmkit;

namespace {

std::string data_path(const std::string& name) {
    return std::string(RDMKIT_DATA_DIR) + "/" + name;
}

nlohmann::json load_reference_energies() {
    std::ifstream in(data_path("reference_energies.json"));
    REQUIRE(in.good());
    nlohmann::json j;
    in >> j;
    return j;
}

struct Solved {
    FcidumpData fd;
    SectorBasis sector;
    GroundState gs;
    OneRDM d1;
    TwoRDM d2;
};

Solved solve(const std::string& name) {
    Solved s;
    s.fd = load_fcidump(data_path(name));
    s.sector = SectorBasis::ms2_sector(s.fd.basis, s.fd.ms2);
    auto h = build_hamiltonian(build_hamiltonian_operator(s.fd.ints), s.sector);
    s.gs = ground_state(h);
    auto [d1, d2] = measure_rdms(s.sector, s.gs.vector);
    s.d1 = std::move(d1);
    s.d2 = std::move(d2);
    return s;
}

}  // namespace

TEST_CASE("exact diagonalization reproduces the frozen reference energies") {
    const auto refs = load_reference_energies();
    for (const auto& [name, energy] : refs.items()) {
        if (!energy.is_number()) continue;  // skip the provenance comment
        INFO(name);
        auto fd = load_fcidump(data_path(name));
        auto sector = SectorBasis::ms2_sector(fd.basis, fd.ms2);
        auto h = build_hamiltonian(build_hamiltonian_operator(fd.ints), sector);
        auto gs = ground_state(h);
        REQUIRE(gs.energy == Catch::Approx(energy.get<double>()).margin(1e-7));
    }
}

TEST_CASE("measured marginals satisfy the defining invariants") {
    for (const std::string name :
         {"h2_sto3g_0.7414.fcidump", "h2_sto3g_1.4000.fcidump", "h4_chain_sto3g_0.7500.fcidump"}) {
        INFO(name);
        auto s = solve(name);
        const std::size_t r = s.fd.basis.r;
        const auto n = static_cast<double>(s.fd.basis.n);

        REQUIRE(std::abs(s.d1.trace() - Complex{n, 0.0}) < 1e-10);
        REQUIRE(std::abs(s.d2.trace() - Complex{n * (n - 1.0), 0.0}) < 1e-10);

        REQUIRE((s.d1.mat - s.d1.mat.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        REQUIRE((s.d2.mat - s.d2.mat.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        REQUIRE(max_imag(s.d1.mat) < 1e-12);  // real molecular wavefunction

        // Antisymmetry under swapping either index pair.
        for (std::size_t p = 0; p < r; ++p)
            for (std::size_t q = 0; q < r; ++q)
                for (std::size_t a = 0; a < r; ++a)
                    for (std::size_t b = 0; b < r; ++b) {
                        REQUIRE(std::abs(s.d2(p, q, a, b) + s.d2(q, p, a, b)) < 1e-12);
                        REQUIRE(std::abs(s.d2(p, q, a, b) + s.d2(p, q, b, a)) < 1e-12);
                    }

        // Contraction onto the one-particle marginal.
        MatrixXc contracted = contract_d2_raw(s.d2);
        REQUIRE((contracted - (n - 1.0) * s.d1.mat).cwiseAbs().maxCoeff() < 1e-10);

        // Diagonal of D2 is a pair probability (nonnegative).
        for (std::size_t p = 0; p < r; ++p)
            for (std::size_t q = 0; q < r; ++q)
                REQUIRE(s.d2(p, q, p, q).real() > -1e-12);
    }
}

TEST_CASE("energy functionals of the marginals match the eigenvalue") {
    for (const std::string name : {"h2_sto3g_0.7414.fcidump", "h4_ring_sto3g_0.7414.fcidump"}) {
        INFO(name);
        auto s = solve(name);
        REQUIRE(compute_energy(s.fd.ints, s.d1, s.d2) == Catch::Approx(s.gs.energy).margin(1e-9));
        auto h_op = build_hamiltonian_operator(s.fd.ints);
        REQUIRE(expectation_value(h_op, s.d1, s.d2).real() ==
                Catch::Approx(s.gs.energy).margin(1e-9));
    }
}

TEST_CASE("spin observables of singlet ground states vanish") {
    auto s = solve("h2_sto3g_0.7414.fcidump");
    REQUIRE(compute_number(s.d1) == Catch::Approx(2.0).margin(1e-10));
    REQUIRE(compute_sz(s.fd.basis, s.d1) == Catch::Approx(0.0).margin(1e-10));
    REQUIRE(compute_s2(s.fd.basis, s.d1, s.d2) == Catch::Approx(0.0).margin(1e-9));
}

TEST_CASE("density-matrix measurement agrees with the state-vector path") {
    auto s = solve("h2_sto3g_0.7414.fcidump");
    VectorXc fock = embed_in_fock(s.sector, s.gs.vector);
    auto dm = DensityMatrix::pure(s.fd.basis.r, fock);
    auto [d1m, d2m] = measure_rdms(dm);
    REQUIRE((d1m.mat - s.d1.mat).cwiseAbs().maxCoeff() < 1e-12);
    REQUIRE((d2m.mat - s.d2.mat).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("measurement rejects unnormalized input") {
    auto fd = load_fcidump(data_path("h2_sto3g_0.7414.fcidump"));
    auto sector = SectorBasis::ms2_sector(fd.basis, fd.ms2);
    VectorXr v = VectorXr::Ones(static_cast<Eigen::Index>(sector.dim()));
    REQUIRE_THROWS_AS(measure_rdms(sector, v), std::invalid_argument);
}

TEST_CASE("fcidump loader validates structure") {
    REQUIRE_THROWS(load_fcidump(data_path("does_not_exist.fcidump")));
}
