// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "rdmkit/core/maps.hpp"
#include "rdmkit/core/observables.hpp"
#include "rdmkit/io/csv.hpp"
#include "rdmkit/noise/channels.hpp"
#include "rdmkit/noise/gaussian.hpp"
#include "rdmkit/oracle/fcidump.hpp"
#include "rdmkit/oracle/ground_state.hpp"
#include "rdmkit/oracle/haar.hpp"
#include "rdmkit/oracle/hamiltonian.hpp"
#include "rdmkit/oracle/measure.hpp"
#include "rdmkit/project/project.hpp"

namespace rdmkit {

/// Population moments against a known truth, so that the decomposition
/// mse = bias^2 + variance is an exact identity of the numbers reported.
/// se is the standard error of the mean (sample std, for bias tests).
struct SampleStats {
    double truth = 0.0;
    double mean = 0.0;
    double bias2 = 0.0;
    double variance = 0.0;
    double mse = 0.0;
    double se = 0.0;
};

[[nodiscard]] inline SampleStats summarize_samples(const std::vector<double>& xs, double truth) {
    if (xs.empty()) throw std::invalid_argument("summarize_samples: no samples");
    SampleStats s;
    s.truth = truth;
    const auto n = static_cast<double>(xs.size());
    for (const double x : xs) s.mean += x;
    s.mean /= n;
    double var = 0.0;
    for (const double x : xs) var += (x - s.mean) * (x - s.mean);
    s.variance = var / n;
    const double bias = s.mean - truth;
    s.bias2 = bias * bias;
    s.mse = s.bias2 + s.variance;
    s.se = xs.size() > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0;
    return s;
}

/// Runs fn(i) for i in [0, count) on `threads` workers.  Each index owns
/// its output slot, so the merge is by index and deterministic regardless
/// of scheduling.
template <typename Fn>
void for_each_sample(std::size_t count, std::size_t threads, Fn&& fn) {
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t used = std::min(threads, count);
    for (std::size_t w = 0; w < used; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += used) fn(i);
        });
    for (auto& t : pool) t.join();
}

struct ObservableValues {
    double energy = 0.0;
    double number = 0.0;
    double sz = 0.0;
    double s2 = 0.0;
};

/// Energy / particle number / spin observables of a 2-RDM, with the 1-RDM
/// read off its own contraction.
[[nodiscard]] inline ObservableValues compute_observables(const FermionOperatorSum& hop,
                                                          double e_core,
                                                          const SpinOrbitalBasis& basis,
                                                          const TwoRDM& d2) {
    OneRDM d1(hermitian_part(contract_pair_raw(d2.mat, basis.r)) /
              (static_cast<double>(basis.n) - 1.0));
    ObservableValues v;
    v.energy = expectation_value(hop, d1, d2).real() + e_core;
    v.number = compute_number(d1);
    v.sz = compute_sz(basis, d1);
    v.s2 = compute_s2(basis, d1, d2);
    return v;
}

// ---------------------------------------------------------------------------
// Gaussian-noise MSE experiment

struct MseExperimentConfig {
    std::vector<double> epsilons{1e-4, 1e-3, 1e-2};
    std::size_t samples = 100;
    std::uint64_t seed = 1;
    bool sdp_constraints = true;  // fix n, Sz, S^2 in the sdp method
    std::size_t threads = 1;
};

struct MseObservableRow {
    std::string method;
    double epsilon = 0.0;
    std::string observable;
    SampleStats stats;
};

struct MseDistanceRow {
    std::string method;
    double epsilon = 0.0;
    double mean_trace_distance = 0.0;
    double beats_raw_fraction = 0.0;   // share of seeds with td < raw td
    std::size_t unconverged = 0;       // recorded, not fatal
};

struct MseExperimentReport {
    std::string system;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    bool sdp_constraints = true;
    ObservableValues truth;
    std::vector<MseObservableRow> rows;
    std::vector<MseDistanceRow> distances;

    [[nodiscard]] const SampleStats& stats_for(const std::string& method, double epsilon,
                                               const std::string& observable) const {
        for (const auto& row : rows)
            if (row.method == method && row.epsilon == epsilon && row.observable == observable)
                return row.stats;
        throw std::out_of_range("MseExperimentReport: no such row");
    }

    [[nodiscard]] const MseDistanceRow& distance_for(const std::string& method,
                                                     double epsilon) const {
        for (const auto& row : distances)
            if (row.method == method && row.epsilon == epsilon) return row;
        throw std::out_of_range("MseExperimentReport: no such distance row");
    }
};

namespace detail {

/// One derived stream per (epsilon, sample) pair; keeps samples independent
/// and the experiment reproducible under any thread count.
[[nodiscard]] inline std::uint64_t derive_seed(std::uint64_t base, std::size_t eps_idx,
                                               std::size_t sample) {
    std::uint64_t x = base;
    x = x * 1000003ULL + static_cast<std::uint64_t>(eps_idx) + 1;
    x = x * 1000003ULL + static_cast<std::uint64_t>(sample) + 1;
    return x;
}

}  // namespace detail

/// Corrupts the oracle 2-RDM `samples` times per noise level, pushes every
/// corrupted copy through each projection method, and reports per-observable
/// population statistics plus trace distances to the oracle.
[[nodiscard]] inline MseExperimentReport run_mse_experiment(const FcidumpData& fd,
                                                            const std::string& system_label,
                                                            const MseExperimentConfig& cfg = {}) {
    SectorBasis sector = SectorBasis::ms2_sector(fd.basis, fd.ms2);
    auto hop = build_hamiltonian_operator(fd.ints);
    auto gs = ground_state(build_hamiltonian(hop, sector));
    auto [d1_star, d2_star] = measure_rdms(sector, gs.vector);

    MseExperimentReport report;
    report.system = system_label;
    report.samples = cfg.samples;
    report.seed = cfg.seed;
    report.sdp_constraints = cfg.sdp_constraints;
    report.truth = compute_observables(hop, fd.ints.e_core, fd.basis, d2_star);
    const double s2_target = compute_s2(fd.basis, d1_star, d2_star);

    const std::vector<ProjectionMethod> methods{
        ProjectionMethod::positive, ProjectionMethod::positive_fixed_trace,
        ProjectionMethod::iterative_2pos, ProjectionMethod::sdp};
    const std::size_t n_methods = methods.size() + 1;  // leading slot: measured

    for (std::size_t e = 0; e < cfg.epsilons.size(); ++e) {
        const double eps = cfg.epsilons[e];
        std::vector<std::vector<ObservableValues>> obs(n_methods);
        std::vector<std::vector<double>> tds(n_methods);
        std::vector<std::vector<bool>> bad(n_methods);
        for (auto& v : obs) v.resize(cfg.samples);
        for (auto& v : tds) v.resize(cfg.samples);
        for (auto& v : bad) v.assign(cfg.samples, false);

        for_each_sample(cfg.samples, cfg.threads, [&](std::size_t i) {
            GaussianNoiseModel nm{eps, detail::derive_seed(cfg.seed, e, i)};
            TwoRDM noisy = corrupt_gaussian(d2_star, nm);
            obs[0][i] = compute_observables(hop, fd.ints.e_core, fd.basis, noisy);
            tds[0][i] = trace_distance(noisy.mat, d2_star.mat);
            for (std::size_t m = 0; m < methods.size(); ++m) {
                ProjectionConfig pc;
                pc.method = methods[m];
                if (methods[m] == ProjectionMethod::sdp && cfg.sdp_constraints) {
                    pc.fix_particle_number = true;
                    pc.fix_sz = true;
                    pc.fix_s2 = true;
                    pc.sz = fd.ms2 / 2.0;
                    pc.s2 = s2_target;
                    // corrupted spin-constrained programs need the deep
                    // sigma descent (see the solver's stepping policy); the
                    // relaxed outer tolerance keeps per-sample cost bounded
                    // while leaving observable errors orders below the
                    // statistics being measured
                    pc.solver.dominance = 1e18;
                    pc.solver.max_outer = 20000;
                    pc.solver.eps_outer = 1e-7;
                }
                auto [proj, diag] = project(noisy, fd.basis, pc);
                obs[m + 1][i] = compute_observables(hop, fd.ints.e_core, fd.basis, proj);
                tds[m + 1][i] = trace_distance(proj.mat, d2_star.mat);
                bad[m + 1][i] = !diag.converged;
            }
        });

        for (std::size_t m = 0; m < n_methods; ++m) {
            const std::string label = m == 0 ? "measured" : to_string(methods[m - 1]);
            std::vector<double> xs(cfg.samples);
            const auto pull = [&](auto sel, const char* name) {
                for (std::size_t i = 0; i < cfg.samples; ++i) xs[i] = sel(obs[m][i]);
                double truth = 0.0;
                if (std::string(name) == "energy") truth = report.truth.energy;
                if (std::string(name) == "number") truth = report.truth.number;
                if (std::string(name) == "sz") truth = report.truth.sz;
                if (std::string(name) == "s2") truth = report.truth.s2;
                report.rows.push_back({label, eps, name, summarize_samples(xs, truth)});
            };
            pull([](const ObservableValues& v) { return v.energy; }, "energy");
            pull([](const ObservableValues& v) { return v.number; }, "number");
            pull([](const ObservableValues& v) { return v.sz; }, "sz");
            pull([](const ObservableValues& v) { return v.s2; }, "s2");

            MseDistanceRow dr;
            dr.method = label;
            dr.epsilon = eps;
            std::size_t beats = 0;
            for (std::size_t i = 0; i < cfg.samples; ++i) {
                dr.mean_trace_distance += tds[m][i];
                if (tds[m][i] < tds[0][i]) ++beats;
                if (bad[m][i]) ++dr.unconverged;
            }
            dr.mean_trace_distance /= static_cast<double>(cfg.samples);
            dr.beats_raw_fraction = static_cast<double>(beats) / static_cast<double>(cfg.samples);
            report.distances.push_back(dr);
        }
    }
    return report;
}

[[nodiscard]] inline CsvTable to_csv(const MseExperimentReport& report,
                                     const std::string& manifest_name = {}) {
    CsvTable t;
    if (!manifest_name.empty()) t.comments.push_back("manifest: " + manifest_name);
    t.header = {"system", "method",   "epsilon", "observable",    "mse",
                "bias2",  "variance", "mean",    "trace_distance"};
    for (const auto& row : report.rows) {
        const auto& d = report.distance_for(row.method, row.epsilon);
        t.add_row({report.system, row.method, csv_cell(row.epsilon), row.observable,
                   csv_cell(row.stats.mse), csv_cell(row.stats.bias2),
                   csv_cell(row.stats.variance), csv_cell(row.stats.mean),
                   csv_cell(d.mean_trace_distance)});
    }
    return t;
}

// ---------------------------------------------------------------------------
// Channel binding curves

struct ChannelCurvePoint {
    std::string geometry;  // bond distance label, Angstrom
    double bond = 0.0;
    double energy_exact = 0.0;
    double energy_channel = 0.0;
    double energy_projected = 0.0;
    double number_residual = 0.0;  // projected observables vs targets
    double sz_residual = 0.0;
    double s2_residual = 0.0;
    std::size_t solver_iterations = 0;
    bool solver_converged = true;
};

struct ChannelCurveReport {
    ChannelKind channel = ChannelKind::dephasing;
    double elapsed_fraction = 0.0;
    std::vector<ChannelCurvePoint> points;
    double max_jump_channel = 0.0;
    double max_jump_projected = 0.0;
};

/// One bond-curve sweep for a channel.  The corrupted state at each
/// geometry is the variational channel state: the pure state minimizing
/// the energy of its own channel image, i.e. the ground vector of the
/// Heisenberg-transformed Hamiltonian over the whole Fock space.  Past the
/// radius where that optimum switches from the singlet to a
/// noise-resistant triplet the channel curve keeps dropping while the
/// spin-constrained reconstruction pays the symmetry-restoration cost.
[[nodiscard]] inline ChannelCurveReport run_channel_curve(
    const std::vector<std::pair<std::string, FcidumpData>>& grid, const ChannelModel& channel,
    const ProjectionConfig& projection) {
    if (grid.empty()) throw std::invalid_argument("run_channel_curve: empty grid");
    ChannelCurveReport report;
    report.channel = channel.kind;
    report.elapsed_fraction = channel.elapsed_fraction;

    for (const auto& [label, fd] : grid) {
        SectorBasis sector = SectorBasis::ms2_sector(fd.basis, fd.ms2);
        auto hop = build_hamiltonian_operator(fd.ints);
        auto gs = ground_state(build_hamiltonian(hop, sector));

        SectorBasis full = SectorBasis::full_space(fd.basis.r);
        MatrixXc hdense = MatrixXc(build_hamiltonian(hop, full));
        Eigen::SelfAdjointEigenSolver<MatrixXc> es(
            apply_channel_adjoint(hdense, fd.basis.r, channel));
        VectorXc psi = es.eigenvectors().col(0);

        DensityMatrix corrupted = apply_channel(DensityMatrix::pure(fd.basis.r, psi), channel);
        auto [d1c, d2c] = measure_rdms(corrupted);

        ProjectionConfig pc = projection;
        pc.method = ProjectionMethod::sdp;
        auto [proj, diag] = project(d2c, fd.basis, pc);
        const ObservableValues po = compute_observables(hop, fd.ints.e_core, fd.basis, proj);

        ChannelCurvePoint pt;
        pt.geometry = label;
        pt.bond = std::stod(label);
        pt.energy_exact = gs.energy + fd.ints.e_core;
        pt.energy_channel = es.eigenvalues()(0) + fd.ints.e_core;
        pt.energy_projected = po.energy;
        pt.number_residual = po.number - (pc.particle_number > 0.0
                                              ? pc.particle_number
                                              : static_cast<double>(fd.basis.n));
        pt.sz_residual = po.sz - pc.sz;
        pt.s2_residual = po.s2 - pc.s2;
        pt.solver_iterations = diag.iterations;
        pt.solver_converged = diag.converged;
        report.points.push_back(std::move(pt));
    }

    for (std::size_t i = 1; i < report.points.size(); ++i) {
        report.max_jump_channel =
            std::max(report.max_jump_channel, std::abs(report.points[i].energy_channel -
                                                       report.points[i - 1].energy_channel));
        report.max_jump_projected =
            std::max(report.max_jump_projected, std::abs(report.points[i].energy_projected -
                                                         report.points[i - 1].energy_projected));
    }
    return report;
}

[[nodiscard]] inline CsvTable to_csv(const ChannelCurveReport& report,
                                     const std::string& system,
                                     const std::string& manifest_name = {}) {
    CsvTable t;
    if (!manifest_name.empty()) t.comments.push_back("manifest: " + manifest_name);
    t.header = {"system",           "channel",         "geometry",        "energy_exact",
                "energy_channel",   "energy_projected", "number_residual", "sz_residual",
                "s2_residual",      "solver_converged"};
    for (const auto& p : report.points)
        t.add_row({system, to_string(report.channel), p.geometry, csv_cell(p.energy_exact),
                   csv_cell(p.energy_channel), csv_cell(p.energy_projected),
                   csv_cell(p.number_residual), csv_cell(p.sz_residual),
                   csv_cell(p.s2_residual), p.solver_converged ? "1" : "0"});
    return t;
}

// ---------------------------------------------------------------------------
// Haar concentration study

struct ConcentrationRow {
    std::size_t modes = 0;
    bool restricted = false;
    std::size_t particles = 0;  // meaningful when restricted
    double mean_diag = 0.0;     // grand mean of the 1-RDM diagonal
    double analytic_diag = 0.0;
    double se_diag = 0.0;     // standard error of the grand mean
    double spread_diag = 0.0; // rms per-element std over samples
    double mean_diag_d2 = 0.0;
    double analytic_diag_d2 = 0.0;
};

struct ConcentrationConfig {
    std::vector<std::size_t> modes{4, 6};
    std::size_t samples = 1000;
    std::uint64_t seed = 11;
};

/// Haar-random pure states over the full Fock space (and the half-filled
/// fixed-number sector when restricted): the 1-RDM diagonal concentrates
/// at 1/2 (respectively n/M), tighter as the dimension grows.
[[nodiscard]] inline std::vector<ConcentrationRow> run_concentration_study(
    const ConcentrationConfig& cfg = {}) {
    std::vector<ConcentrationRow> rows;
    for (const std::size_t m : cfg.modes) {
        for (const bool restricted : {false, true}) {
            const std::size_t n = m / 2;
            SectorBasis sector = restricted ? SectorBasis::particle_number_sector(m, n)
                                            : SectorBasis::full_space(m);
            std::mt19937_64 rng(cfg.seed + m * 1000 + (restricted ? 1 : 0));
            MatrixXr diag_samples(cfg.samples, m);
            std::vector<double> d2_diag_means(cfg.samples, 0.0);
            for (std::size_t s = 0; s < cfg.samples; ++s) {
                VectorXc psi = sample_haar_state(sector.dim(), rng);
                MatrixXc d1 = detail::one_rdm_from_sector(sector, psi);
                for (std::size_t p = 0; p < m; ++p)
                    diag_samples(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(p)) =
                        d1(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p)).real();
                MatrixXc d2 = detail::two_rdm_from_sector(sector, psi);
                double acc = 0.0;
                std::size_t cnt = 0;
                for (std::size_t p = 0; p < m; ++p)
                    for (std::size_t q = 0; q < m; ++q) {
                        if (p == q) continue;
                        acc += d2(static_cast<Eigen::Index>(p * m + q),
                                  static_cast<Eigen::Index>(p * m + q))
                                   .real();
                        ++cnt;
                    }
                d2_diag_means[s] = acc / static_cast<double>(cnt);
            }

            ConcentrationRow row;
            row.modes = m;
            row.restricted = restricted;
            row.particles = restricted ? n : 0;
            row.mean_diag = diag_samples.mean();
            if (restricted) {
                row.analytic_diag = static_cast<double>(n) / static_cast<double>(m);
                row.analytic_diag_d2 = static_cast<double>(n * (n - 1)) /
                                       static_cast<double>(m * (m - 1));
            } else {
                // E[rho] = I / 2^m: each mode is occupied in half the basis
                // states, each unordered pair in a quarter of them
                row.analytic_diag = 0.5;
                row.analytic_diag_d2 = 0.25;
            }
            const auto ns = static_cast<double>(cfg.samples);
            // grand-mean standard error from per-sample mean-diagonal spread
            VectorXr per_sample = diag_samples.rowwise().mean();
            const double gm = per_sample.mean();
            row.se_diag = std::sqrt((per_sample.array() - gm).square().sum() / (ns - 1.0) / ns);
            double spread2 = 0.0;
            for (std::size_t p = 0; p < m; ++p) {
                const auto col = diag_samples.col(static_cast<Eigen::Index>(p));
                const double mu = col.mean();
                spread2 += (col.array() - mu).square().sum() / (ns - 1.0);
            }
            row.spread_diag = std::sqrt(spread2 / static_cast<double>(m));
            double d2m = 0.0;
            for (const double v : d2_diag_means) d2m += v;
            row.mean_diag_d2 = d2m / ns;
            rows.push_back(row);
        }
    }
    return rows;
}

[[nodiscard]] inline CsvTable to_csv(const std::vector<ConcentrationRow>& rows,
                                     const std::string& manifest_name = {}) {
    CsvTable t;
    if (!manifest_name.empty()) t.comments.push_back("manifest: " + manifest_name);
    t.header = {"modes",     "restricted",  "particles",    "mean_diag", "analytic_diag",
                "se_diag",   "spread_diag", "mean_diag_d2", "analytic_diag_d2"};
    for (const auto& r : rows)
        t.add_row({std::to_string(r.modes), r.restricted ? "1" : "0",
                   std::to_string(r.particles), csv_cell(r.mean_diag),
                   csv_cell(r.analytic_diag), csv_cell(r.se_diag), csv_cell(r.spread_diag),
                   csv_cell(r.mean_diag_d2), csv_cell(r.analytic_diag_d2)});
    return t;
}

}  // namespace rdmkit
