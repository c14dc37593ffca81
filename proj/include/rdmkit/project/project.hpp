// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "rdmkit/core/basis.hpp"
#include "rdmkit/core/rdm.hpp"
#include "rdmkit/project/iterative.hpp"
#include "rdmkit/project/psd.hpp"
#include "rdmkit/project/sdp_build.hpp"
#include "rdmkit/sdp/solver.hpp"

namespace rdmkit {

enum class ProjectionMethod { positive, positive_fixed_trace, iterative_2pos, sdp };

[[nodiscard]] inline std::string to_string(ProjectionMethod m) {
    switch (m) {
        case ProjectionMethod::positive: return "positive";
        case ProjectionMethod::positive_fixed_trace: return "positive-fixed-trace";
        case ProjectionMethod::iterative_2pos: return "iterative-2pos";
        case ProjectionMethod::sdp: return "sdp";
    }
    throw std::logic_error("to_string: bad projection method");
}

struct ProjectionConfig {
    ProjectionMethod method = ProjectionMethod::sdp;
    double eig_tol = 1e-7;
    std::size_t max_sweeps = 500;
    bool fix_particle_number = false;
    bool fix_sz = false;
    bool fix_s2 = false;
    double particle_number = 0.0;  // <= 0 means: use basis.n
    double sz = 0.0;
    double s2 = 0.0;
    bool spin_adapted = true;
    SolverConfig solver;
};

struct ProjectionDiagnostics {
    ProjectionMethod method = ProjectionMethod::positive;
    std::size_t iterations = 0;
    bool converged = true;
    double eig_floor = 0.0;        // iterative sweeps only
    double trace_residual = 0.0;
    double objective = 0.0;        // sdp: final Tr[F]
    double primal_residual = 0.0;  // sdp: final constraint residual
    double moved = 0.0;            // trace distance from the input
};

/// Nearest-reconstruction projection through the semidefinite program.
[[nodiscard]] inline std::pair<TwoRDM, ProjectionDiagnostics> project_sdp(
    const TwoRDM& d2_measured, const SpinOrbitalBasis& basis,
    const ProjectionConfig& cfg = {}) {
    ReconstructionOptions opts;
    opts.spin_adapted = cfg.spin_adapted;
    opts.fix_particle_number = cfg.fix_particle_number;
    opts.fix_sz = cfg.fix_sz;
    opts.fix_s2 = cfg.fix_s2;
    opts.particle_number = cfg.particle_number;
    opts.sz = cfg.sz;
    opts.s2 = cfg.s2;
    const ReconstructionProgram prog = build_sdp_reconstruction(d2_measured, basis, opts);
    BoundaryPointSolver solver(prog.problem, cfg.solver);
    const SDPSolution sol = solver.solve();
    TwoRDM out = reconstruct_d2(prog, sol);
    ProjectionDiagnostics diag;
    diag.method = ProjectionMethod::sdp;
    diag.iterations = sol.iterations;
    diag.converged = sol.converged;
    diag.objective = sol.objective;
    diag.primal_residual = sol.primal_residual;
    const double n = static_cast<double>(basis.n);
    diag.trace_residual = std::abs(out.mat.real().trace() - n * (n - 1.0));
    diag.moved = trace_distance(out.mat, d2_measured.mat);
    return {std::move(out), diag};
}

/// Dispatch over the configured projection method.  All methods take and
/// return a two-particle marginal over the same index convention.
[[nodiscard]] inline std::pair<TwoRDM, ProjectionDiagnostics> project(
    const TwoRDM& d2_measured, const SpinOrbitalBasis& basis,
    const ProjectionConfig& cfg = {}) {
    if (d2_measured.r != basis.r) throw std::invalid_argument("project: dimension mismatch");
    const double n = static_cast<double>(basis.n);
    switch (cfg.method) {
        case ProjectionMethod::positive: {
            TwoRDM out(basis.r);
            out.mat = psd_project(d2_measured.mat);
            ProjectionDiagnostics diag;
            diag.method = cfg.method;
            diag.trace_residual = std::abs(out.mat.real().trace() - n * (n - 1.0));
            diag.moved = trace_distance(out.mat, d2_measured.mat);
            return {std::move(out), diag};
        }
        case ProjectionMethod::positive_fixed_trace: {
            TwoRDM out(basis.r);
            out.mat = psd_project_fixed_trace(d2_measured.mat, n * (n - 1.0));
            ProjectionDiagnostics diag;
            diag.method = cfg.method;
            diag.trace_residual = std::abs(out.mat.real().trace() - n * (n - 1.0));
            diag.moved = trace_distance(out.mat, d2_measured.mat);
            return {std::move(out), diag};
        }
        case ProjectionMethod::iterative_2pos: {
            IterativeConfig icfg;
            icfg.eig_tol = cfg.eig_tol;
            icfg.max_sweeps = cfg.max_sweeps;
            auto [out, idiag] = project_iterative_2pos(d2_measured, basis, icfg);
            ProjectionDiagnostics diag;
            diag.method = cfg.method;
            diag.iterations = idiag.sweeps;
            diag.converged = idiag.converged;
            diag.eig_floor = idiag.eig_floor;
            diag.trace_residual = idiag.trace_residual;
            diag.moved = trace_distance(out.mat, d2_measured.mat);
            return {std::move(out), diag};
        }
        case ProjectionMethod::sdp: return project_sdp(d2_measured, basis, cfg);
    }
    throw std::logic_error("project: bad projection method");
}

}  // namespace rdmkit
