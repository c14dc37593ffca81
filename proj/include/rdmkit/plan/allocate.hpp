// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdmkit/core/fermion_op.hpp"
#include "rdmkit/core/qubit_op.hpp"

namespace rdmkit {

/// One-norm of a coefficient list; the operator overloads exclude the
/// identity/constant term, which needs no measurements.
[[nodiscard]] inline double lambda_norm(const std::vector<double>& weights) {
    double s = 0.0;
    for (const double w : weights) s += std::abs(w);
    return s;
}

[[nodiscard]] inline double lambda_norm(const FermionOperatorSum& h) {
    double s = 0.0;
    const FermionOperatorSum no = h.normal_ordered();
    for (const auto& [w, c] : no.terms())
        if (!w.empty()) s += std::abs(c);
    return s;
}

/// Shot budget for estimating a weighted sum of observables term by term.
/// shots[l] is a positive real count (round up when emitting to hardware);
/// the fractional optimum is what the variance bound is stated for.
struct MeasurementPlan {
    std::vector<std::string> labels;
    std::vector<double> weights;
    std::vector<double> sigma;
    std::vector<double> shots;
    double epsilon = 0.0;
    double lambda = 0.0;

    [[nodiscard]] double total() const {
        double s = 0.0;
        for (const double m : shots) s += m;
        return s;
    }

    /// sqrt of the worst-case estimator variance sum_l w_l^2 sigma_l^2 / M_l.
    /// Equals epsilon exactly whenever every sigma is positive.
    [[nodiscard]] double predicted_error() const {
        double s = 0.0;
        for (std::size_t l = 0; l < shots.size(); ++l)
            if (shots[l] > 0.0)
                s += weights[l] * weights[l] * sigma[l] * sigma[l] / shots[l];
        return std::sqrt(s);
    }
};

/// Lagrange-optimal allocation M_l proportional to |w_l| sigma_l, scaled so
/// the variance bound hits epsilon^2: M_l = (sum_k |w_k| sigma_k) |w_l|
/// sigma_l / epsilon^2, total (sum |w| sigma / epsilon)^2.  Terms with zero
/// spread get zero shots.
[[nodiscard]] inline MeasurementPlan allocate_shots(const std::vector<double>& weights,
                                                    double epsilon,
                                                    const std::vector<double>& sigma = {}) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("allocate_shots: epsilon must be positive");
    MeasurementPlan plan;
    plan.weights = weights;
    plan.sigma = sigma.empty() ? std::vector<double>(weights.size(), 1.0) : sigma;
    if (plan.sigma.size() != weights.size())
        throw std::invalid_argument("allocate_shots: sigma length mismatch");
    for (const double s : plan.sigma)
        if (s < 0.0 || s > 1.0)
            throw std::invalid_argument("allocate_shots: sigma outside [0, 1]");
    plan.epsilon = epsilon;
    plan.lambda = lambda_norm(weights);

    double mix = 0.0;  // sum |w_l| sigma_l
    for (std::size_t l = 0; l < weights.size(); ++l) mix += std::abs(weights[l]) * plan.sigma[l];
    const double sqrt_mult = mix / (epsilon * epsilon);
    plan.shots.resize(weights.size());
    for (std::size_t l = 0; l < weights.size(); ++l)
        plan.shots[l] = sqrt_mult * std::abs(weights[l]) * plan.sigma[l];
    plan.labels.resize(weights.size());
    for (std::size_t l = 0; l < weights.size(); ++l) plan.labels[l] = "term" + std::to_string(l);
    return plan;
}

/// Pauli-level plan: one line per non-identity string, in the operator's
/// (deterministic) term order.
[[nodiscard]] inline MeasurementPlan allocate_shots(const QubitOperatorSum& op, double epsilon,
                                                    const std::vector<double>& sigma = {}) {
    std::vector<double> weights;
    std::vector<std::string> labels;
    for (const auto& [p, c] : op.terms()) {
        if (p.is_identity()) continue;
        weights.push_back(std::abs(c));
        labels.push_back(p.str());
    }
    MeasurementPlan plan = allocate_shots(weights, epsilon, sigma);
    plan.labels = std::move(labels);
    return plan;
}

/// Per-term spreads sqrt(1 - <P>^2) measured on a reference state, aligned
/// with the non-identity term order used by allocate_shots.  A reference
/// close to an eigenstate of P drives that term's budget toward zero.
template <typename Vec>
[[nodiscard]] std::vector<double> sigma_from_reference(const QubitOperatorSum& op,
                                                       const Vec& state,
                                                       std::size_t n_qubits) {
    std::vector<double> sigma;
    for (const auto& [p, c] : op.terms()) {
        if (p.is_identity()) continue;
        const double ev = pauli_expectation(p, state, n_qubits).real();
        sigma.push_back(std::sqrt(std::max(0.0, 1.0 - ev * ev)));
    }
    return sigma;
}

}  // namespace rdmkit
