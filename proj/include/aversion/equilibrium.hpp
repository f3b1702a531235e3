// Copyright 2026 The aversion authors
// SPDX-License-Identifier: Apache-2.0

// The informative equilibrium of the game with an algorithm.
//
// In the informative family the high type always reports its own signal and
// the low type reports its own signal when it agrees with the algorithm. When
// it disagrees it follows the algorithm with probability gamma. The
// equilibrium gamma makes the low type indifferent in that cell; the
// "follow advantage" below is its payoff from following minus its payoff from
// overriding, which is strictly decreasing in gamma.

#pragma once

#include "aversion/model.hpp"

namespace aversion {

inline constexpr double kDefaultSolverTolerance = 1e-12;

struct EquilibriumSolution {
  double gamma_star = 0.0;
  double residual = 0.0;  ///< |follow_advantage(gamma_star)|
  BeliefTable beliefs;
  double accuracy = 0.0;         ///< Pr(correct forecast)
  double accuracy_margin = 0.0;  ///< accuracy - alpha
  double adoption_value = 0.0;   ///< accuracy gain over the no-algorithm game
  int iterations = 0;
};

/// Truth-telling margins in the no-algorithm game, one per type.
struct BenchmarkMargins {
  double low = 0.0;
  double high = 0.0;
};

/// Low type's gain from deviating when the manager expects first-best use of
/// the algorithm. Positive gains mean first-best is not an equilibrium.
struct FirstBestViolation {
  double agree = 0.0;     ///< s == a, deviating to overrule both signals
  double disagree = 0.0;  ///< s != a, deviating to override the algorithm
  /// 1 - theta_FB(m1, a1, omega1): the per-unit shortfall of the prescribed
  /// message's belief against the certain belief earned by deviating.
  double correct_cell_gap = 0.0;
};

struct FeasibilityReport {
  double benchmark_ic_low = 0.0;
  double benchmark_ic_high = 0.0;
  double firstbest_violation_agree = 0.0;
  double firstbest_violation_disagree = 0.0;
};

struct LaborQuantities {
  double accuracy_margin = 0.0;
  /// d(accuracy - alpha)/d alpha = direct + attenuation.
  double margin_slope = 0.0;
  double margin_slope_direct = 0.0;       ///< (gamma - 2) / 2
  double margin_slope_attenuation = 0.0;  ///< (alpha - upsilon_L) dgamma/dalpha / 2
  double dgamma_dalpha = 0.0;
  double adoption_value = 0.0;
  double high_mismatch_prob = 0.0;
};

/// Closed-form manager beliefs for the informative family.
BeliefTable informative_beliefs(double follow_prob, const ModelParams& params);

/// Low type's payoff from following minus overriding the algorithm in the
/// (s1, a0) cell, with beliefs from the informative family at follow_prob.
/// Throws InvalidParameter unless params satisfy the solver ordering.
double follow_advantage(double follow_prob, const ModelParams& params);

/// d follow_advantage / d gamma, closed form.
double follow_advantage_slope(double follow_prob, const ModelParams& params);

/// Partial of follow_advantage with respect to alpha at fixed gamma.
double follow_advantage_alpha_partial(double follow_prob,
                                      const ModelParams& params);

/// Closed form of follow_advantage at gamma = 0.
double follow_advantage_at_zero(const ModelParams& params);

/// Bisection on [0, 1] down to a bracket of width tol. Throws
/// InternalContradiction if the endpoints do not bracket a root.
EquilibriumSolution solve_equilibrium(const ModelParams& params,
                                      double tol = kDefaultSolverTolerance);

/// Truth-telling incentive margins without the algorithm. Requires only
/// upsilon_H >= upsilon_L > 1/2 to be meaningful.
BenchmarkMargins check_benchmark(const ModelParams& params);

/// Deviation gains under first-best beliefs, computed by Bayes' rule on the
/// first-best profile and direct payoff evaluation.
FirstBestViolation check_first_best(const ModelParams& params);

FeasibilityReport check_feasibility(const ModelParams& params);

/// Implicit-function derivative of the equilibrium gamma in alpha.
double dgamma_dalpha(const ModelParams& params,
                     const EquilibriumSolution& solution);
double dgamma_dalpha(const ModelParams& params);

/// Pr(omega = omega1 | m1), which by symmetry is the forecast accuracy.
double forecast_accuracy(const ModelParams& params, double follow_prob);

/// (upsilon_H - upsilon_L) / (1 - upsilon_L): the informative family has
/// informative beliefs exactly when gamma is below this.
double informativeness_threshold(const ModelParams& params);

/// Pr(s1, a0 | high): how often the high type disagrees with the algorithm.
double high_mismatch_prob(const ModelParams& params);

LaborQuantities labor_quantities(const ModelParams& params,
                                 const EquilibriumSolution& solution);

}  // namespace aversion
