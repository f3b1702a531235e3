// Copyright 2026 The aversion authors
// SPDX-License-Identifier: Apache-2.0

#include "aversion/equilibrium.hpp"

#include <cmath>
#include <string>

#include "aversion/error.hpp"

namespace aversion {

namespace {

void require_follow_prob(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw InvalidParameter("gamma must lie in [0, 1]");
}

// Low type's Pr(s1, a0) normalizer: alpha - (2 alpha - 1) upsilon_L.
double disagree_normalizer(const ModelParams& params) {
  const double a = params.alpha();
  const double vl = params.upsilon_low();
  return a - (2.0 * a - 1.0) * vl;
}

// Sum of belief gaps theta(m0,a0,w0) - theta(m0,a0,w1) + theta(m1,a0,w1) -
// theta(m1,a0,w0). Positive in any informative table.
double belief_gap_sum(const BeliefTable& t) {
  using enum Message;
  using enum State;
  const AlgoSignal a0 = AlgoSignal::a0;
  return t(m0, a0, omega0) - t(m0, a0, omega1) + t(m1, a0, omega1) -
         t(m1, a0, omega0);
}

}  // namespace

BeliefTable informative_beliefs(double follow_prob, const ModelParams& params) {
  require_follow_prob(follow_prob);
  const double vh = params.upsilon_high();
  const double vl = params.upsilon_low();
  const double g = follow_prob;

  BeliefTable t;
  using enum Message;
  using enum State;
  const AlgoSignal a0 = AlgoSignal::a0;
  t.set(m1, a0, omega1, vh / (vh + (1.0 - g) * vl));
  t.set(m1, a0, omega0,
        (1.0 - vh) / ((1.0 - vh) + (1.0 - g) * (1.0 - vl)));
  t.set(m0, a0, omega1, (1.0 - vh) / ((1.0 - vh) + (1.0 - vl) + g * vl));
  t.set(m0, a0, omega0, vh / (vh + vl + g * (1.0 - vl)));
  // The a1 half is the label-flipped image of the a0 half.
  for (Message m : kMessages)
    for (State w : kStates)
      t.set(m, AlgoSignal::a1, w, t(flip(m), a0, flip(w)));
  // Both messages are always sent by the high type.
  for (Message m : kMessages)
    for (AlgoSignal a : kAlgoSignals) t.set_on_path(m, a, true);
  return t;
}

double follow_advantage(double follow_prob, const ModelParams& params) {
  params.require_ordering();
  const BeliefTable t = informative_beliefs(follow_prob, params);
  const double p1 = worker_posterior(PrivateSignal::s1, AlgoSignal::a0,
                                     WorkerType::low, params);
  using enum Message;
  using enum State;
  const AlgoSignal a0 = AlgoSignal::a0;
  return p1 * (t(m0, a0, omega1) - t(m1, a0, omega1)) +
         (1.0 - p1) * (t(m0, a0, omega0) - t(m1, a0, omega0));
}

double follow_advantage_slope(double follow_prob, const ModelParams& params) {
  params.require_ordering();
  require_follow_prob(follow_prob);
  const double a = params.alpha();
  const double vh = params.upsilon_high();
  const double vl = params.upsilon_low();
  const double g = follow_prob;

  const double d1 = vh + (1.0 - g) * vl;
  const double d2 = 2.0 - g - vh - (1.0 - g) * vl;
  const double d3 = g + vh + (1.0 - g) * vl;
  const double d4 = 2.0 - vh - (1.0 - g) * vl;
  const double numerator =
      (1.0 - a) * vh * vl * vl / (d1 * d1) +
      a * (1.0 - vh) * (1.0 - vl) * (1.0 - vl) / (d2 * d2) +
      a * vh * (1.0 - vl) * (1.0 - vl) / (d3 * d3) +
      (1.0 - a) * (1.0 - vh) * vl * vl / (d4 * d4);
  return -numerator / disagree_normalizer(params);
}

double follow_advantage_alpha_partial(double follow_prob,
                                      const ModelParams& params) {
  params.require_ordering();
  const double vl = params.upsilon_low();
  const double d = disagree_normalizer(params);
  return vl * (1.0 - vl) / (d * d) *
         belief_gap_sum(informative_beliefs(follow_prob, params));
}

double follow_advantage_at_zero(const ModelParams& params) {
  params.require_ordering();
  const double a = params.alpha();
  const double vh = params.upsilon_high();
  const double vl = params.upsilon_low();
  return (a - vl) * (vh - vl) /
         ((2.0 - vh - vl) * (vh + vl) * disagree_normalizer(params));
}

EquilibriumSolution solve_equilibrium(const ModelParams& params, double tol) {
  params.require_ordering();
  if (!(tol > 0.0)) throw InvalidParameter("tolerance must be positive");

  double lo = 0.0;
  double hi = 1.0;
  const double g_lo = follow_advantage(lo, params);
  const double g_hi = follow_advantage(hi, params);
  if (!(g_lo > 0.0))
    throw InternalContradiction("bracket failure: follow advantage at 0 is " +
                                std::to_string(g_lo) + ", expected > 0");
  if (!(g_hi < 0.0))
    throw InternalContradiction("bracket failure: follow advantage at 1 is " +
                                std::to_string(g_hi) + ", expected < 0");

  EquilibriumSolution out;
  while (hi - lo > tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    ++out.iterations;
    const double g = follow_advantage(mid, params);
    if (g > 0.0) {
      lo = mid;
    } else if (g < 0.0) {
      hi = mid;
    } else {
      lo = hi = mid;
    }
  }

  out.gamma_star = lo + 0.5 * (hi - lo);
  out.residual = std::abs(follow_advantage(out.gamma_star, params));
  out.beliefs = manager_beliefs(StrategyProfile::informative(out.gamma_star),
                                params);
  out.accuracy = forecast_accuracy(params, out.gamma_star);
  out.accuracy_margin = out.accuracy - params.alpha();
  out.adoption_value =
      0.5 * (params.alpha() - params.upsilon_low()) * out.gamma_star;
  return out;
}

BenchmarkMargins check_benchmark(const ModelParams& params) {
  const double vh = params.upsilon_high();
  const double vl = params.upsilon_low();
  const double denom = (2.0 - vh - vl) * (vh + vl);
  return {(vh - vl) * (2.0 * vl - 1.0) / denom,
          (vh - vl) * (2.0 * vh - 1.0) / denom};
}

FirstBestViolation check_first_best(const ModelParams& params) {
  const BeliefTable fb = manager_beliefs(StrategyProfile::first_best(), params);
  const auto gain = [&](PrivateSignal s, AlgoSignal a) {
    const Message prescribed = message_for(a);
    return worker_payoff(s, a, WorkerType::low, flip(prescribed), fb, params) -
           worker_payoff(s, a, WorkerType::low, prescribed, fb, params);
  };
  FirstBestViolation out;
  out.agree = gain(PrivateSignal::s1, AlgoSignal::a1);
  out.disagree = gain(PrivateSignal::s1, AlgoSignal::a0);
  out.correct_cell_gap = 1.0 - fb(Message::m1, AlgoSignal::a1, State::omega1);
  return out;
}

FeasibilityReport check_feasibility(const ModelParams& params) {
  const BenchmarkMargins bench = check_benchmark(params);
  const FirstBestViolation fb = check_first_best(params);
  return {bench.low, bench.high, fb.agree, fb.disagree};
}

double dgamma_dalpha(const ModelParams& params,
                     const EquilibriumSolution& solution) {
  return -follow_advantage_alpha_partial(solution.gamma_star, params) /
         follow_advantage_slope(solution.gamma_star, params);
}

double dgamma_dalpha(const ModelParams& params) {
  return dgamma_dalpha(params, solve_equilibrium(params));
}

double forecast_accuracy(const ModelParams& params, double follow_prob) {
  require_follow_prob(follow_prob);
  const double g = follow_prob;
  return 0.5 * (params.alpha() * g + params.upsilon_high() +
                (1.0 - g) * params.upsilon_low());
}

double informativeness_threshold(const ModelParams& params) {
  return (params.upsilon_high() - params.upsilon_low()) /
         (1.0 - params.upsilon_low());
}

double high_mismatch_prob(const ModelParams& params) {
  const double a = params.alpha();
  const double vh = params.upsilon_high();
  return 0.5 * ((1.0 - a) * vh + a * (1.0 - vh));
}

LaborQuantities labor_quantities(const ModelParams& params,
                                 const EquilibriumSolution& solution) {
  LaborQuantities out;
  const double g = solution.gamma_star;
  out.dgamma_dalpha = dgamma_dalpha(params, solution);
  out.accuracy_margin = forecast_accuracy(params, g) - params.alpha();
  out.margin_slope_direct = 0.5 * (g - 2.0);
  out.margin_slope_attenuation =
      0.5 * (params.alpha() - params.upsilon_low()) * out.dgamma_dalpha;
  out.margin_slope = out.margin_slope_direct + out.margin_slope_attenuation;
  out.adoption_value = 0.5 * (params.alpha() - params.upsilon_low()) * g;
  out.high_mismatch_prob = high_mismatch_prob(params);
  return out;
}

}  // namespace aversion
