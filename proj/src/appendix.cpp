// Copyright 2026 The aversion authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>

#include "aversion/error.hpp"
#include "aversion/verifier.hpp"

namespace aversion {

namespace {

// Pr(s1, a1 | low) normalizer: 1 - alpha + (2 alpha - 1) upsilon_L.
double agree_normalizer(const ModelParams& params) {
  const double a = params.alpha();
  return 1.0 - a + (2.0 * a - 1.0) * params.upsilon_low();
}

double disagree_normalizer(const ModelParams& params) {
  const double a = params.alpha();
  return a - (2.0 * a - 1.0) * params.upsilon_low();
}

constexpr double kNotApplicable = std::numeric_limits<double>::quiet_NaN();

}  // namespace

double low_mix_agree_gap(double p, const ModelParams& params) {
  const double a = params.alpha();
  const double vh = params.upsilon_high();
  const double vl = params.upsilon_low();
  const double state0 = (1.0 - a) * (1.0 - vh - p * (1.0 - vl)) * (1.0 - vl) /
                        ((1.0 - vh + p * (1.0 - vl)) * (1.0 + vh - p * (1.0 - vl)));
  const double state1 =
      a * vl * (vh - p * vl) / ((2.0 - vh - p * vl) * (vh + p * vl));
  return (state0 + state1) / agree_normalizer(params);
}

double low_mix_disagree_gap(double p, const ModelParams& params) {
  const double a = params.alpha();
  const double vh = params.upsilon_high();
  const double vl = params.upsilon_low();
  const double sum = a * vh * vl / (vh + p * (1.0 - vl)) -
                     a * (1.0 - vh) * vl / (2.0 - vh - p * (1.0 - vl)) +
                     (1.0 - a) * (1.0 - vh) * (1.0 - vl) / (1.0 - vh + p * vl) -
                     (1.0 - a) * vh * (1.0 - vl) / (1.0 + vh - p * vl);
  return sum / agree_normalizer(params);
}

double low_mix_disagree_gap_slope(double p, const ModelParams& params) {
  const double a = params.alpha();
  const double vh = params.upsilon_high();
  const double vl = params.upsilon_low();
  const auto sq = [](double x) { return x * x; };
  const double sum = a * vh / sq(vh + p * (1.0 - vl)) +
                     a * (1.0 - vh) / sq(2.0 - vh - p * (1.0 - vl)) +
                     (1.0 - a) * vh / sq(1.0 + vh - p * vl) +
                     (1.0 - a) * (1.0 - vh) / sq(1.0 - vh + p * vl);
  return -(1.0 - vl) * vl * sum / agree_normalizer(params);
}

double low_mix_disagree_gap_at_one(const ModelParams& params) {
  const double a = params.alpha();
  const double vh = params.upsilon_high();
  const double vl = params.upsilon_low();
  const double spread = vh - vl;
  return (a + vl - 1.0) * (vh + vl - 1.0) /
         ((1.0 - spread * spread) * agree_normalizer(params));
}

double low_s0_response_coefficient(const ModelParams& params) {
  const double a = params.alpha();
  const double vl = params.upsilon_low();
  return (1.0 - a) * (2.0 * vl - 1.0) / (vl * disagree_normalizer(params));
}

double high_mix_coefficient(const ModelParams& params) {
  const double a = params.alpha();
  const double vh = params.upsilon_high();
  return (1.0 - a) * (2.0 * vh - 1.0) / (vh * ((2.0 * a - 1.0) * vh - a));
}

double high_mix_low_response_coefficient(const ModelParams& params) {
  const double a = params.alpha();
  const double vh = params.upsilon_high();
  const double vl = params.upsilon_low();
  return (1.0 - a) * (vh + vl - 1.0) / (vh * disagree_normalizer(params));
}

double high_mix_low_response_coefficient_printed(const ModelParams& params) {
  const double a = params.alpha();
  const double vh = params.upsilon_high();
  const double vl = params.upsilon_low();
  return (1.0 - a) * (vh - vl) / (vh * agree_normalizer(params));
}

StrategyProfile high_case_profile(HighTypeCase high_case, double low_s0,
                                  double low_s1) {
  double high_s0 = 0.0;
  double high_s1 = 1.0;
  switch (high_case) {
    case HighTypeCase::opposite_of_signal: high_s0 = 1.0; high_s1 = 0.0; break;
    case HighTypeCase::follows_algorithm:  high_s0 = 1.0; high_s1 = 1.0; break;
    case HighTypeCase::opposes_algorithm:  high_s0 = 0.0; high_s1 = 0.0; break;
    case HighTypeCase::own_signal:         high_s0 = 0.0; high_s1 = 1.0; break;
  }
  StrategyProfile a1_half;
  const AlgoSignal a1 = AlgoSignal::a1;
  a1_half.set_report_m1(WorkerType::high, PrivateSignal::s0, a1, high_s0);
  a1_half.set_report_m1(WorkerType::high, PrivateSignal::s1, a1, high_s1);
  a1_half.set_report_m1(WorkerType::low, PrivateSignal::s0, a1, low_s0);
  a1_half.set_report_m1(WorkerType::low, PrivateSignal::s1, a1, low_s1);

  // Fill the a0 cells with the flipped image of the a1 cells.
  const StrategyProfile image = a1_half.flipped();
  StrategyProfile out = a1_half;
  for (WorkerType t : kTypes)
    for (PrivateSignal s : kSignals)
      out.set_report_m1(t, s, AlgoSignal::a0, image.report_m1(t, s, AlgoSignal::a0));
  return out;
}

bool excluded_as_informative_equilibrium(const StrategyProfile& strategy,
                                         const ModelParams& params,
                                         double tol) {
  const DeviationReport report = deviation_check(strategy, params, tol);
  return !report.beliefs.is_informative() || !report.passes();
}

bool AppendixLedger::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const AppendixCheck& c) { return c.passed; });
}

std::optional<AppendixCheck> AppendixLedger::first_failure() const {
  for (const AppendixCheck& c : checks)
    if (!c.passed) return c;
  return std::nullopt;
}

std::vector<double> unit_grid(double step) {
  if (!(step > 0.0 && step <= 1.0))
    throw InvalidParameter("grid step must lie in (0, 1]");
  const auto n = static_cast<int>(std::round(1.0 / step));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) out.push_back(static_cast<double>(i) / n);
  return out;
}

AppendixLedger appendix_sign_checks(const ModelParams& params,
                                    std::span<const double> p_grid) {
  AppendixLedger ledger;
  const auto record = [&](std::string claim, double p, double value,
                          bool passed) {
    ledger.checks.push_back({std::move(claim), p, value, passed});
  };

  for (double p : p_grid) {
    const double agree = low_mix_agree_gap(p, params);
    record("low type mixing on an agreeing signal gains from m1 (> 0)", p,
           agree, agree > 0.0);
    const double disagree = low_mix_disagree_gap(p, params);
    record("low type reporting m0 on agreeing signals gains from m1 (> 0)", p,
           disagree, disagree > 0.0);
    const double slope = low_mix_disagree_gap_slope(p, params);
    record("that gain is decreasing in p (< 0)", p, slope, slope < 0.0);
  }

  const double at_one = low_mix_disagree_gap_at_one(params);
  record("gain at p = 1, factored form (> 0)", kNotApplicable, at_one,
         at_one > 0.0);
  const double mismatch = at_one - low_mix_disagree_gap(1.0, params);
  record("factored form equals the gain at p = 1", kNotApplicable, mismatch,
         std::abs(mismatch) <= 1e-12);

  const double low_coef = low_s0_response_coefficient(params);
  record("low type indifferent after s1 strictly prefers m0 after s0 (> 0)",
         kNotApplicable, low_coef, low_coef > 0.0);
  const double high_coef = high_mix_coefficient(params);
  record("high type cannot be indifferent after both signals (!= 0)",
         kNotApplicable, high_coef, high_coef != 0.0 && std::isfinite(high_coef));
  const double response = high_mix_low_response_coefficient(params);
  record("high type mixing pushes the low type to m0 after s0 (> 0)",
         kNotApplicable, response, response > 0.0);
  const double printed = high_mix_low_response_coefficient_printed(params);
  record("printed low-response coefficient has the same sign (> 0)",
         kNotApplicable, printed, printed > 0.0);

  const double vh = params.upsilon_high();
  const double vl = params.upsilon_low();
  const double reversed_gap = vh / (vh + vl) - (1.0 - vh) / (2.0 - vh - vl);
  record("case 1 beliefs reward the wrong forecast (gap > 0)", kNotApplicable,
         reversed_gap, reversed_gap > 0.0);

  const std::vector<double> low_grid = unit_grid(0.1);
  const std::array<std::pair<HighTypeCase, const char*>, 3> cases{{
      {HighTypeCase::opposite_of_signal,
       "case 1 excluded: high type reports the opposite of its signal"},
      {HighTypeCase::follows_algorithm,
       "case 2 excluded: high type always follows the algorithm"},
      {HighTypeCase::opposes_algorithm,
       "case 3 excluded: high type always opposes the algorithm"},
  }};
  for (const auto& [high_case, claim] : cases) {
    double survivors = 0.0;
    for (double x0 : low_grid)
      for (double x1 : low_grid)
        if (!excluded_as_informative_equilibrium(
                high_case_profile(high_case, x0, x1), params))
          survivors += 1.0;
    record(claim, kNotApplicable, survivors, survivors == 0.0);
  }
  return ledger;
}

}  // namespace aversion
