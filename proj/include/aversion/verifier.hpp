// Copyright 2026 The aversion authors
// SPDX-License-Identifier: Apache-2.0

// Independent checks of the analytic results: best-response evaluation of an
// arbitrary strategy, an exhaustive grid search for equilibria, and numeric
// sign checks of the inequalities that rule out other strategy shapes.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aversion/model.hpp"

namespace aversion {

struct CellDeviation {
  double payoff_m1 = 0.0;
  double payoff_m0 = 0.0;
  double prescribed_m1 = 0.0;  ///< probability the strategy sends m1
  /// Best payoff minus the payoff of the prescribed mix. Never negative.
  double gain = 0.0;
  /// gain > tolerance, or the cell mixes and |payoff_m1 - payoff_m0| >
  /// tolerance.
  bool flagged = false;

  bool mixed() const { return prescribed_m1 > 0.0 && prescribed_m1 < 1.0; }
};

struct DeviationReport {
  std::array<CellDeviation, StrategyProfile::kCells> cells{};
  BeliefTable beliefs;
  double tolerance = 0.0;

  const CellDeviation& cell(WorkerType t, PrivateSignal s, AlgoSignal a) const {
    return cells[StrategyProfile::cell_index(t, s, a)];
  }
  double max_gain() const;
  bool passes() const;
};

/// Evaluates both messages in all eight information cells under the
/// Bayes-consistent beliefs of the strategy. Mixed cells must also be
/// indifferent to within tol.
DeviationReport deviation_check(const StrategyProfile& strategy,
                                const ModelParams& params, double tol,
                                OffPathRule off_path = {});

inline constexpr double kDefaultGridStep = 0.01;

/// Tolerance of a discretized search is tolerance_factor * grid_step *
/// (largest belief gap within the same algorithm signal).
inline constexpr double kGridToleranceFactor = 2.0;

struct BruteForceResult {
  double grid_step = kDefaultGridStep;
  /// Survivors restricted to the a1 cells, as (high s0, high s1, low s0,
  /// low s1) probabilities of sending m1.
  std::vector<std::array<double, 4>> a1_blocks;
  /// Survivors for the a0 cells in the same layout.
  std::vector<std::array<double, 4>> a0_blocks;
  std::uint64_t scanned = 0;  ///< a1-block candidates evaluated

  /// Surviving profiles are every a1 block paired with every a0 block.
  std::size_t profile_count() const {
    return a1_blocks.size() * a0_blocks.size();
  }
  /// Profile i, with i / a0_blocks.size() selecting the a1 block.
  StrategyProfile profile(std::size_t i) const;
};

/// Exhaustive search over strategies with entries on a grid of the given
/// step. Beliefs and incentives for a0 and a1 separate, so the a1 cells are
/// scanned and the a0 survivors obtained through the label flip. A profile
/// survives when its beliefs are informative and it passes deviation_check at
/// the grid tolerance. Throws InvalidParameter unless 1/grid_step
/// is an integer.
BruteForceResult brute_force_search(const ModelParams& params,
                                    double grid_step = kDefaultGridStep);

/// Same scan restricted to the a0 cells, without using the symmetry. Used to
/// confirm the reduction.
std::vector<std::array<double, 4>> brute_force_a0_blocks(
    const ModelParams& params, double grid_step = kDefaultGridStep);

/// Grid tolerance for a candidate profile: computed per algorithm signal.
double grid_tolerance(const BeliefTable& beliefs, AlgoSignal a,
                      double grid_step);

// Appendix inequalities. Throughout the algorithm signal is a1, the high type
// reports its signal and p is a mixing probability of the low type.

/// Low type mixes at (s1, a1) with probability p of m1 and reports m0 at
/// (s0, a1): its payoff from m1 minus m0 at (s1, a1). Positive means mixing
/// there is not incentive compatible.
double low_mix_agree_gap(double p, const ModelParams& params);

/// Low type reports m0 at (s1, a1) and m1 with probability p at (s0, a1): its
/// payoff from m1 minus m0 at (s1, a1). Positive contradicts reporting m0.
double low_mix_disagree_gap(double p, const ModelParams& params);

/// d low_mix_disagree_gap / dp.
double low_mix_disagree_gap_slope(double p, const ModelParams& params);

/// low_mix_disagree_gap at p = 1 in factored form.
double low_mix_disagree_gap_at_one(const ModelParams& params);

/// If the low type is indifferent at (s1, a1), its payoff from m1 minus m0 at
/// (s0, a1) is this coefficient times theta(m1,a1,w0) - theta(m0,a1,w0).
double low_s0_response_coefficient(const ModelParams& params);

/// Same construction for the high type: a nonzero coefficient means it
/// cannot be indifferent after both signals in an informative table.
double high_mix_coefficient(const ModelParams& params);

/// With the high type indifferent at (s1, a1), the low type's payoff from m1
/// minus m0 at (s0, a1) is this coefficient times theta(m1,a1,w0) -
/// theta(m0,a1,w0).
double high_mix_low_response_coefficient(const ModelParams& params);

/// The same coefficient in the form printed alongside the original proof;
/// its sign agrees with the derived one but its value does not.
double high_mix_low_response_coefficient_printed(const ModelParams& params);

/// Pure behaviors of the high type other than reporting its own signal.
enum class HighTypeCase : std::uint8_t {
  opposite_of_signal = 1,
  follows_algorithm = 2,
  opposes_algorithm = 3,
  own_signal = 4,
};

/// Full profile with the high type playing `high_case` and the low type
/// sending m1 with probabilities (low_s0, low_s1) at a1; the a0 cells are the
/// label-flipped image.
StrategyProfile high_case_profile(HighTypeCase high_case, double low_s0,
                                  double low_s1);

/// True when the profile is not an informative equilibrium: beliefs are not
/// informative or some cell has a strictly profitable deviation.
bool excluded_as_informative_equilibrium(const StrategyProfile& strategy,
                                         const ModelParams& params,
                                         double tol = 1e-12);

struct AppendixCheck {
  std::string claim;
  double p = 0.0;       ///< mixing probability, NaN when not p-dependent
  double value = 0.0;   ///< evaluated expression
  bool passed = false;
};

struct AppendixLedger {
  std::vector<AppendixCheck> checks;

  bool all_passed() const;
  std::optional<AppendixCheck> first_failure() const;
};

/// Evaluates every appendix sign claim at every p in p_grid plus the
/// p-independent claims (factored p = 1 form, coefficients, excluded cases).
AppendixLedger appendix_sign_checks(const ModelParams& params,
                                    std::span<const double> p_grid);

/// {0, step, 2 step, ..., 1}.
std::vector<double> unit_grid(double step);

}  // namespace aversion
