// Copyright 2026 The aversion authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "aversion/equilibrium.hpp"
#include "aversion/error.hpp"
#include "aversion/grid.hpp"
#include "aversion/verifier.hpp"
#include "oracle.hpp"

namespace aversion {
namespace {

const ModelParams kGolden = ModelParams::create(0.55, 0.62, 0.60);

oracle::Params to_oracle(const ModelParams& p) {
  return {p.upsilon_low(), p.upsilon_high(), p.alpha()};
}

// Oracle profile with the a1 cells (high s0, high s1, low s0, low s1) and
// their label-flipped image at a0.
oracle::Profile symmetric(const std::array<double, 4>& b) {
  oracle::Profile x{};
  x[4 + 0 + 1] = b[0];
  x[4 + 2 + 1] = b[1];
  x[0 + 1] = b[2];
  x[2 + 1] = b[3];
  x[4 + 2 + 0] = 1.0 - b[0];
  x[4 + 0 + 0] = 1.0 - b[1];
  x[2 + 0] = 1.0 - b[2];
  x[0 + 0] = 1.0 - b[3];
  return x;
}

StrategyProfile to_profile(const oracle::Profile& x) {
  StrategyProfile s;
  for (WorkerType t : kTypes)
    for (PrivateSignal sig : kSignals)
      for (AlgoSignal a : kAlgoSignals)
        s.set_report_m1(t, sig, a, x[index(t) * 4 + index(sig) * 2 + index(a)]);
  return s;
}

struct A1Cells {
  double tol = 0.0;
  bool informative = false;
  double max_gain = 0.0;
  double max_mixed_gap = 0.0;  // largest |payoff difference| over mixing cells
};

// Grid acceptance test on the a1 cells, computed from the oracle.
A1Cells a1_cells(const ModelParams& p, const std::array<double, 4>& block,
                 double step) {
  const oracle::Params o = to_oracle(p);
  const oracle::Profile x = symmetric(block);
  const oracle::Beliefs b = oracle::beliefs(o, x);
  A1Cells out;
  out.informative = b(1, 1, 1) - b(0, 1, 1) > 1e-12 && b(0, 1, 0) - b(1, 1, 0) > 1e-12;
  out.tol = 2.0 * step *
            std::max(std::abs(b(1, 1, 1) - b(0, 1, 1)), std::abs(b(1, 1, 0) - b(0, 1, 0)));
  for (int t = 0; t < 2; ++t) {
    for (int s = 0; s < 2; ++s) {
      const double xm1 = x[static_cast<std::size_t>(t * 4 + s * 2 + 1)];
      const double d = oracle::payoff(o, b, t, s, 1, 1) - oracle::payoff(o, b, t, s, 1, 0);
      out.max_gain = std::max(out.max_gain, d >= 0 ? (1 - xm1) * d : xm1 * -d);
      if (xm1 > 0 && xm1 < 1) out.max_mixed_gap = std::max(out.max_mixed_gap, std::abs(d));
    }
  }
  return out;
}

bool a1_accepted(const ModelParams& p, const std::array<double, 4>& block, double step) {
  const A1Cells c = a1_cells(p, block, step);
  return c.informative && c.max_gain <= c.tol && c.max_mixed_gap <= c.tol;
}

TEST(DeviationCheck, EquilibriumHasNoProfitableDeviation) {
  for (const ModelParams& p : admissible_grid(coarse_grid_spec())) {
    const double g = solve_equilibrium(p).gamma_star;
    const DeviationReport r = deviation_check(StrategyProfile::informative(g), p, 1e-9);
    EXPECT_TRUE(r.passes());
    EXPECT_LE(r.max_gain(), 1e-9);
    EXPECT_TRUE(r.beliefs.is_informative());
    for (PrivateSignal s : kSignals) {
      for (AlgoSignal a : kAlgoSignals) {
        const CellDeviation& high = r.cells[StrategyProfile::cell_index(WorkerType::high, s, a)];
        const double truthful = s == PrivateSignal::s1 ? high.payoff_m1 - high.payoff_m0
                                                       : high.payoff_m0 - high.payoff_m1;
        EXPECT_GT(truthful, 0.0);
        const CellDeviation& low = r.cells[StrategyProfile::cell_index(WorkerType::low, s, a)];
        if (index(s) == index(a)) {
          const double margin = s == PrivateSignal::s1 ? low.payoff_m1 - low.payoff_m0
                                                       : low.payoff_m0 - low.payoff_m1;
          EXPECT_GT(margin, 0.0);
        } else {
          EXPECT_LE(std::abs(low.payoff_m1 - low.payoff_m0), 1e-10);
        }
      }
    }
  }
}

TEST(DeviationCheck, PayoffsMatchEnumeration) {
  const StrategyProfile s = StrategyProfile::informative(0.3);
  const DeviationReport r = deviation_check(s, kGolden, 1e-9);
  const oracle::Params o = to_oracle(kGolden);
  const oracle::Beliefs b = oracle::beliefs(o, oracle::informative(0.3));
  for (WorkerType t : kTypes)
    for (PrivateSignal sig : kSignals)
      for (AlgoSignal a : kAlgoSignals) {
        const CellDeviation& c = r.cells[StrategyProfile::cell_index(t, sig, a)];
        const int ti = static_cast<int>(index(t));
        const int si = static_cast<int>(index(sig));
        const int ai = static_cast<int>(index(a));
        EXPECT_NEAR(c.payoff_m1, oracle::payoff(o, b, ti, si, ai, 1), 1e-14);
        EXPECT_NEAR(c.payoff_m0, oracle::payoff(o, b, ti, si, ai, 0), 1e-14);
      }
}

TEST(DeviationCheck, MixingAwayFromIndifferenceIsFlagged) {
  // At gamma = 0.5 the low type strictly prefers overriding, so its mixing
  // cells carry a positive gain.
  const DeviationReport r = deviation_check(StrategyProfile::informative(0.5), kGolden, 1e-9);
  EXPECT_FALSE(r.passes());
  const CellDeviation& c = r.cells[StrategyProfile::cell_index(
      WorkerType::low, PrivateSignal::s1, AlgoSignal::a0)];
  EXPECT_TRUE(c.mixed());
  EXPECT_TRUE(c.flagged);
  EXPECT_NEAR(c.payoff_m1 - c.payoff_m0, follow_advantage(0.5, kGolden) * -1.0, 1e-14);
}

TEST(DeviationCheck, MixedCellNeedsIndifferenceEvenWhenGainIsSmall) {
  // Mixing almost entirely on the better message keeps the gain small while
  // the payoff gap is large.
  StrategyProfile s = StrategyProfile::informative(solve_equilibrium(kGolden).gamma_star);
  s.set_report_m1(WorkerType::high, PrivateSignal::s1, AlgoSignal::a1, 1.0 - 1e-6);
  const DeviationReport r = deviation_check(s, kGolden, 1e-4);
  const CellDeviation& c = r.cells[StrategyProfile::cell_index(
      WorkerType::high, PrivateSignal::s1, AlgoSignal::a1)];
  EXPECT_LE(c.gain, 1e-4);
  EXPECT_GT(std::abs(c.payoff_m1 - c.payoff_m0), 1e-4);
  EXPECT_TRUE(c.flagged);
}

TEST(DeviationCheck, PureCellsOnlyNeedSmallGains) {
  const DeviationReport r = deviation_check(StrategyProfile::informative(0.0), kGolden, 0.01);
  EXPECT_TRUE(r.passes());
  const DeviationReport strict = deviation_check(StrategyProfile::informative(0.0), kGolden, 1e-9);
  EXPECT_FALSE(strict.passes());
  EXPECT_NEAR(strict.max_gain(), follow_advantage(0.0, kGolden), 1e-14);
}

TEST(GridTolerance, ScalesWithStepAndBeliefGap) {
  const BeliefTable t = informative_beliefs(0.2, kGolden);
  double gap = 0.0;
  for (State w : kStates)
    gap = std::max(gap, std::abs(t(Message::m1, AlgoSignal::a1, w) - t(Message::m0, AlgoSignal::a1, w)));
  EXPECT_NEAR(grid_tolerance(t, AlgoSignal::a1, 0.01), 0.02 * gap, 1e-16);
  EXPECT_NEAR(grid_tolerance(t, AlgoSignal::a1, 0.05), 5 * grid_tolerance(t, AlgoSignal::a1, 0.01), 1e-16);
}

TEST(BruteForce, RejectsBadSteps) {
  EXPECT_THROW(brute_force_search(kGolden, 0.0), InvalidParameter);
  EXPECT_THROW(brute_force_search(kGolden, 0.3), InvalidParameter);
  EXPECT_THROW(brute_force_search(kGolden, 1.5), InvalidParameter);
}

TEST(BruteForce, MatchesExhaustiveEnumeration) {
  for (const double step : {0.25, 0.1}) {
    for (const ModelParams& p : {kGolden, ModelParams::create(0.6, 0.9, 0.8)}) {
      const int n = static_cast<int>(std::lround(1.0 / step));
      std::set<std::array<double, 4>> expected;
      for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
          for (int k = 0; k <= n; ++k)
            for (int l = 0; l <= n; ++l) {
              const std::array<double, 4> b{double(i) / n, double(j) / n, double(k) / n,
                                            double(l) / n};
              if (a1_accepted(p, b, step)) expected.insert(b);
            }
      const BruteForceResult r = brute_force_search(p, step);
      EXPECT_EQ(r.scanned, static_cast<std::uint64_t>(std::pow(n + 1, 4)));
      const std::set<std::array<double, 4>> got(r.a1_blocks.begin(), r.a1_blocks.end());
      EXPECT_EQ(got.size(), r.a1_blocks.size());
      EXPECT_EQ(got, expected) << "step " << step;
    }
  }
}

TEST(BruteForce, CoarseGridKeepsTruthTelling) {
  // The tolerance at step 0.25 is loose enough for truth-telling, whose
  // only profitable deviation is G(0).
  const BruteForceResult r = brute_force_search(kGolden, 0.25);
  const std::array<double, 4> truthful{0.0, 1.0, 0.0, 1.0};
  EXPECT_NE(std::find(r.a1_blocks.begin(), r.a1_blocks.end(), truthful), r.a1_blocks.end());
  for (const auto& b : r.a1_blocks) EXPECT_TRUE(a1_accepted(kGolden, b, 0.25));
}

TEST(BruteForce, DirectA0ScanIsTheFlippedImage) {
  for (const double step : {0.25, 0.1, 0.05}) {
    const BruteForceResult r = brute_force_search(kGolden, step);
    std::vector<std::array<double, 4>> direct = brute_force_a0_blocks(kGolden, step);
    std::sort(direct.begin(), direct.end());
    ASSERT_EQ(direct.size(), r.a0_blocks.size());
    for (std::size_t i = 0; i < direct.size(); ++i)
      for (std::size_t c = 0; c < 4; ++c)
        EXPECT_NEAR(direct[i][c], r.a0_blocks[i][c], 1e-12);
  }
}

TEST(BruteForce, ProfilesAreTheBlockProduct) {
  const BruteForceResult r = brute_force_search(kGolden, 0.25);
  ASSERT_EQ(r.profile_count(), r.a1_blocks.size() * r.a0_blocks.size());
  for (std::size_t i = 0; i < r.profile_count(); ++i) {
    const StrategyProfile s = r.profile(i);
    const auto& a1 = r.a1_blocks[i / r.a0_blocks.size()];
    const auto& a0 = r.a0_blocks[i % r.a0_blocks.size()];
    EXPECT_EQ(s.report_m1(WorkerType::high, PrivateSignal::s0, AlgoSignal::a1), a1[0]);
    EXPECT_EQ(s.report_m1(WorkerType::low, PrivateSignal::s1, AlgoSignal::a1), a1[3]);
    EXPECT_EQ(s.report_m1(WorkerType::high, PrivateSignal::s1, AlgoSignal::a0), a0[1]);
    EXPECT_EQ(s.report_m1(WorkerType::low, PrivateSignal::s0, AlgoSignal::a0), a0[2]);
  }
  EXPECT_THROW(r.profile(r.profile_count()), InvalidParameter);
}

TEST(BruteForce, NearBabblingBlocksAreOnlyEpsilonEquilibria) {
  // Both clear the weighted-gain test at step 0.01 but mix away from
  // indifference.
  for (const std::array<double, 4> b : {std::array<double, 4>{0.0, 0.03, 0.04, 0.0},
                                        std::array<double, 4>{0.0, 0.8, 0.0, 0.83}}) {
    const A1Cells c = a1_cells(kGolden, b, 0.01);
    EXPECT_TRUE(c.informative);
    EXPECT_LE(c.max_gain, c.tol);
    EXPECT_GT(c.max_mixed_gap, c.tol);

    const StrategyProfile s = to_profile(symmetric(b));
    const DeviationReport r = deviation_check(s, kGolden, c.tol);
    EXPECT_FALSE(r.passes());
  }
}

TEST(BruteForce, GridNeighboursOfTheEquilibriumMissIndifference) {
  // gamma* = 0.0148 lies between 0.01 and 0.02; on the grid the low type's
  // payoff gap at either neighbour exceeds the tolerance.
  const A1Cells lo = a1_cells(kGolden, {0.0, 1.0, 0.01, 1.0}, 0.01);
  const A1Cells hi = a1_cells(kGolden, {0.0, 1.0, 0.02, 1.0}, 0.01);
  EXPECT_NEAR(lo.max_mixed_gap, 0.002385, 1e-6);
  EXPECT_NEAR(lo.tol, 0.001552, 1e-6);
  EXPECT_NEAR(hi.max_mixed_gap, 0.002586, 1e-6);
  EXPECT_NEAR(hi.tol, 0.001662, 1e-6);
  EXPECT_GT(lo.max_mixed_gap, lo.tol);
  EXPECT_GT(hi.max_mixed_gap, hi.tol);
}

TEST(Appendix, ClosedFormsMatchBayes) {
  for (const ModelParams& p : admissible_grid(coarse_grid_spec())) {
    const oracle::Params o = to_oracle(p);
    for (double q : unit_grid(0.1)) {
      const oracle::Beliefs agree = oracle::beliefs(o, symmetric({0.0, 1.0, 0.0, q}));
      EXPECT_NEAR(low_mix_agree_gap(q, p),
                  oracle::payoff(o, agree, 0, 1, 1, 1) - oracle::payoff(o, agree, 0, 1, 1, 0),
                  1e-13);
      const oracle::Beliefs dis = oracle::beliefs(o, symmetric({0.0, 1.0, q, 0.0}));
      EXPECT_NEAR(low_mix_disagree_gap(q, p),
                  oracle::payoff(o, dis, 0, 1, 1, 1) - oracle::payoff(o, dis, 0, 1, 1, 0),
                  1e-13);
    }
  }
}

TEST(Appendix, DisagreeGapSlopeAndEndpoint) {
  for (const ModelParams& p : admissible_grid(coarse_grid_spec())) {
    for (double q : {0.2, 0.5, 0.8}) {
      const double fd = oracle::derivative([&](double x) { return low_mix_disagree_gap(x, p); }, q, 1e-4);
      EXPECT_NEAR(low_mix_disagree_gap_slope(q, p), fd, 1e-8 * std::max(1.0, std::abs(fd)));
    }
    EXPECT_NEAR(low_mix_disagree_gap_at_one(p), low_mix_disagree_gap(1.0, p), 1e-14);
  }
  EXPECT_NEAR(low_mix_disagree_gap_at_one(kGolden), 0.05024620641141594, 1e-14);
  EXPECT_NEAR(low_mix_disagree_gap_at_one(kGolden), 0.050245, 5e-6);
}

// Coefficient on theta(m1,a1,w0) - theta(m0,a1,w0) in the payoff gap of
// `responder` at s0 once `indifferent` is indifferent at s1 (all at a1).
double response_coefficient(const ModelParams& p, int indifferent, int responder) {
  const oracle::Params o = to_oracle(p);
  const double q1 = oracle::posterior_w1(o, indifferent, 1, 1);
  const double q0 = oracle::posterior_w1(o, responder, 0, 1);
  return (1.0 - q0) - q0 * (1.0 - q1) / q1;
}

TEST(Appendix, ResponseCoefficients) {
  for (const ModelParams& p : admissible_grid(coarse_grid_spec())) {
    EXPECT_NEAR(low_s0_response_coefficient(p), response_coefficient(p, 0, 0), 1e-13);
    EXPECT_NEAR(high_mix_low_response_coefficient(p), response_coefficient(p, 1, 0), 1e-13);
    const double printed = high_mix_low_response_coefficient_printed(p);
    EXPECT_GT(printed * high_mix_low_response_coefficient(p), 0.0);
    // Same magnitude as the high type's own response; only nonzero-ness matters.
    EXPECT_NEAR(std::abs(high_mix_coefficient(p)), std::abs(response_coefficient(p, 1, 1)), 1e-13);
    EXPECT_NE(high_mix_coefficient(p), 0.0);
  }
}

TEST(Appendix, HighTypeCasesOtherThanTruthAreExcluded) {
  const std::vector<double> grid = unit_grid(0.1);
  for (HighTypeCase c : {HighTypeCase::opposite_of_signal, HighTypeCase::follows_algorithm,
                         HighTypeCase::opposes_algorithm})
    for (double x0 : grid)
      for (double x1 : grid)
        EXPECT_TRUE(excluded_as_informative_equilibrium(high_case_profile(c, x0, x1), kGolden));

  const double g = solve_equilibrium(kGolden).gamma_star;
  EXPECT_FALSE(excluded_as_informative_equilibrium(
      high_case_profile(HighTypeCase::own_signal, g, 1.0), kGolden, 1e-9));
  EXPECT_EQ(high_case_profile(HighTypeCase::own_signal, g, 1.0),
            StrategyProfile::informative(g));
  EXPECT_TRUE(excluded_as_informative_equilibrium(
      high_case_profile(HighTypeCase::own_signal, 0.0, 1.0), kGolden));
}

TEST(Appendix, SignChecksHoldOnTheGrid) {
  const std::vector<double> grid = unit_grid(0.1);
  for (const ModelParams& p : admissible_grid(coarse_grid_spec())) {
    const AppendixLedger ledger = appendix_sign_checks(p, grid);
    EXPECT_FALSE(ledger.checks.empty());
    EXPECT_TRUE(ledger.all_passed()) << ledger.first_failure()->claim;
  }
}

TEST(Appendix, UnitGrid) {
  const std::vector<double> g = unit_grid(0.1);
  ASSERT_EQ(g.size(), 11u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 1.0);
  EXPECT_THROW(unit_grid(0.0), InvalidParameter);
}

}  // namespace
}  // namespace aversion
