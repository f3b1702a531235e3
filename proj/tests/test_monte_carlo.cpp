// Copyright 2026 The aversion authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "aversion/equilibrium.hpp"
#include "aversion/error.hpp"
#include "aversion/monte_carlo.hpp"
#include "aversion/report_json.hpp"
#include "json.hpp"
#include "oracle.hpp"

namespace aversion {
namespace {

const ModelParams kGolden = ModelParams::create(0.55, 0.62, 0.60);

double gamma_star() {
  static const double g = solve_equilibrium(kGolden).gamma_star;
  return g;
}

const SimulationReport& golden_run() {
  static const SimulationReport r = monte_carlo(kGolden, gamma_star(), 400000, 42);
  return r;
}

TEST(SplitMix, ReferenceOutputs) {
  EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFULL);
  EXPECT_NE(chunk_seed(42, 0), chunk_seed(42, 1));
  EXPECT_NE(chunk_seed(42, 0), chunk_seed(43, 0));
}

TEST(MonteCarlo, ZeroDrawsIsAnEmptyReport) {
  EXPECT_THROW(monte_carlo(kGolden, 0.5, 0, 1), EmptyReport);
}

TEST(MonteCarlo, SameSeedSameReport) {
  const SimulationReport a = monte_carlo(kGolden, gamma_star(), 150000, 7);
  const SimulationReport b = monte_carlo(kGolden, gamma_star(), 150000, 7);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_EQ(simulation_report_json(a), simulation_report_json(b));
  const SimulationReport c = monte_carlo(kGolden, gamma_star(), 150000, 8);
  EXPECT_NE(a.counts, c.counts);
}

TEST(MonteCarlo, CountsCoverEveryDraw) {
  const SimulationReport r = monte_carlo(kGolden, 0.3, 100001, 3);
  std::uint64_t total = 0;
  for (auto c : r.counts) total += c;
  EXPECT_EQ(total, 100001u);
  EXPECT_EQ(r.n_draws, 100001u);
  EXPECT_EQ(r.seed, 3u);
  EXPECT_DOUBLE_EQ(r.gamma, 0.3);
}

TEST(MonteCarlo, AccuracyWithinThreeStandardErrors) {
  const SimulationReport& r = golden_run();
  const double analytic = forecast_accuracy(kGolden, gamma_star());
  EXPECT_NEAR(r.accuracy_se, std::sqrt(analytic * (1 - analytic) / 400000), 1e-5);
  EXPECT_LE(std::abs(r.empirical_accuracy - analytic), 3 * r.accuracy_se);
}

TEST(MonteCarlo, BeliefsWithinFourStandardErrors) {
  const SimulationReport& r = golden_run();
  const BeliefTable t = informative_beliefs(gamma_star(), kGolden);
  int checked = 0;
  for (Message m : kMessages)
    for (AlgoSignal a : kAlgoSignals)
      for (State w : kStates) {
        if (r.belief_hits_at(m, a, w) < 100) continue;
        ++checked;
        const double se = r.belief_se[SimulationReport::belief_index(m, a, w)];
        EXPECT_LE(std::abs(r.belief_at(m, a, w) - t(m, a, w)), 4 * se);
      }
  EXPECT_EQ(checked, 8);
}

TEST(MonteCarlo, JointFrequenciesMatchEnumeration) {
  const SimulationReport& r = golden_run();
  const oracle::Params o{0.55, 0.62, 0.60};
  const oracle::Profile x = oracle::informative(gamma_star());
  for (WorkerType t : kTypes)
    for (PrivateSignal s : kSignals)
      for (AlgoSignal a : kAlgoSignals)
        for (State w : kStates)
          for (Message m : kMessages) {
            const int ti = static_cast<int>(index(t));
            const int si = static_cast<int>(index(s));
            const int ai = static_cast<int>(index(a));
            const double p = oracle::prob(o, ti, si, ai, static_cast<int>(index(w))) *
                             oracle::send(x, static_cast<int>(index(m)), ti, si, ai);
            const std::size_t i = SimulationReport::joint_index(t, s, a, w, m);
            const double se = std::sqrt(p * (1 - p) / 400000);
            EXPECT_LE(std::abs(r.empirical_joint[i] - p), 4 * se + 1e-12);
          }
}

TEST(MonteCarlo, SignalsAreBalancedForEachType) {
  const SimulationReport& r = golden_run();
  for (WorkerType t : kTypes)
    EXPECT_LE(std::abs(r.empirical_pr_s1[index(t)] - 0.5), 3 * r.pr_s1_se[index(t)]);
}

TEST(MonteCarlo, FirstBestNeverOverridesWhenLow) {
  EXPECT_EQ(monte_carlo(kGolden, 1.0, 200000, 5).low_overrides, 0u);
  EXPECT_GT(monte_carlo(kGolden, 0.0, 200000, 5).low_overrides, 0u);
}

TEST(MonteCarlo, UnvisitedBeliefCellsAreNan) {
  const SimulationReport r = monte_carlo(kGolden, StrategyProfile::uniform(0.0), 1000, 1);
  EXPECT_EQ(r.belief_hits_at(Message::m1, AlgoSignal::a1, State::omega1), 0u);
  EXPECT_TRUE(std::isnan(r.belief_at(Message::m1, AlgoSignal::a1, State::omega1)));
  EXPECT_TRUE(std::isnan(r.gamma));
}

TEST(MonteCarlo, JsonReport) {
  const SimulationReport r = monte_carlo(kGolden, 0.5, 1000, 11);
  const auto doc = nlohmann::json::parse(simulation_report_json(r));
  EXPECT_EQ(doc["n_draws"], 1000);
  EXPECT_EQ(doc["seed"], 11);
  EXPECT_EQ(doc["params"]["alpha"], 0.6);
  EXPECT_EQ(doc["empirical_beliefs"].size(), 8u);
  EXPECT_EQ(doc["empirical_pr_s1"].size(), 2u);
  EXPECT_TRUE(doc.contains("empirical_accuracy"));
}

}  // namespace
}  // namespace aversion
