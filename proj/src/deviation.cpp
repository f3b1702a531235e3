// Copyright 2026 The aversion authors
// SPDX-License-Identifier: Apache-2.0

#include "aversion/verifier.hpp"

#include <algorithm>
#include <cmath>

namespace aversion {

double DeviationReport::max_gain() const {
  double best = 0.0;
  for (const CellDeviation& c : cells) best = std::max(best, c.gain);
  return best;
}

bool DeviationReport::passes() const {
  return std::none_of(cells.begin(), cells.end(),
                      [](const CellDeviation& c) { return c.flagged; });
}

DeviationReport deviation_check(const StrategyProfile& strategy,
                                const ModelParams& params, double tol,
                                OffPathRule off_path) {
  DeviationReport report;
  report.tolerance = tol;
  report.beliefs = manager_beliefs(strategy, params, off_path);
  for (WorkerType t : kTypes) {
    for (PrivateSignal s : kSignals) {
      for (AlgoSignal a : kAlgoSignals) {
        CellDeviation& c = report.cells[StrategyProfile::cell_index(t, s, a)];
        c.prescribed_m1 = strategy.report_m1(t, s, a);
        c.payoff_m1 =
            worker_payoff(s, a, t, Message::m1, report.beliefs, params);
        c.payoff_m0 =
            worker_payoff(s, a, t, Message::m0, report.beliefs, params);
        const double diff = c.payoff_m1 - c.payoff_m0;
        c.gain = diff >= 0.0 ? (1.0 - c.prescribed_m1) * diff
                             : c.prescribed_m1 * -diff;
        c.flagged = c.gain > tol || (c.mixed() && std::abs(diff) > tol);
      }
    }
  }
  return report;
}

double grid_tolerance(const BeliefTable& beliefs, AlgoSignal a,
                      double grid_step) {
  double gap = 0.0;
  for (State w : kStates)
    gap = std::max(gap, std::abs(beliefs(Message::m1, a, w) -
                                 beliefs(Message::m0, a, w)));
  return kGridToleranceFactor * grid_step * gap;
}

}  // namespace aversion
