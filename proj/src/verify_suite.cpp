// Copyright 2026 The aversion authors
// SPDX-License-Identifier: Apache-2.0

#include "aversion/verify_suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>

#include "aversion/equilibrium.hpp"
#include "aversion/error.hpp"
#include "aversion/format.hpp"
#include "aversion/grid.hpp"

namespace aversion {

namespace {

using Failure = std::optional<std::string>;

std::string describe(const ModelParams& p) {
  return "upsilon_L=" + format_real(p.upsilon_low()) +
         " upsilon_H=" + format_real(p.upsilon_high()) +
         " alpha=" + format_real(p.alpha());
}

// Derivative of f on [lo, hi] by centered differences, switching to the
// second-order one-sided stencil within h of an end.
double finite_difference(const std::function<double(double)>& f, double x,
                         double h, double lo, double hi) {
  if (x - h < lo)
    return (-3.0 * f(x) + 4.0 * f(x + h) - f(x + 2.0 * h)) / (2.0 * h);
  if (x + h > hi)
    return (3.0 * f(x) - 4.0 * f(x - h) + f(x - 2.0 * h)) / (2.0 * h);
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

bool relative_close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

class LedgerBuilder {
 public:
  explicit LedgerBuilder(const std::vector<ModelParams>& points)
      : points_(points) {}

  // Runs check at every point and stops at the first failure.
  void claim(const std::string& name,
             const std::function<Failure(const ModelParams&)>& check) {
    for (const ModelParams& p : points_) {
      Failure failure;
      try {
        failure = check(p);
      } catch (const std::exception& e) {
        failure = std::string("threw: ") + e.what();
      }
      if (failure) {
        ledger_.entries.push_back(
            {name, false, *failure + " at " + describe(p)});
        return;
      }
    }
    ledger_.entries.push_back(
        {name, true, std::to_string(points_.size()) + " point(s)"});
  }

  void single(const std::string& name, const ModelParams& p,
              const std::function<Failure(const ModelParams&)>& check) {
    Failure failure;
    try {
      failure = check(p);
    } catch (const std::exception& e) {
      failure = std::string("threw: ") + e.what();
    }
    ledger_.entries.push_back({name, !failure,
                               failure ? *failure + " at " + describe(p)
                                       : describe(p)});
  }

  void add(LedgerEntry entry) { ledger_.entries.push_back(std::move(entry)); }

  VerifyLedger finish() {
    ledger_.points = points_.size();
    return std::move(ledger_);
  }

 private:
  const std::vector<ModelParams>& points_;
  VerifyLedger ledger_;
};

Failure expect(bool ok, const std::string& what, double value) {
  if (ok) return std::nullopt;
  return what + " = " + format_real(value);
}

}  // namespace

bool VerifyLedger::all_passed() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const LedgerEntry& e) { return e.passed; });
}

GridDensity parse_grid_density(const std::string& name) {
  if (name == "point") return GridDensity::point;
  if (name == "coarse") return GridDensity::coarse;
  if (name == "dense") return GridDensity::dense;
  throw InvalidParameter("grid must be one of point, coarse, dense");
}

VerifyLedger run_verification(const ModelParams& params,
                              const VerifyOptions& options) {
  params.require_ordering();
  std::vector<ModelParams> points{params};
  if (options.grid != GridDensity::point) {
    const auto grid = admissible_grid(options.grid == GridDensity::dense
                                          ? dense_grid_spec()
                                          : coarse_grid_spec());
    points.insert(points.end(), grid.begin(), grid.end());
  }

  const double sign = options.flip_follow_advantage_sign ? -1.0 : 1.0;
  const auto advantage = [sign](double g, const ModelParams& p) {
    return sign * follow_advantage(g, p);
  };
  const auto advantage_slope = [sign](double g, const ModelParams& p) {
    return sign * follow_advantage_slope(g, p);
  };
  const double tol = options.solver_tol;

  LedgerBuilder b(points);

  b.claim("benchmark: low type truth-telling margin > 0", [](const auto& p) {
    const double v = check_benchmark(p).low;
    return expect(v > 0.0, "margin", v);
  });
  b.claim("benchmark: high type truth-telling margin > 0", [](const auto& p) {
    const double v = check_benchmark(p).high;
    return expect(v > 0.0, "margin", v);
  });
  b.claim("first best: low type gains by deviating when s = a", [](const auto& p) {
    const double v = check_first_best(p).agree;
    return expect(v > 0.0, "gain", v);
  });
  b.claim("first best: low type gains by deviating when s != a", [](const auto& p) {
    const double v = check_first_best(p).disagree;
    return expect(v > 0.0, "gain", v);
  });

  b.claim("G(0) > 0", [&](const auto& p) {
    const double v = advantage(0.0, p);
    return expect(v > 0.0, "G(0)", v);
  });
  b.claim("G(0) equals its closed form", [&](const auto& p) {
    const double v = advantage(0.0, p);
    const double c = follow_advantage_at_zero(p);
    return expect(std::abs(v - c) <= 1e-12, "G(0) - closed form", v - c);
  });
  b.claim("G(1) < 0", [&](const auto& p) {
    const double v = advantage(1.0, p);
    return expect(v < 0.0, "G(1)", v);
  });
  b.claim("G'(gamma) < 0 for gamma in {0, 0.25, 0.5, 0.75, 1}", [&](const auto& p) -> Failure {
    for (double g : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const double v = advantage_slope(g, p);
      if (!(v < 0.0)) return "G'(" + format_real(g) + ") = " + format_real(v);
    }
    return std::nullopt;
  });
  b.claim("G' matches finite differences (1e-6 relative)", [&](const auto& p) -> Failure {
    const auto f = [&](double g) { return advantage(g, p); };
    for (double g : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const double fd = finite_difference(f, g, 1e-6, 0.0, 1.0);
      const double cf = advantage_slope(g, p);
      if (!relative_close(fd, cf, 1e-6))
        return "at gamma=" + format_real(g) + " closed form " + format_real(cf) +
               " vs finite difference " + format_real(fd);
    }
    return std::nullopt;
  });
  b.claim("G changes sign exactly once on gamma step 0.001", [&](const auto& p) -> Failure {
    int changes = 0;
    double prev = advantage(0.0, p);
    for (int i = 1; i <= 1000; ++i) {
      const double cur = advantage(i / 1000.0, p);
      if ((prev > 0.0) != (cur > 0.0)) ++changes;
      prev = cur;
    }
    if (changes == 1) return std::nullopt;
    return "sign changes = " + std::to_string(changes);
  });

  b.claim("equilibrium gamma in (0, 1) with residual <= 1e-10", [&](const auto& p) -> Failure {
    const EquilibriumSolution s = solve_equilibrium(p, tol);
    if (!(s.gamma_star > 0.0 && s.gamma_star < 1.0))
      return "gamma = " + format_real(s.gamma_star);
    return expect(s.residual <= 1e-10, "residual", s.residual);
  });
  b.claim("accuracy identity: accuracy - (uL+uH)/2 = (alpha-uL) gamma/2 (1e-12)", [&](const auto& p) -> Failure {
    for (double g : {0.0, 0.3, 0.7, 1.0, solve_equilibrium(p, tol).gamma_star}) {
      const double lhs =
          forecast_accuracy(p, g) - 0.5 * (p.upsilon_low() + p.upsilon_high());
      const double rhs = 0.5 * (p.alpha() - p.upsilon_low()) * g;
      if (std::abs(lhs - rhs) > 1e-12)
        return "at gamma=" + format_real(g) + " difference " + format_real(lhs - rhs);
    }
    return std::nullopt;
  });
  b.claim("dgamma/dalpha > 0", [&](const auto& p) {
    const double v = dgamma_dalpha(p, solve_equilibrium(p, tol));
    return expect(v > 0.0, "dgamma/dalpha", v);
  });
  b.claim("dgamma/dalpha matches re-solved finite differences (1e-4 relative)", [&](const auto& p) -> Failure {
    const double ift = dgamma_dalpha(p, solve_equilibrium(p, tol));
    const double h = 1e-5;
    const auto at = [&](double alpha) {
      return solve_equilibrium(
                 ModelParams::create(p.upsilon_low(), p.upsilon_high(), alpha),
                 1e-15)
          .gamma_star;
    };
    const double fd = (at(p.alpha() + h) - at(p.alpha() - h)) / (2.0 * h);
    if (relative_close(ift, fd, 1e-4)) return std::nullopt;
    return "implicit " + format_real(ift) + " vs finite difference " + format_real(fd);
  });
  b.claim("accuracy ordering: first best >= equilibrium >= no-algorithm", [&](const auto& p) -> Failure {
    const double g = solve_equilibrium(p, tol).gamma_star;
    const double fb = forecast_accuracy(p, 1.0);
    const double eq = forecast_accuracy(p, g);
    const double none = forecast_accuracy(p, 0.0);
    if (fb > eq && eq >= none) return std::nullopt;
    return "accuracies " + format_real(fb) + ", " + format_real(eq) + ", " + format_real(none);
  });
  b.claim("workers beat the algorithm whenever (uL+uH)/2 > alpha", [&](const auto& p) -> Failure {
    if (!(0.5 * (p.upsilon_low() + p.upsilon_high()) > p.alpha())) return std::nullopt;
    for (double g : {0.0, 0.5, 1.0, solve_equilibrium(p, tol).gamma_star}) {
      const double acc = forecast_accuracy(p, g);
      if (!(acc > p.alpha()))
        return "accuracy " + format_real(acc) + " at gamma=" + format_real(g);
    }
    return std::nullopt;
  });
  b.claim("high type disagrees with the algorithm less as alpha rises", [](const auto& p) {
    const double slope = 0.5 - p.upsilon_high();
    const auto shifted = ModelParams::unconstrained(
        p.upsilon_low(), p.upsilon_high(), p.alpha() + 1e-6);
    const double diff = high_mismatch_prob(shifted) - high_mismatch_prob(p);
    return expect(slope < 0.0 && diff < 0.0, "change", diff);
  });

  // Appendix sign claims, aggregated by claim across the parameter set.
  {
    const std::vector<double> p_grid = unit_grid(0.01);
    std::vector<std::string> order;
    std::map<std::string, LedgerEntry> merged;
    for (const ModelParams& p : points) {
      const AppendixLedger appendix = appendix_sign_checks(p, p_grid);
      for (const AppendixCheck& c : appendix.checks) {
        auto [it, inserted] = merged.try_emplace(c.claim, LedgerEntry{"appendix: " + c.claim, true, ""});
        if (inserted) order.push_back(c.claim);
        if (!c.passed && it->second.passed) {
          it->second.passed = false;
          it->second.detail = "value " + format_real(c.value) +
                              (std::isnan(c.p) ? "" : " at p=" + format_real(c.p)) +
                              " at " + describe(p);
        }
      }
    }
    for (const std::string& claim : order) {
      LedgerEntry e = merged.at(claim);
      if (e.passed) e.detail = std::to_string(points.size()) + " point(s)";
      b.add(std::move(e));
    }
  }

  b.claim("equilibrium beliefs are informative", [&](const auto& p) {
    const double g = solve_equilibrium(p, tol).gamma_star;
    const BeliefTable t = manager_beliefs(StrategyProfile::informative(g), p);
    return expect(t.is_informative(), "gamma", g);
  });
  b.claim("gamma* below (uH-uL)/(1-uL), where the family stays informative", [&](const auto& p) {
    const double g = solve_equilibrium(p, tol).gamma_star;
    return expect(g < informativeness_threshold(p), "gamma - threshold",
                  g - informativeness_threshold(p));
  });
  b.claim("equilibrium has no profitable deviation (gain <= 1e-9)", [&](const auto& p) {
    const double g = solve_equilibrium(p, tol).gamma_star;
    const DeviationReport r = deviation_check(StrategyProfile::informative(g), p, 1e-9);
    return expect(r.passes(), "max gain", r.max_gain());
  });
  b.claim("high type strictly prefers its own signal in every cell", [&](const auto& p) -> Failure {
    const double g = solve_equilibrium(p, tol).gamma_star;
    const DeviationReport r = deviation_check(StrategyProfile::informative(g), p, 1e-9);
    for (PrivateSignal s : kSignals) {
      for (AlgoSignal a : kAlgoSignals) {
        const CellDeviation& c = r.cell(WorkerType::high, s, a);
        const double own = s == PrivateSignal::s1 ? c.payoff_m1 - c.payoff_m0
                                                  : c.payoff_m0 - c.payoff_m1;
        if (!(own > 0.0))
          return "margin " + format_real(own) + " at " + to_string(s) + "," + to_string(a);
      }
    }
    return std::nullopt;
  });
  b.claim("low type strictly prefers its own signal when it matches the algorithm", [&](const auto& p) -> Failure {
    const double g = solve_equilibrium(p, tol).gamma_star;
    const DeviationReport r = deviation_check(StrategyProfile::informative(g), p, 1e-9);
    for (PrivateSignal s : kSignals) {
      const AlgoSignal a = index(s) == 1 ? AlgoSignal::a1 : AlgoSignal::a0;
      const CellDeviation& c = r.cell(WorkerType::low, s, a);
      const double own = s == PrivateSignal::s1 ? c.payoff_m1 - c.payoff_m0
                                                : c.payoff_m0 - c.payoff_m1;
      if (!(own > 0.0)) return "margin " + format_real(own) + " at " + to_string(s);
    }
    return std::nullopt;
  });
  b.claim("low type indifferent when its signal disagrees (1e-10)", [&](const auto& p) -> Failure {
    const double g = solve_equilibrium(p, tol).gamma_star;
    const DeviationReport r = deviation_check(StrategyProfile::informative(g), p, 1e-9);
    for (PrivateSignal s : kSignals) {
      const AlgoSignal a = index(s) == 1 ? AlgoSignal::a0 : AlgoSignal::a1;
      const CellDeviation& c = r.cell(WorkerType::low, s, a);
      const double diff = c.payoff_m1 - c.payoff_m0;
      if (std::abs(diff) > 1e-10) return "payoff difference " + format_real(diff);
    }
    return std::nullopt;
  });

  std::optional<BruteForceResult> search;
  auto searched = [&](const ModelParams& p) -> const BruteForceResult& {
    if (!search) search = brute_force_search(p, options.brute_force_step);
    return *search;
  };
  b.single("grid search finds at least one informative equilibrium", params,
           [&](const auto& p) -> Failure {
    if (searched(p).profile_count() == 0) return std::string("no surviving profile");
    return std::nullopt;
  });
  b.single("grid search finds only the informative equilibrium (within grid step)", params,
           [&](const auto& p) -> Failure {
    const double step = options.brute_force_step;
    const StrategyProfile target =
        StrategyProfile::informative(solve_equilibrium(p, tol).gamma_star);
    const BruteForceResult& found = searched(p);
    auto check = [&](AlgoSignal a, const std::vector<std::array<double, 4>>& blocks) -> Failure {
      const std::array<double, 4> want = {
          target.report_m1(WorkerType::high, PrivateSignal::s0, a),
          target.report_m1(WorkerType::high, PrivateSignal::s1, a),
          target.report_m1(WorkerType::low, PrivateSignal::s0, a),
          target.report_m1(WorkerType::low, PrivateSignal::s1, a)};
      for (const auto& blk : blocks) {
        for (std::size_t i = 0; i < blk.size(); ++i) {
          if (std::abs(blk[i] - want[i]) > step + 1e-12)
            return std::to_string(found.a1_blocks.size()) + " a1 survivors; (" +
                   format_real(blk[0]) + ", " + format_real(blk[1]) + ", " +
                   format_real(blk[2]) + ", " + format_real(blk[3]) + ") at " +
                   to_string(a);
        }
      }
      return std::nullopt;
    };
    if (auto f = check(AlgoSignal::a1, found.a1_blocks)) return f;
    return check(AlgoSignal::a0, found.a0_blocks);
  });

  b.single("simulated accuracy within 3 standard errors", params, [&](const auto& p) {
    const double g = solve_equilibrium(p, tol).gamma_star;
    const SimulationReport r = monte_carlo(p, g, options.mc_draws, options.seed);
    const double analytic = forecast_accuracy(p, g);
    const double se = std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(r.n_draws));
    const double z = (r.empirical_accuracy - analytic) / se;
    return expect(std::abs(z) <= 3.0, "z", z);
  });
  b.single("simulated manager beliefs within 4 standard errors (cells >= 100 hits)", params,
           [&](const auto& p) -> Failure {
    const double g = solve_equilibrium(p, tol).gamma_star;
    const SimulationReport r = monte_carlo(p, g, options.mc_draws, options.seed);
    const BeliefTable t = manager_beliefs(StrategyProfile::informative(g), p);
    for (Message m : kMessages) {
      for (AlgoSignal a : kAlgoSignals) {
        for (State w : kStates) {
          const auto hits = r.belief_hits_at(m, a, w);
          if (!t.on_path(m, a) || hits < 100) continue;
          const double expect_b = t(m, a, w);
          const double se = std::sqrt(expect_b * (1.0 - expect_b) / static_cast<double>(hits));
          const double diff = r.belief_at(m, a, w) - expect_b;
          if (std::abs(diff) > 4.0 * se)
            return "cell " + to_string(m) + "," + to_string(a) + "," + to_string(w) +
                   " off by " + format_real(diff / se) + " SE";
        }
      }
    }
    return std::nullopt;
  });

  return b.finish();
}

}  // namespace aversion
