// Copyright 2026 The aversion authors
// SPDX-License-Identifier: Apache-2.0

#include "aversion/aversion.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <string>

#include "aversion/equilibrium.hpp"
#include "aversion/error.hpp"
#include "aversion/format.hpp"
#include "aversion/model.hpp"
#include "aversion/monte_carlo.hpp"
#include "aversion/report_json.hpp"
#include "aversion/verifier.hpp"
#include "aversion/verify_suite.hpp"

struct av_params {
  aversion::ModelParams value;
};

struct av_solution {
  aversion::EquilibriumSolution solution;
  aversion::LaborQuantities labor;
};

struct av_sim_report {
  aversion::SimulationReport report;
  std::string json;
};

struct av_ledger {
  aversion::VerifyLedger ledger;
};

struct av_profile_set {
  aversion::BruteForceResult result;
};

namespace {

thread_local std::string last_error;

av_status fail(av_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Maps exceptions thrown by the core onto status codes.
template <class Fn>
av_status guarded(Fn&& fn) {
  try {
    fn();
    return AV_OK;
  } catch (const aversion::InvalidParameter& e) {
    return fail(AV_ERR_INVALID_PARAMETER, e.what());
  } catch (const aversion::InternalContradiction& e) {
    return fail(AV_ERR_INTERNAL_CONTRADICTION, e.what());
  } catch (const aversion::EmptyReport& e) {
    return fail(AV_ERR_EMPTY_REPORT, e.what());
  } catch (const std::exception& e) {
    return fail(AV_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(AV_ERR_INTERNAL, "unknown error");
  }
}

bool is_label(int v) { return v == 0 || v == 1; }

template <aversion::BinaryLabel E>
E label(int v) {
  return aversion::from_index<E>(static_cast<std::size_t>(v));
}

}  // namespace

extern "C" {

const char* av_last_error(void) { return last_error.c_str(); }

const char* av_status_name(av_status status) {
  switch (status) {
    case AV_OK: return "ok";
    case AV_ERR_INVALID_PARAMETER: return "invalid parameter";
    case AV_ERR_INTERNAL_CONTRADICTION: return "internal contradiction";
    case AV_ERR_EMPTY_REPORT: return "empty report";
    case AV_ERR_NULL_ARGUMENT: return "null argument";
    case AV_ERR_OUT_OF_RANGE: return "out of range";
    case AV_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* av_version(void) { return "0.1.0"; }

av_status av_format_real(double value, char* buf, size_t cap,
                         size_t* needed) {
  const std::string text = aversion::format_real(value);
  if (needed) *needed = text.size() + 1;
  if (!buf) return fail(AV_ERR_NULL_ARGUMENT, "buf is null");
  if (cap < text.size() + 1)
    return fail(AV_ERR_OUT_OF_RANGE, "buffer too small");
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return AV_OK;
}

av_status av_params_create(double upsilon_low, double upsilon_high,
                           double alpha, av_params** out) {
  if (!out) return fail(AV_ERR_NULL_ARGUMENT, "out is null");
  *out = nullptr;
  return guarded([&] {
    *out = new av_params{
        aversion::ModelParams::create(upsilon_low, upsilon_high, alpha)};
  });
}

av_status av_params_create_unconstrained(double upsilon_low,
                                         double upsilon_high, double alpha,
                                         av_params** out) {
  if (!out) return fail(AV_ERR_NULL_ARGUMENT, "out is null");
  *out = nullptr;
  return guarded([&] {
    *out = new av_params{
        aversion::ModelParams::unconstrained(upsilon_low, upsilon_high, alpha)};
  });
}

void av_params_destroy(av_params* params) { delete params; }

av_status av_worker_posterior(const av_params* params, int s, int a, int type,
                              double* out) {
  if (!params || !out) return fail(AV_ERR_NULL_ARGUMENT, "null argument");
  if (!is_label(s) || !is_label(a) || !is_label(type))
    return fail(AV_ERR_OUT_OF_RANGE, "labels must be 0 or 1");
  return guarded([&] {
    using namespace aversion;
    *out = worker_posterior(label<PrivateSignal>(s), label<AlgoSignal>(a),
                            label<WorkerType>(type), params->value);
  });
}

av_status av_joint_prob(const av_params* params, int type, int s, int a,
                        int omega, double* out) {
  if (!params || !out) return fail(AV_ERR_NULL_ARGUMENT, "null argument");
  if (!is_label(s) || !is_label(a) || !is_label(type) || !is_label(omega))
    return fail(AV_ERR_OUT_OF_RANGE, "labels must be 0 or 1");
  return guarded([&] {
    using namespace aversion;
    *out = joint_prob(label<WorkerType>(type), label<PrivateSignal>(s),
                      label<AlgoSignal>(a), label<State>(omega), params->value);
  });
}

av_status av_follow_advantage(const av_params* params, double gamma,
                              double* out) {
  if (!params || !out) return fail(AV_ERR_NULL_ARGUMENT, "null argument");
  return guarded(
      [&] { *out = aversion::follow_advantage(gamma, params->value); });
}

av_status av_follow_advantage_slope(const av_params* params, double gamma,
                                    double* out) {
  if (!params || !out) return fail(AV_ERR_NULL_ARGUMENT, "null argument");
  return guarded(
      [&] { *out = aversion::follow_advantage_slope(gamma, params->value); });
}

av_status av_forecast_accuracy(const av_params* params, double gamma,
                               double* out) {
  if (!params || !out) return fail(AV_ERR_NULL_ARGUMENT, "null argument");
  return guarded(
      [&] { *out = aversion::forecast_accuracy(params->value, gamma); });
}

av_status av_check_feasibility(const av_params* params, av_feasibility* out) {
  if (!params || !out) return fail(AV_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    const auto r = aversion::check_feasibility(params->value);
    *out = {r.benchmark_ic_low, r.benchmark_ic_high,
            r.firstbest_violation_agree, r.firstbest_violation_disagree};
  });
}

av_status av_solve(const av_params* params, double tol, av_solution** out) {
  if (!params || !out) return fail(AV_ERR_NULL_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const double t = tol > 0.0 ? tol : aversion::kDefaultSolverTolerance;
    auto solution = aversion::solve_equilibrium(params->value, t);
    auto labor = aversion::labor_quantities(params->value, solution);
    *out = new av_solution{std::move(solution), labor};
  });
}

void av_solution_destroy(av_solution* solution) { delete solution; }

av_status av_solution_summary_get(const av_solution* solution,
                                  av_solution_summary* out) {
  if (!solution || !out) return fail(AV_ERR_NULL_ARGUMENT, "null argument");
  const auto& s = solution->solution;
  const auto& l = solution->labor;
  *out = {s.gamma_star,
          s.residual,
          s.accuracy,
          s.accuracy_margin,
          s.adoption_value,
          l.dgamma_dalpha,
          l.margin_slope,
          l.margin_slope_direct,
          l.margin_slope_attenuation,
          l.high_mismatch_prob,
          s.iterations};
  return AV_OK;
}

av_status av_solution_belief(const av_solution* solution, int m, int a,
                             int omega, double* out) {
  if (!solution || !out) return fail(AV_ERR_NULL_ARGUMENT, "null argument");
  if (!is_label(m) || !is_label(a) || !is_label(omega))
    return fail(AV_ERR_OUT_OF_RANGE, "labels must be 0 or 1");
  using namespace aversion;
  *out = solution->solution.beliefs(label<Message>(m), label<AlgoSignal>(a),
                                    label<State>(omega));
  return AV_OK;
}

av_status av_simulate(const av_params* params, double gamma, uint64_t n_draws,
                      uint64_t seed, av_sim_report** out) {
  if (!params || !out) return fail(AV_ERR_NULL_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto report = aversion::monte_carlo(params->value, gamma, n_draws, seed);
    std::string json = aversion::simulation_report_json(report);
    *out = new av_sim_report{std::move(report), std::move(json)};
  });
}

void av_sim_report_destroy(av_sim_report* report) { delete report; }

av_status av_sim_report_accuracy(const av_sim_report* report, double* accuracy,
                                 double* se) {
  if (!report || !accuracy || !se)
    return fail(AV_ERR_NULL_ARGUMENT, "null argument");
  *accuracy = report->report.empirical_accuracy;
  *se = report->report.accuracy_se;
  return AV_OK;
}

av_status av_sim_report_low_overrides(const av_sim_report* report,
                                      uint64_t* out) {
  if (!report || !out) return fail(AV_ERR_NULL_ARGUMENT, "null argument");
  *out = report->report.low_overrides;
  return AV_OK;
}

av_status av_sim_report_json(const av_sim_report* report, const char** out) {
  if (!report || !out) return fail(AV_ERR_NULL_ARGUMENT, "null argument");
  *out = report->json.c_str();
  return AV_OK;
}

void av_verify_options_default(av_verify_options* options) {
  if (!options) return;
  const aversion::VerifyOptions d;
  *options = {"point", d.brute_force_step, d.mc_draws, d.seed, 0};
}

av_status av_verify(const av_params* params, const av_verify_options* options,
                    av_ledger** out) {
  if (!params || !out) return fail(AV_ERR_NULL_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    aversion::VerifyOptions opts;
    if (options) {
      if (options->grid)
        opts.grid = aversion::parse_grid_density(options->grid);
      if (options->brute_force_step > 0.0)
        opts.brute_force_step = options->brute_force_step;
      if (options->mc_draws > 0) opts.mc_draws = options->mc_draws;
      opts.seed = options->seed;
      opts.flip_follow_advantage_sign = options->flip_follow_advantage_sign != 0;
    }
    *out = new av_ledger{aversion::run_verification(params->value, opts)};
  });
}

void av_ledger_destroy(av_ledger* ledger) { delete ledger; }

size_t av_ledger_size(const av_ledger* ledger) {
  return ledger ? ledger->ledger.entries.size() : 0;
}

size_t av_ledger_points(const av_ledger* ledger) {
  return ledger ? ledger->ledger.points : 0;
}

int av_ledger_all_passed(const av_ledger* ledger) {
  return ledger && ledger->ledger.all_passed() ? 1 : 0;
}

av_status av_ledger_entry(const av_ledger* ledger, size_t i,
                          const char** claim, int* passed,
                          const char** detail) {
  if (!ledger) return fail(AV_ERR_NULL_ARGUMENT, "null argument");
  if (i >= ledger->ledger.entries.size())
    return fail(AV_ERR_OUT_OF_RANGE, "ledger index out of range");
  const auto& e = ledger->ledger.entries[i];
  if (claim) *claim = e.claim.c_str();
  if (passed) *passed = e.passed ? 1 : 0;
  if (detail) *detail = e.detail.c_str();
  return AV_OK;
}

av_status av_brute_force(const av_params* params, double grid_step,
                         av_profile_set** out) {
  if (!params || !out) return fail(AV_ERR_NULL_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new av_profile_set{
        aversion::brute_force_search(params->value, grid_step)};
  });
}

void av_profile_set_destroy(av_profile_set* set) { delete set; }

size_t av_profile_set_size(const av_profile_set* set) {
  return set ? set->result.profile_count() : 0;
}

av_status av_profile_set_get(const av_profile_set* set, size_t i,
                             double out[8]) {
  if (!set || !out) return fail(AV_ERR_NULL_ARGUMENT, "null argument");
  if (i >= set->result.profile_count())
    return fail(AV_ERR_OUT_OF_RANGE, "profile index out of range");
  const auto e = set->result.profile(i).entries();
  for (std::size_t k = 0; k < e.size(); ++k) out[k] = e[k];
  return AV_OK;
}

}  // extern "C"
