/*
 * Copyright 2026 The aversion authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the aversion library.
 *
 * Objects are opaque handles created by av_*_create / av_solve / av_simulate
 * / av_verify / av_brute_force and released with the matching *_destroy
 * function (passing NULL is allowed). Every fallible call returns an
 * av_status; on failure av_last_error() describes the problem. The message
 * is thread-local and valid until the next failing call on the same thread.
 *
 * Label arguments (m, a, omega, s, type) are 0 or 1: m0/m1, a0/a1, s0/s1,
 * omega0/omega1, low/high.
 */
#ifndef AVERSION_AVERSION_H
#define AVERSION_AVERSION_H

#include <stddef.h>
#include <stdint.h>

#if defined(AVERSION_BUILDING_LIBRARY)
#define AV_API __attribute__((visibility("default")))
#else
#define AV_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum av_status {
  AV_OK = 0,
  AV_ERR_INVALID_PARAMETER = 1,
  AV_ERR_INTERNAL_CONTRADICTION = 2,
  AV_ERR_EMPTY_REPORT = 3,
  AV_ERR_NULL_ARGUMENT = 4,
  AV_ERR_OUT_OF_RANGE = 5,
  AV_ERR_INTERNAL = 6
} av_status;

typedef struct av_params av_params;
typedef struct av_solution av_solution;
typedef struct av_sim_report av_sim_report;
typedef struct av_ledger av_ledger;
typedef struct av_profile_set av_profile_set;

AV_API const char* av_last_error(void);
AV_API const char* av_status_name(av_status status);
AV_API const char* av_version(void);

/* Writes value with 9 significant digits ("nan", "inf", "-inf" when not
 * finite) and a terminating NUL. Fails with AV_ERR_OUT_OF_RANGE when cap is
 * too small; *needed, if given, receives the required size. */
AV_API av_status av_format_real(double value, char* buf, size_t cap,
                                size_t* needed);

/* Parameters. av_params_create enforces 1/2 < uL < alpha < uH < 1 and names
 * the violated inequality in av_last_error(); av_params_create_unconstrained
 * only requires each value in (0, 1). */
AV_API av_status av_params_create(double upsilon_low, double upsilon_high,
                                  double alpha, av_params** out);
AV_API av_status av_params_create_unconstrained(double upsilon_low,
                                                double upsilon_high,
                                                double alpha, av_params** out);
AV_API void av_params_destroy(av_params* params);

/* Model algebra. */
AV_API av_status av_worker_posterior(const av_params* params, int s, int a,
                                     int type, double* out);
AV_API av_status av_joint_prob(const av_params* params, int type, int s,
                               int a, int omega, double* out);

/* Follow advantage G(gamma) of the low type at (s1, a0) and its slope. */
AV_API av_status av_follow_advantage(const av_params* params, double gamma,
                                     double* out);
AV_API av_status av_follow_advantage_slope(const av_params* params,
                                           double gamma, double* out);
AV_API av_status av_forecast_accuracy(const av_params* params, double gamma,
                                      double* out);

typedef struct av_feasibility {
  double benchmark_ic_low;
  double benchmark_ic_high;
  double firstbest_violation_agree;
  double firstbest_violation_disagree;
} av_feasibility;

AV_API av_status av_check_feasibility(const av_params* params,
                                      av_feasibility* out);

/* Equilibrium. tol <= 0 selects the default bracket width 1e-12. */
AV_API av_status av_solve(const av_params* params, double tol,
                          av_solution** out);
AV_API void av_solution_destroy(av_solution* solution);

typedef struct av_solution_summary {
  double gamma_star;
  double residual;
  double accuracy;
  double accuracy_margin;
  double adoption_value;
  double dgamma_dalpha;
  double margin_slope;
  double margin_slope_direct;
  double margin_slope_attenuation;
  double high_mismatch_prob;
  int iterations;
} av_solution_summary;

AV_API av_status av_solution_summary_get(const av_solution* solution,
                                         av_solution_summary* out);
AV_API av_status av_solution_belief(const av_solution* solution, int m, int a,
                                    int omega, double* out);

/* Monte Carlo. gamma outside [0, 1] is rejected. */
AV_API av_status av_simulate(const av_params* params, double gamma,
                             uint64_t n_draws, uint64_t seed,
                             av_sim_report** out);
AV_API void av_sim_report_destroy(av_sim_report* report);
AV_API av_status av_sim_report_accuracy(const av_sim_report* report,
                                        double* accuracy, double* se);
AV_API av_status av_sim_report_low_overrides(const av_sim_report* report,
                                             uint64_t* out);
/* NUL-terminated JSON document owned by the report. */
AV_API av_status av_sim_report_json(const av_sim_report* report,
                                    const char** out);

/* Verification ledger. grid is "point", "coarse" or "dense". */
typedef struct av_verify_options {
  const char* grid;
  double brute_force_step;
  uint64_t mc_draws;
  uint64_t seed;
  int flip_follow_advantage_sign;
} av_verify_options;

AV_API void av_verify_options_default(av_verify_options* options);
AV_API av_status av_verify(const av_params* params,
                           const av_verify_options* options, av_ledger** out);
AV_API void av_ledger_destroy(av_ledger* ledger);
AV_API size_t av_ledger_size(const av_ledger* ledger);
AV_API size_t av_ledger_points(const av_ledger* ledger);
AV_API int av_ledger_all_passed(const av_ledger* ledger);
/* Any of claim, passed and detail may be NULL. Strings are owned by the
 * ledger. */
AV_API av_status av_ledger_entry(const av_ledger* ledger, size_t i,
                                 const char** claim, int* passed,
                                 const char** detail);

/* Grid search over strategy profiles. Each profile is 8 probabilities of m1,
 * indexed type * 4 + s * 2 + a. */
AV_API av_status av_brute_force(const av_params* params, double grid_step,
                                av_profile_set** out);
AV_API void av_profile_set_destroy(av_profile_set* set);
AV_API size_t av_profile_set_size(const av_profile_set* set);
AV_API av_status av_profile_set_get(const av_profile_set* set, size_t i,
                                    double out[8]);

#ifdef __cplusplus
}
#endif

#endif /* AVERSION_AVERSION_H */
