// Copyright 2026 The aversion authors
// SPDX-License-Identifier: Apache-2.0

// One-shot verification run: every analytic claim checked over a parameter
// set, with one ledger line per claim.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aversion/model.hpp"
#include "aversion/monte_carlo.hpp"
#include "aversion/verifier.hpp"

namespace aversion {

enum class GridDensity : std::uint8_t {
  point,   ///< only the given parameters
  coarse,  ///< given parameters plus coarse_grid_spec()
  dense,   ///< given parameters plus dense_grid_spec()
};

struct VerifyOptions {
  GridDensity grid = GridDensity::point;
  double brute_force_step = kDefaultGridStep;
  std::uint64_t mc_draws = 200000;
  std::uint64_t seed = kDefaultSeed;
  double solver_tol = 1e-12;
  /// Self-test hook: negates the follow advantage seen by the bracket and
  /// slope checks, which must then fail.
  bool flip_follow_advantage_sign = false;
};

struct LedgerEntry {
  std::string claim;
  bool passed = false;
  std::string detail;  ///< offending point or summary
};

struct VerifyLedger {
  std::vector<LedgerEntry> entries;
  std::size_t points = 0;

  bool all_passed() const;
};

VerifyLedger run_verification(const ModelParams& params,
                              const VerifyOptions& options);

GridDensity parse_grid_density(const std::string& name);

}  // namespace aversion
