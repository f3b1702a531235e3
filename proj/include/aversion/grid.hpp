// Copyright 2026 The aversion authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "aversion/model.hpp"

namespace aversion {

/// Deterministic grid over the admissible box. upsilon_L runs from low_start
/// to low_stop in `step`, upsilon_H from upsilon_L + step up to high_max in
/// `step`, and alpha takes alpha_points equally spaced interior values of
/// (upsilon_L, upsilon_H).
struct GridSpec {
  double low_start = 0.51;
  double low_stop = 0.95;
  double step = 0.04;
  double high_max = 0.99;
  int alpha_points = 13;
};

/// 1014 points with the defaults.
GridSpec dense_grid_spec();
/// About a hundred points.
GridSpec coarse_grid_spec();

std::vector<ModelParams> admissible_grid(const GridSpec& layout = dense_grid_spec());

}  // namespace aversion
