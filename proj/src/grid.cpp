// Copyright 2026 The aversion authors
// SPDX-License-Identifier: Apache-2.0

#include "aversion/grid.hpp"

#include <cmath>

#include "aversion/error.hpp"

namespace aversion {

GridSpec dense_grid_spec() { return {}; }

GridSpec coarse_grid_spec() {
  GridSpec layout;
  layout.step = 0.08;
  layout.alpha_points = 5;
  return layout;
}

std::vector<ModelParams> admissible_grid(const GridSpec& layout) {
  if (!(layout.step > 0.0) || layout.alpha_points < 1)
    throw InvalidParameter("grid needs a positive step and alpha count");
  constexpr double kSlack = 1e-9;
  std::vector<ModelParams> out;
  // Integer counters keep the enumeration free of accumulated rounding.
  for (int i = 0;; ++i) {
    const double vl = layout.low_start + i * layout.step;
    if (vl > layout.low_stop + kSlack) break;
    for (int j = 1;; ++j) {
      const double vh = vl + j * layout.step;
      if (vh > layout.high_max + kSlack) break;
      for (int k = 1; k <= layout.alpha_points; ++k) {
        const double alpha = vl + (vh - vl) * k / (layout.alpha_points + 1);
        out.push_back(ModelParams::create(vl, vh, alpha));
      }
    }
  }
  return out;
}

}  // namespace aversion
