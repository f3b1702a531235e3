// Copyright 2026 The aversion authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "aversion/error.hpp"
#include "aversion/verifier.hpp"
#include "parallel.hpp"

namespace aversion {

namespace {

int grid_divisions(double grid_step) {
  if (!(grid_step > 0.0 && grid_step <= 1.0))
    throw InvalidParameter("grid step must lie in (0, 1]");
  const double n = std::round(1.0 / grid_step);
  if (std::abs(n * grid_step - 1.0) > 1e-9)
    throw InvalidParameter("1 / grid step must be an integer");
  return static_cast<int>(n);
}

// Relative mass of m1 sent by one type under each state, given its
// probabilities of m1 after s0 and s1. Pr(a | omega) and the priors are
// common to both types and cancel from the beliefs.
struct TypeMass {
  double w1;
  double w0;
};

TypeMass type_mass(double precision, double x_s0, double x_s1) {
  return {precision * x_s1 + (1.0 - precision) * x_s0,
          (1.0 - precision) * x_s1 + precision * x_s0};
}

struct CellTest {
  double posterior_w1;

  // Deviation test of deviation_check for one cell.
  bool passes(double x_m1, double b1w1, double b1w0, double b0w1, double b0w0,
              double tol) const {
    const double diff = posterior_w1 * (b1w1 - b0w1) +
                        (1.0 - posterior_w1) * (b1w0 - b0w0);
    const double gain = diff >= 0.0 ? (1.0 - x_m1) * diff : x_m1 * -diff;
    if (gain > tol) return false;
    return !(x_m1 > 0.0 && x_m1 < 1.0 && std::abs(diff) > tol);
  }
};

std::vector<std::array<double, 4>> scan_block(const ModelParams& params,
                                              AlgoSignal a, double grid_step,
                                              std::uint64_t* scanned) {
  const int n = grid_divisions(grid_step);
  const double uh = params.upsilon_high();
  const double ul = params.upsilon_low();
  const double off_path = OffPathRule{}.belief;
  auto cell = [&](PrivateSignal s, WorkerType t) {
    return CellTest{worker_posterior(s, a, t, params)};
  };
  const CellTest high_s0 = cell(PrivateSignal::s0, WorkerType::high);
  const CellTest high_s1 = cell(PrivateSignal::s1, WorkerType::high);
  const CellTest low_s0 = cell(PrivateSignal::s0, WorkerType::low);
  const CellTest low_s1 = cell(PrivateSignal::s1, WorkerType::low);

  const auto grid = [n](int i) { return static_cast<double>(i) / n; };
  const std::size_t side = static_cast<std::size_t>(n) + 1;

  std::vector<std::vector<std::array<double, 4>>> per_high(side * side);
  detail::parallel_for(side * side, [&](std::size_t hi) {
    const double hx0 = grid(static_cast<int>(hi / side));
    const double hx1 = grid(static_cast<int>(hi % side));
    const TypeMass h = type_mass(uh, hx0, hx1);
    for (int i0 = 0; i0 <= n; ++i0) {
      const double lx0 = grid(i0);
      // Informative beliefs need the low type's m1 mass below the high
      // type's under w1 and above it under w0. Both are linear in the low
      // type's s1 entry, which bounds it to an interval.
      const double upper = (h.w1 - (1.0 - ul) * lx0) / ul;
      const double lower = (h.w0 - ul * lx0) / (1.0 - ul);
      const int first = std::max(0, static_cast<int>(std::floor(lower * n)));
      const int last = std::min(n, static_cast<int>(std::ceil(upper * n)));
      for (int i1 = first; i1 <= last; ++i1) {
        const double lx1 = grid(i1);
        const TypeMass l = type_mass(ul, lx0, lx1);
        if (!(h.w1 > l.w1 && h.w0 < l.w0)) continue;

        const double n1w1 = h.w1 + l.w1;
        const double n1w0 = h.w0 + l.w0;
        const double n0w1 = 2.0 - n1w1;
        const double n0w0 = 2.0 - n1w0;
        const double b1w1 = n1w1 > 0.0 ? h.w1 / n1w1 : off_path;
        const double b1w0 = n1w0 > 0.0 ? h.w0 / n1w0 : off_path;
        const double b0w1 = n0w1 > 0.0 ? (1.0 - h.w1) / n0w1 : off_path;
        const double b0w0 = n0w0 > 0.0 ? (1.0 - h.w0) / n0w0 : off_path;
        if (!(b1w1 - b0w1 > kInformativeMargin &&
              b0w0 - b1w0 > kInformativeMargin))
          continue;

        const double tol =
            kGridToleranceFactor * grid_step *
            std::max(std::abs(b1w1 - b0w1), std::abs(b1w0 - b0w0));
        if (!low_s0.passes(lx0, b1w1, b1w0, b0w1, b0w0, tol)) continue;
        if (!low_s1.passes(lx1, b1w1, b1w0, b0w1, b0w0, tol)) continue;
        if (!high_s0.passes(hx0, b1w1, b1w0, b0w1, b0w0, tol)) continue;
        if (!high_s1.passes(hx1, b1w1, b1w0, b0w1, b0w0, tol)) continue;
        per_high[hi].push_back({hx0, hx1, lx0, lx1});
      }
    }
  });

  std::vector<std::array<double, 4>> out;
  for (auto& chunk : per_high) out.insert(out.end(), chunk.begin(), chunk.end());
  if (scanned) *scanned = static_cast<std::uint64_t>(side * side) * side * side;
  return out;
}

// a0 cells (high s0, high s1, low s0, low s1) that are the label-flipped
// image of an a1 block.
std::array<double, 4> flip_block(const std::array<double, 4>& a1) {
  return {1.0 - a1[1], 1.0 - a1[0], 1.0 - a1[3], 1.0 - a1[2]};
}

void assign_block(StrategyProfile& profile, AlgoSignal a,
                  const std::array<double, 4>& block) {
  profile.set_report_m1(WorkerType::high, PrivateSignal::s0, a, block[0]);
  profile.set_report_m1(WorkerType::high, PrivateSignal::s1, a, block[1]);
  profile.set_report_m1(WorkerType::low, PrivateSignal::s0, a, block[2]);
  profile.set_report_m1(WorkerType::low, PrivateSignal::s1, a, block[3]);
}

}  // namespace

StrategyProfile BruteForceResult::profile(std::size_t i) const {
  if (i >= profile_count())
    throw InvalidParameter("profile index out of range");
  StrategyProfile out;
  assign_block(out, AlgoSignal::a1, a1_blocks[i / a0_blocks.size()]);
  assign_block(out, AlgoSignal::a0, a0_blocks[i % a0_blocks.size()]);
  return out;
}

BruteForceResult brute_force_search(const ModelParams& params,
                                    double grid_step) {
  BruteForceResult result;
  result.grid_step = grid_step;
  result.a1_blocks =
      scan_block(params, AlgoSignal::a1, grid_step, &result.scanned);
  result.a0_blocks.reserve(result.a1_blocks.size());
  for (const auto& b : result.a1_blocks)
    result.a0_blocks.push_back(flip_block(b));
  std::sort(result.a0_blocks.begin(), result.a0_blocks.end());
  return result;
}

std::vector<std::array<double, 4>> brute_force_a0_blocks(
    const ModelParams& params, double grid_step) {
  return scan_block(params, AlgoSignal::a0, grid_step, nullptr);
}

}  // namespace aversion
