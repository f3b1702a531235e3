// Copyright 2026 The aversion authors
// SPDX-License-Identifier: Apache-2.0

// Sampling the game forward: type, state, both signals, then the message.
//
// Random stream: draws are split into chunks of kChunkDraws. Chunk k uses a
// std::mt19937_64 seeded with splitmix64(seed ^ (k * 0x9E3779B97F4A7C15)).
// Uniforms take the top 53 bits of each output, u = (x >> 11) * 2^-53, and a
// Bernoulli(p) event is u < p. Every step is specified exactly by the C++
// standard or above, so a seed reproduces the same counts on any platform and
// for any number of threads.

#pragma once

#include <array>
#include <cstdint>

#include "aversion/model.hpp"

namespace aversion {

inline constexpr std::uint64_t kChunkDraws = 1U << 16;
inline constexpr std::uint64_t kDefaultSeed = 42;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of the generator owning chunk `chunk` of a run seeded with `seed`.
std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) noexcept;

struct SimulationReport {
  static constexpr std::size_t kJointCells = 32;
  static constexpr std::size_t kBeliefCells = 8;

  std::uint64_t n_draws = 0;
  std::uint64_t seed = 0;
  double gamma = 0.0;  ///< NaN when simulated from an arbitrary strategy
  double upsilon_low = 0.0;
  double upsilon_high = 0.0;
  double alpha = 0.0;

  /// Counts over (type, s, a, omega, m); see joint_index.
  std::array<std::uint64_t, kJointCells> counts{};
  std::array<double, kJointCells> empirical_joint{};
  std::array<double, kJointCells> joint_se{};

  /// Over (m, a, omega): draws landing in the cell and how many were high.
  std::array<std::uint64_t, kBeliefCells> belief_hits{};
  std::array<std::uint64_t, kBeliefCells> belief_high{};
  /// Fraction high; NaN for cells never visited.
  std::array<double, kBeliefCells> empirical_beliefs{};
  std::array<double, kBeliefCells> belief_se{};

  double empirical_accuracy = 0.0;  ///< fraction with m naming omega
  double accuracy_se = 0.0;

  /// Pr(s1 | type) per type (index by WorkerType), with standard errors.
  std::array<double, 2> empirical_pr_s1{};
  std::array<double, 2> pr_s1_se{};

  /// Low-type draws where the message differs from the algorithm signal.
  std::uint64_t low_overrides = 0;

  static constexpr std::size_t joint_index(WorkerType t, PrivateSignal s,
                                           AlgoSignal a, State w,
                                           Message m) noexcept {
    return index(t) * 16 + index(s) * 8 + index(a) * 4 + index(w) * 2 +
           index(m);
  }
  static constexpr std::size_t belief_index(Message m, AlgoSignal a,
                                            State w) noexcept {
    return index(m) * 4 + index(a) * 2 + index(w);
  }

  std::uint64_t belief_hits_at(Message m, AlgoSignal a, State w) const {
    return belief_hits[belief_index(m, a, w)];
  }
  double belief_at(Message m, AlgoSignal a, State w) const {
    return empirical_beliefs[belief_index(m, a, w)];
  }
};

/// Simulates n_draws plays of the game with the low type following the
/// algorithm with probability gamma when its signal disagrees with it.
/// Throws EmptyReport when n_draws is zero.
SimulationReport monte_carlo(const ModelParams& params, double gamma,
                             std::uint64_t n_draws, std::uint64_t seed);

/// Same, for an arbitrary strategy.
SimulationReport monte_carlo(const ModelParams& params,
                             const StrategyProfile& strategy,
                             std::uint64_t n_draws, std::uint64_t seed);

}  // namespace aversion
