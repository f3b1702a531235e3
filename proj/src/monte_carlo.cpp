// Copyright 2026 The aversion authors
// SPDX-License-Identifier: Apache-2.0

#include "aversion/monte_carlo.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "aversion/error.hpp"
#include "parallel.hpp"

namespace aversion {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) noexcept {
  return splitmix64(seed ^ (chunk * 0x9E3779B97F4A7C15ULL));
}

namespace {

using Counts = std::array<std::uint64_t, SimulationReport::kJointCells>;

class UnitStream {
 public:
  explicit UnitStream(std::uint64_t seed) : engine_(seed) {}

  bool bernoulli(double p) {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p;
  }

 private:
  std::mt19937_64 engine_;
};

Counts simulate_chunk(const ModelParams& params,
                      const StrategyProfile& strategy, std::uint64_t draws,
                      std::uint64_t seed) {
  Counts counts{};
  UnitStream rng(seed);
  for (std::uint64_t i = 0; i < draws; ++i) {
    const auto type = rng.bernoulli(params.prior_high()) ? WorkerType::high
                                                         : WorkerType::low;
    const auto state =
        rng.bernoulli(params.prior_state1()) ? State::omega1 : State::omega0;
    const auto s = rng.bernoulli(signal_likelihood(type, state, params))
                       ? PrivateSignal::s1
                       : PrivateSignal::s0;
    const auto a = rng.bernoulli(algo_signal_prob(AlgoSignal::a1, state, params))
                       ? AlgoSignal::a1
                       : AlgoSignal::a0;
    const auto m = rng.bernoulli(strategy.report_m1(type, s, a)) ? Message::m1
                                                                 : Message::m0;
    ++counts[SimulationReport::joint_index(type, s, a, state, m)];
  }
  return counts;
}

double binomial_se(double p, double n) {
  return n > 0.0 ? std::sqrt(p * (1.0 - p) / n)
                 : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

SimulationReport monte_carlo(const ModelParams& params, double gamma,
                             std::uint64_t n_draws, std::uint64_t seed) {
  SimulationReport r =
      monte_carlo(params, StrategyProfile::informative(gamma), n_draws, seed);
  r.gamma = gamma;
  return r;
}

SimulationReport monte_carlo(const ModelParams& params,
                             const StrategyProfile& strategy,
                             std::uint64_t n_draws, std::uint64_t seed) {
  if (n_draws == 0) throw EmptyReport("n_draws must be at least 1");

  const std::uint64_t chunks = (n_draws + kChunkDraws - 1) / kChunkDraws;
  std::vector<Counts> partial(chunks);
  detail::parallel_for(chunks, [&](std::size_t k) {
    const std::uint64_t begin = k * kChunkDraws;
    const std::uint64_t draws = std::min(kChunkDraws, n_draws - begin);
    partial[k] = simulate_chunk(params, strategy, draws, chunk_seed(seed, k));
  });

  SimulationReport r;
  r.n_draws = n_draws;
  r.seed = seed;
  r.gamma = std::numeric_limits<double>::quiet_NaN();
  r.upsilon_low = params.upsilon_low();
  r.upsilon_high = params.upsilon_high();
  r.alpha = params.alpha();
  for (const Counts& c : partial)
    for (std::size_t i = 0; i < c.size(); ++i) r.counts[i] += c[i];

  const auto n = static_cast<double>(n_draws);
  std::uint64_t correct = 0;
  std::array<std::uint64_t, 2> type_total{};
  std::array<std::uint64_t, 2> type_s1{};
  for (WorkerType t : kTypes) {
    for (PrivateSignal s : kSignals) {
      for (AlgoSignal a : kAlgoSignals) {
        for (State w : kStates) {
          for (Message m : kMessages) {
            const std::size_t i = SimulationReport::joint_index(t, s, a, w, m);
            const std::uint64_t c = r.counts[i];
            r.empirical_joint[i] = static_cast<double>(c) / n;
            r.joint_se[i] = binomial_se(r.empirical_joint[i], n);

            const std::size_t b = SimulationReport::belief_index(m, a, w);
            r.belief_hits[b] += c;
            if (t == WorkerType::high) r.belief_high[b] += c;

            if (index(m) == index(w)) correct += c;
            type_total[index(t)] += c;
            if (s == PrivateSignal::s1) type_s1[index(t)] += c;
            if (t == WorkerType::low && index(m) != index(a))
              r.low_overrides += c;
          }
        }
      }
    }
  }

  for (std::size_t b = 0; b < SimulationReport::kBeliefCells; ++b) {
    const auto hits = static_cast<double>(r.belief_hits[b]);
    r.empirical_beliefs[b] =
        hits > 0.0 ? static_cast<double>(r.belief_high[b]) / hits
                   : std::numeric_limits<double>::quiet_NaN();
    r.belief_se[b] = binomial_se(r.empirical_beliefs[b], hits);
  }

  r.empirical_accuracy = static_cast<double>(correct) / n;
  r.accuracy_se = binomial_se(r.empirical_accuracy, n);
  for (WorkerType t : kTypes) {
    const auto total = static_cast<double>(type_total[index(t)]);
    const double p = total > 0.0 ? static_cast<double>(type_s1[index(t)]) / total
                                 : std::numeric_limits<double>::quiet_NaN();
    r.empirical_pr_s1[index(t)] = p;
    r.pr_s1_se[index(t)] = binomial_se(p, total);
  }
  return r;
}

}  // namespace aversion
