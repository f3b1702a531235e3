// Copyright 2026 The aversion authors
// SPDX-License-Identifier: Apache-2.0

// Domain types and Bayesian algebra for the reputational forecasting game.
//
// A worker of unknown skill sees a private signal s and an algorithm signal a,
// both noisy readings of a binary state. It sends a costless message m and is
// paid the manager's posterior that the worker is high-skill, formed after the state
// is revealed. Everything here is a pure function of its arguments.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>

namespace aversion {

enum class State : std::uint8_t { omega0 = 0, omega1 = 1 };
enum class PrivateSignal : std::uint8_t { s0 = 0, s1 = 1 };
enum class AlgoSignal : std::uint8_t { a0 = 0, a1 = 1 };
enum class Message : std::uint8_t { m0 = 0, m1 = 1 };
enum class WorkerType : std::uint8_t { low = 0, high = 1 };

template <class E>
concept BinaryLabel =
    std::is_same_v<E, State> || std::is_same_v<E, PrivateSignal> ||
    std::is_same_v<E, AlgoSignal> || std::is_same_v<E, Message> ||
    std::is_same_v<E, WorkerType>;

template <BinaryLabel E>
constexpr std::size_t index(E e) noexcept {
  return static_cast<std::size_t>(e);
}

template <BinaryLabel E>
constexpr E from_index(std::size_t i) noexcept {
  return static_cast<E>(i & 1U);
}

/// The 0 <-> 1 involution. Worker types are not labels of the state and are
/// left alone by the symmetry, but flipping them is still well defined.
template <BinaryLabel E>
constexpr E flip(E e) noexcept {
  return static_cast<E>(1U - index(e));
}

inline constexpr std::array<State, 2> kStates{State::omega0, State::omega1};
inline constexpr std::array<PrivateSignal, 2> kSignals{PrivateSignal::s0,
                                                       PrivateSignal::s1};
inline constexpr std::array<AlgoSignal, 2> kAlgoSignals{AlgoSignal::a0,
                                                        AlgoSignal::a1};
inline constexpr std::array<Message, 2> kMessages{Message::m0, Message::m1};
inline constexpr std::array<WorkerType, 2> kTypes{WorkerType::low,
                                                  WorkerType::high};

/// The message that names the same state as a signal.
constexpr Message message_for(PrivateSignal s) noexcept {
  return static_cast<Message>(index(s));
}
constexpr Message message_for(AlgoSignal a) noexcept {
  return static_cast<Message>(index(a));
}
constexpr State state_for(Message m) noexcept {
  return static_cast<State>(index(m));
}

std::string to_string(State v);
std::string to_string(PrivateSignal v);
std::string to_string(AlgoSignal v);
std::string to_string(Message v);
std::string to_string(WorkerType v);

/// Belief gaps this small are rounding, not information.
inline constexpr double kInformativeMargin = 1e-12;

/// Signal precisions of the two worker types and of the algorithm. Priors on
/// the worker type and on the state are both fixed at one half.
class ModelParams {
 public:
  /// Admissible for the equilibrium solver: 1/2 < upsilon_L < alpha <
  /// upsilon_H < 1. Throws InvalidParameter naming the violated inequality.
  static ModelParams create(double upsilon_low, double upsilon_high,
                            double alpha);

  /// Only requires each precision to lie in the open unit interval. Used to
  /// probe the posterior algebra outside the solver's box.
  static ModelParams unconstrained(double upsilon_low, double upsilon_high,
                                   double alpha);

  double upsilon_low() const noexcept { return upsilon_low_; }
  double upsilon_high() const noexcept { return upsilon_high_; }
  double alpha() const noexcept { return alpha_; }
  double precision(WorkerType type) const noexcept {
    return type == WorkerType::high ? upsilon_high_ : upsilon_low_;
  }

  static constexpr double prior_high() noexcept { return 0.5; }
  static constexpr double prior_state1() noexcept { return 0.5; }

  /// First violated inequality of 1/2 < upsilon_L < alpha < upsilon_H < 1.
  std::optional<std::string> ordering_violation() const;
  bool satisfies_ordering() const { return !ordering_violation(); }
  void require_ordering() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  ModelParams(double upsilon_low, double upsilon_high, double alpha) noexcept
      : upsilon_low_(upsilon_low), upsilon_high_(upsilon_high), alpha_(alpha) {}

  double upsilon_low_;
  double upsilon_high_;
  double alpha_;
};

/// Probability of sending m1 in every (type, private signal, algorithm
/// signal) information cell.
class StrategyProfile {
 public:
  static constexpr std::size_t kCells = 8;

  /// All cells report m0 with certainty.
  StrategyProfile() = default;

  /// High type reports its signal; low type reports its signal when it agrees
  /// with the algorithm and follows the algorithm with probability
  /// follow_prob when it does not.
  static StrategyProfile informative(double follow_prob);

  /// Low type always follows the algorithm, high type always its signal.
  static StrategyProfile first_best() { return informative(1.0); }

  /// Every cell sends m1 with the same probability.
  static StrategyProfile uniform(double report_m1);

  double report_m1(WorkerType type, PrivateSignal s, AlgoSignal a) const {
    return report_m1_[cell_index(type, s, a)];
  }
  double report_prob(Message m, WorkerType type, PrivateSignal s,
                     AlgoSignal a) const {
    const double p = report_m1(type, s, a);
    return m == Message::m1 ? p : 1.0 - p;
  }

  /// Throws InvalidParameter unless p is in [0, 1].
  void set_report_m1(WorkerType type, PrivateSignal s, AlgoSignal a, double p);

  /// Image under the simultaneous relabeling of signals, states and messages.
  StrategyProfile flipped() const;

  const std::array<double, kCells>& entries() const noexcept {
    return report_m1_;
  }

  static constexpr std::size_t cell_index(WorkerType type, PrivateSignal s,
                                          AlgoSignal a) noexcept {
    return index(type) * 4 + index(s) * 2 + index(a);
  }

  friend bool operator==(const StrategyProfile&,
                         const StrategyProfile&) = default;

 private:
  std::array<double, kCells> report_m1_{};
};

/// Beliefs for (message, algorithm signal) cells that the strategy never
/// reaches. Bayes' rule says nothing there.
struct OffPathRule {
  double belief = ModelParams::prior_high();
};

/// Manager posterior that the worker is high-skill after seeing (m, a, omega).
class BeliefTable {
 public:
  BeliefTable() { theta_hat_.fill(ModelParams::prior_high()); on_path_.fill(true); }

  double operator()(Message m, AlgoSignal a, State w) const {
    return theta_hat_[slot(m, a, w)];
  }
  bool on_path(Message m, AlgoSignal a) const {
    return on_path_[index(m) * 2 + index(a)];
  }
  double off_path_belief() const noexcept { return off_path_belief_; }

  void set(Message m, AlgoSignal a, State w, double belief) {
    theta_hat_[slot(m, a, w)] = belief;
  }
  void set_on_path(Message m, AlgoSignal a, bool reached) {
    on_path_[index(m) * 2 + index(a)] = reached;
  }
  void set_off_path_belief(double belief) noexcept {
    off_path_belief_ = belief;
  }

  /// A correct forecast strictly raises the posterior for both algorithm
  /// signals. Gaps within kInformativeMargin count as ties.
  bool is_informative() const;

  /// Largest |theta(m1, a, w) - theta(m0, a, w)| over (a, w).
  double max_message_gap() const;

 private:
  static constexpr std::size_t slot(Message m, AlgoSignal a, State w) {
    return index(m) * 4 + index(a) * 2 + index(w);
  }

  std::array<double, 8> theta_hat_{};
  std::array<bool, 4> on_path_{};
  double off_path_belief_ = ModelParams::prior_high();
};

/// Manager beliefs without the algorithm, under truthful reporting:
/// theta(report, omega).
struct BenchmarkBeliefs {
  std::array<double, 4> theta_hat{};

  double operator()(PrivateSignal report, State w) const {
    return theta_hat[index(report) * 2 + index(w)];
  }
};

/// Pr(s1 | state, type).
double signal_likelihood(WorkerType type, State state,
                         const ModelParams& params);

/// Pr(s | state, type).
double signal_prob(PrivateSignal s, WorkerType type, State state,
                   const ModelParams& params);

/// Pr(a | state). Independent of the worker.
double algo_signal_prob(AlgoSignal a, State state, const ModelParams& params);

/// Worker's posterior Pr(omega1 | s, a, type).
double worker_posterior(PrivateSignal s, AlgoSignal a, WorkerType type,
                        const ModelParams& params);

/// Worker's posterior Pr(omega1 | s, type) when there is no algorithm.
double worker_posterior_no_algo(PrivateSignal s, WorkerType type,
                                const ModelParams& params);

/// Pr(s, a, omega | type) = Pr(omega) Pr(s | omega, type) Pr(a | omega).
double joint_prob(WorkerType type, PrivateSignal s, AlgoSignal a, State state,
                  const ModelParams& params);

/// Bayes-consistent beliefs for an arbitrary strategy. Unreached (m, a) cells
/// get off_path.belief and are flagged.
BeliefTable manager_beliefs(const StrategyProfile& strategy,
                            const ModelParams& params,
                            OffPathRule off_path = {});

/// Expected posterior the worker earns by sending m in information cell
/// (s, a, type).
double worker_payoff(PrivateSignal s, AlgoSignal a, WorkerType type,
                     Message m, const BeliefTable& beliefs,
                     const ModelParams& params);

/// Truth-telling posteriors in the no-algorithm game.
BenchmarkBeliefs benchmark_beliefs(const ModelParams& params);

}  // namespace aversion
