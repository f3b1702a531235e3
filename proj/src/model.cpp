// Copyright 2026 The aversion authors
// SPDX-License-Identifier: Apache-2.0

#include "aversion/model.hpp"

#include <algorithm>
#include <cmath>

#include "aversion/error.hpp"

namespace aversion {

std::string to_string(State v) { return v == State::omega1 ? "omega1" : "omega0"; }
std::string to_string(PrivateSignal v) { return v == PrivateSignal::s1 ? "s1" : "s0"; }
std::string to_string(AlgoSignal v) { return v == AlgoSignal::a1 ? "a1" : "a0"; }
std::string to_string(Message v) { return v == Message::m1 ? "m1" : "m0"; }
std::string to_string(WorkerType v) { return v == WorkerType::high ? "high" : "low"; }

namespace {

bool in_open_unit(double p) { return std::isfinite(p) && p > 0.0 && p < 1.0; }

}  // namespace

ModelParams ModelParams::unconstrained(double upsilon_low, double upsilon_high,
                                       double alpha) {
  if (!in_open_unit(upsilon_low))
    throw InvalidParameter("upsilon_L must lie in (0, 1)");
  if (!in_open_unit(upsilon_high))
    throw InvalidParameter("upsilon_H must lie in (0, 1)");
  if (!in_open_unit(alpha)) throw InvalidParameter("alpha must lie in (0, 1)");
  return ModelParams(upsilon_low, upsilon_high, alpha);
}

ModelParams ModelParams::create(double upsilon_low, double upsilon_high,
                                double alpha) {
  ModelParams params = unconstrained(upsilon_low, upsilon_high, alpha);
  params.require_ordering();
  return params;
}

std::optional<std::string> ModelParams::ordering_violation() const {
  if (!(upsilon_low_ > 0.5)) return "upsilon_L must exceed 1/2";
  if (!(alpha_ > upsilon_low_)) return "alpha must exceed upsilon_L";
  if (!(upsilon_high_ > alpha_)) return "upsilon_H must exceed alpha";
  if (!(upsilon_high_ < 1.0)) return "upsilon_H must be below 1";
  return std::nullopt;
}

void ModelParams::require_ordering() const {
  if (auto violation = ordering_violation()) throw InvalidParameter(*violation);
}

StrategyProfile StrategyProfile::informative(double follow_prob) {
  if (!(follow_prob >= 0.0 && follow_prob <= 1.0))
    throw InvalidParameter("follow probability must lie in [0, 1]");
  StrategyProfile profile;
  for (PrivateSignal s : kSignals) {
    for (AlgoSignal a : kAlgoSignals) {
      const double own = index(s) == 1 ? 1.0 : 0.0;
      profile.report_m1_[cell_index(WorkerType::high, s, a)] = own;
      if (index(s) == index(a)) {
        profile.report_m1_[cell_index(WorkerType::low, s, a)] = own;
      } else {
        const double algo = index(a) == 1 ? 1.0 : 0.0;
        profile.report_m1_[cell_index(WorkerType::low, s, a)] =
            follow_prob * algo + (1.0 - follow_prob) * own;
      }
    }
  }
  return profile;
}

StrategyProfile StrategyProfile::uniform(double report_m1) {
  if (!(report_m1 >= 0.0 && report_m1 <= 1.0))
    throw InvalidParameter("report probability must lie in [0, 1]");
  StrategyProfile profile;
  profile.report_m1_.fill(report_m1);
  return profile;
}

void StrategyProfile::set_report_m1(WorkerType type, PrivateSignal s,
                                    AlgoSignal a, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw InvalidParameter("report probability must lie in [0, 1]");
  report_m1_[cell_index(type, s, a)] = p;
}

StrategyProfile StrategyProfile::flipped() const {
  StrategyProfile out;
  for (WorkerType t : kTypes)
    for (PrivateSignal s : kSignals)
      for (AlgoSignal a : kAlgoSignals)
        out.report_m1_[cell_index(t, s, a)] =
            1.0 - report_m1_[cell_index(t, flip(s), flip(a))];
  return out;
}

bool BeliefTable::is_informative() const {
  const auto& t = *this;
  for (AlgoSignal a : kAlgoSignals) {
    if (!(t(Message::m1, a, State::omega1) - t(Message::m0, a, State::omega1) >
          kInformativeMargin))
      return false;
    if (!(t(Message::m0, a, State::omega0) - t(Message::m1, a, State::omega0) >
          kInformativeMargin))
      return false;
  }
  return true;
}

double BeliefTable::max_message_gap() const {
  double gap = 0.0;
  for (AlgoSignal a : kAlgoSignals)
    for (State w : kStates)
      gap = std::max(gap, std::abs((*this)(Message::m1, a, w) -
                                   (*this)(Message::m0, a, w)));
  return gap;
}

double signal_likelihood(WorkerType type, State state,
                         const ModelParams& params) {
  const double v = params.precision(type);
  return state == State::omega1 ? v : 1.0 - v;
}

double signal_prob(PrivateSignal s, WorkerType type, State state,
                   const ModelParams& params) {
  const double p1 = signal_likelihood(type, state, params);
  return s == PrivateSignal::s1 ? p1 : 1.0 - p1;
}

double algo_signal_prob(AlgoSignal a, State state, const ModelParams& params) {
  return index(a) == index(state) ? params.alpha() : 1.0 - params.alpha();
}

double joint_prob(WorkerType type, PrivateSignal s, AlgoSignal a, State state,
                  const ModelParams& params) {
  const double prior =
      state == State::omega1 ? params.prior_state1() : 1.0 - params.prior_state1();
  return prior * signal_prob(s, type, state, params) *
         algo_signal_prob(a, state, params);
}

double worker_posterior(PrivateSignal s, AlgoSignal a, WorkerType type,
                        const ModelParams& params) {
  const double w1 = joint_prob(type, s, a, State::omega1, params);
  const double w0 = joint_prob(type, s, a, State::omega0, params);
  const double total = w1 + w0;
  if (!(total > 0.0))
    throw InvalidParameter("degenerate signal likelihoods");
  return w1 / total;
}

double worker_posterior_no_algo(PrivateSignal s, WorkerType type,
                                const ModelParams& params) {
  const double v = params.precision(type);
  return s == PrivateSignal::s1 ? v : 1.0 - v;
}

BeliefTable manager_beliefs(const StrategyProfile& strategy,
                            const ModelParams& params, OffPathRule off_path) {
  BeliefTable table;
  table.set_off_path_belief(off_path.belief);
  for (Message m : kMessages) {
    for (AlgoSignal a : kAlgoSignals) {
      std::array<double, 2> high{};
      std::array<double, 2> total{};
      for (State w : kStates) {
        for (WorkerType t : kTypes) {
          const double prior_t = t == WorkerType::high
                                     ? params.prior_high()
                                     : 1.0 - params.prior_high();
          for (PrivateSignal s : kSignals) {
            const double mass = prior_t * joint_prob(t, s, a, w, params) *
                                strategy.report_prob(m, t, s, a);
            total[index(w)] += mass;
            if (t == WorkerType::high) high[index(w)] += mass;
          }
        }
      }
      // Every (s, a, omega) has positive probability, so (m, a) is reached
      // under one state exactly when it is reached under the other.
      const bool reached = total[0] > 0.0 && total[1] > 0.0;
      table.set_on_path(m, a, reached);
      for (State w : kStates)
        table.set(m, a, w, reached ? high[index(w)] / total[index(w)]
                                   : off_path.belief);
    }
  }
  return table;
}

double worker_payoff(PrivateSignal s, AlgoSignal a, WorkerType type,
                     Message m, const BeliefTable& beliefs,
                     const ModelParams& params) {
  const double p1 = worker_posterior(s, a, type, params);
  return p1 * beliefs(m, a, State::omega1) +
         (1.0 - p1) * beliefs(m, a, State::omega0);
}

BenchmarkBeliefs benchmark_beliefs(const ModelParams& params) {
  const double vh = params.upsilon_high();
  const double vl = params.upsilon_low();
  const double correct = vh / (vh + vl);
  const double wrong = (1.0 - vh) / (2.0 - vh - vl);
  BenchmarkBeliefs out;
  for (PrivateSignal report : kSignals)
    for (State w : kStates)
      out.theta_hat[index(report) * 2 + index(w)] =
          index(report) == index(w) ? correct : wrong;
  return out;
}

}  // namespace aversion
