// Copyright 2026 The aversion authors
// SPDX-License-Identifier: Apache-2.0

#include "aversion/report_json.hpp"

#include <cmath>

#include "aversion/format.hpp"
#include "json.hpp"

namespace aversion {

namespace {

using nlohmann::ordered_json;

ordered_json real(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round_to_output(v);
}

}  // namespace

std::string simulation_report_json(const SimulationReport& r) {
  ordered_json doc;
  doc["params"] = {{"upsilon_L", real(r.upsilon_low)},
                   {"upsilon_H", real(r.upsilon_high)},
                   {"alpha", real(r.alpha)}};
  doc["gamma"] = real(r.gamma);
  doc["n_draws"] = r.n_draws;
  doc["seed"] = r.seed;
  doc["generator"] = "mt19937_64 per 65536-draw chunk, splitmix64 chunk seeds";
  doc["empirical_accuracy"] = real(r.empirical_accuracy);
  doc["accuracy_se"] = real(r.accuracy_se);
  doc["low_overrides"] = r.low_overrides;

  ordered_json signals = ordered_json::array();
  for (WorkerType t : kTypes) {
    signals.push_back({{"type", to_string(t)},
                       {"pr_s1", real(r.empirical_pr_s1[index(t)])},
                       {"se", real(r.pr_s1_se[index(t)])}});
  }
  doc["empirical_pr_s1"] = std::move(signals);

  ordered_json beliefs = ordered_json::array();
  for (Message m : kMessages) {
    for (AlgoSignal a : kAlgoSignals) {
      for (State w : kStates) {
        const std::size_t b = SimulationReport::belief_index(m, a, w);
        beliefs.push_back({{"m", to_string(m)},
                           {"a", to_string(a)},
                           {"omega", to_string(w)},
                           {"hits", r.belief_hits[b]},
                           {"belief", real(r.empirical_beliefs[b])},
                           {"se", real(r.belief_se[b])}});
      }
    }
  }
  doc["empirical_beliefs"] = std::move(beliefs);

  ordered_json joint = ordered_json::array();
  for (WorkerType t : kTypes) {
    for (PrivateSignal s : kSignals) {
      for (AlgoSignal a : kAlgoSignals) {
        for (State w : kStates) {
          for (Message m : kMessages) {
            const std::size_t i = SimulationReport::joint_index(t, s, a, w, m);
            joint.push_back({{"type", to_string(t)},
                             {"s", to_string(s)},
                             {"a", to_string(a)},
                             {"omega", to_string(w)},
                             {"m", to_string(m)},
                             {"count", r.counts[i]},
                             {"frequency", real(r.empirical_joint[i])},
                             {"se", real(r.joint_se[i])}});
          }
        }
      }
    }
  }
  doc["empirical_joint"] = std::move(joint);
  return doc.dump(2) + "\n";
}

}  // namespace aversion
