// Copyright 2026 The aversion authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "aversion/monte_carlo.hpp"

namespace aversion {

/// Pretty-printed JSON document for a simulation report. Reals carry at most
/// 9 significant digits; cells never visited have null beliefs. Identical
/// reports serialize to identical bytes.
std::string simulation_report_json(const SimulationReport& report);

}  // namespace aversion
