// Copyright 2026 The aversion authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

namespace aversion {

inline constexpr int kOutputDigits = 9;

/// Shortest-general form with 9 significant digits, correctly rounded
/// (ties to even on the exact binary value). "nan", "inf", "-inf" for
/// non-finite input.
std::string format_real(double value);

/// The double nearest to format_real(value). Serializers that print the
/// shortest round-trip form then emit at most 9 significant digits.
double round_to_output(double value);

}  // namespace aversion
