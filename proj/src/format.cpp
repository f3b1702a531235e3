// Copyright 2026 The aversion authors
// SPDX-License-Identifier: Apache-2.0

#include "aversion/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace aversion {

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, kOutputDigits);
  return std::string(buf.data(), res.ptr);
}

double round_to_output(double value) {
  if (!std::isfinite(value)) return value;
  const std::string text = format_real(value);
  double out = value;
  std::from_chars(text.data(), text.data() + text.size(), out);
  return out;
}

}  // namespace aversion
