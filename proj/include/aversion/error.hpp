// Copyright 2026 The aversion authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace aversion {

/// Parameters outside the admissible region (open unit interval, or the
/// ordering upsilon_L < alpha < upsilon_H required by the solver).
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A property the model guarantees did not hold, e.g. the solver bracket.
/// Indicates a bug rather than bad input.
class InternalContradiction : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A simulation was requested with zero draws.
class EmptyReport : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace aversion
