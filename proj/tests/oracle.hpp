// Copyright 2026 The aversion authors
// SPDX-License-Identifier: Apache-2.0

// Reference computations for the tests. Everything here enumerates the game
// directly from its primitives and shares no code with the library.

#pragma once

#include <array>
#include <cmath>
#include <functional>

namespace oracle {

struct Params {
  double ul;
  double uh;
  double alpha;
};

// m1 probability per cell, indexed type * 4 + s * 2 + a (type 1 = high).
using Profile = std::array<double, 8>;

inline double prob(const Params& p, int type, int s, int a, int w) {
  const double u = type == 1 ? p.uh : p.ul;
  const double ps = s == w ? u : 1.0 - u;
  const double pa = a == w ? p.alpha : 1.0 - p.alpha;
  return 0.5 * 0.5 * ps * pa;
}

inline double send(const Profile& x, int m, int type, int s, int a) {
  const double p1 = x[static_cast<std::size_t>(type * 4 + s * 2 + a)];
  return m == 1 ? p1 : 1.0 - p1;
}

// theta[m][a][w]; unreached cells get 1/2.
struct Beliefs {
  double theta[2][2][2];
  double operator()(int m, int a, int w) const { return theta[m][a][w]; }
};

inline Beliefs beliefs(const Params& p, const Profile& x) {
  Beliefs b{};
  for (int m = 0; m < 2; ++m) {
    for (int a = 0; a < 2; ++a) {
      for (int w = 0; w < 2; ++w) {
        double high = 0.0;
        double total = 0.0;
        for (int t = 0; t < 2; ++t) {
          for (int s = 0; s < 2; ++s) {
            const double mass = prob(p, t, s, a, w) * send(x, m, t, s, a);
            total += mass;
            if (t == 1) high += mass;
          }
        }
        b.theta[m][a][w] = total > 0.0 ? high / total : 0.5;
      }
    }
  }
  return b;
}

inline double posterior_w1(const Params& p, int type, int s, int a) {
  return prob(p, type, s, a, 1) / (prob(p, type, s, a, 0) + prob(p, type, s, a, 1));
}

inline double payoff(const Params& p, const Beliefs& b, int type, int s, int a,
                     int m) {
  const double q = posterior_w1(p, type, s, a);
  return q * b(m, a, 1) + (1.0 - q) * b(m, a, 0);
}

inline Profile informative(double gamma) {
  Profile x{};
  for (int s = 0; s < 2; ++s) {
    for (int a = 0; a < 2; ++a) {
      x[static_cast<std::size_t>(4 + s * 2 + a)] = s;
      x[static_cast<std::size_t>(s * 2 + a)] =
          s == a ? s : gamma * a + (1.0 - gamma) * s;
    }
  }
  return x;
}

// Low type at (s1, a0): payoff of following (m0) minus overriding (m1).
inline double follow_advantage(const Params& p, double gamma) {
  const Beliefs b = beliefs(p, informative(gamma));
  return payoff(p, b, 0, 1, 0, 0) - payoff(p, b, 0, 1, 0, 1);
}

// Plain bisection on a decreasing function over [lo, hi].
inline double root(const std::function<double(double)>& f, double lo, double hi) {
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double equilibrium_gamma(const Params& p) {
  return root([&](double g) { return follow_advantage(p, g); }, 0.0, 1.0);
}

// Probability the message names the state, by enumeration.
inline double accuracy(const Params& p, const Profile& x) {
  double correct = 0.0;
  for (int t = 0; t < 2; ++t)
    for (int s = 0; s < 2; ++s)
      for (int a = 0; a < 2; ++a)
        for (int w = 0; w < 2; ++w)
          correct += prob(p, t, s, a, w) * send(x, w, t, s, a);
  return correct;
}

// Five-point central difference.
inline double derivative(const std::function<double(double)>& f, double x,
                         double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

}  // namespace oracle
