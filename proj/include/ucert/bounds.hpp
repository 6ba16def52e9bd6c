// Copyright 2026 The ucert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Entropic lower bounds from the norm r = ||T|| of the anti-commutation
// matrix. The ellipsoid g g^T <= T is relaxed to the ball |g|^2 <= r; with
// t_k = g_k^2 the objective sum_k w_alpha(sqrt t_k) is convex in t for
// alpha in (1, 3/2] (maximized at a vertex) and concave for alpha >= 2
// (maximized at the symmetric point t_k = r / M).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ucert/ellipsoid.hpp"
#include "ucert/entropy.hpp"
#include "ucert/error.hpp"
#include "ucert/matcore.hpp"

namespace ucert {

/// Vertex t of {t in [0,1]^M, sum t = r}: floor(r) ones, then the remainder.
struct Assignment {
  double r = 0.0;
  std::vector<double> t;
};

enum class BoundMethod { low_alpha, high_alpha };

inline const char* to_string(BoundMethod m) {
  return m == BoundMethod::low_alpha ? "low_alpha" : "high_alpha";
}

struct UncertaintyBound {
  double value_bits = 0.0;
  RenyiOrder order = RenyiOrder::shannon();
  std::size_t m = 0;
  double r = 0.0;
  std::optional<Assignment> assignment;
  BoundMethod method = BoundMethod::low_alpha;
  /// Set when T has a diagonal entry below 1 (non-projective measurements).
  bool generalized = false;
};

inline bool in_low_alpha_regime(const RenyiOrder& order) {
  return order.is_shannon() || (order.is_finite() && order.alpha() <= 1.5);
}

inline bool in_high_alpha_regime(const RenyiOrder& order) {
  return order.is_min_entropy() || (order.is_finite() && order.alpha() >= 2.0);
}

inline Assignment optimal_assignment(double r, std::size_t m) {
  if (!(r >= 0.0 && r <= static_cast<double>(m))) {
    throw InputError("optimal_assignment: r = " + std::to_string(r) + " outside [0, " +
                     std::to_string(m) + "]");
  }
  Assignment a{r, std::vector<double>(m, 0.0)};
  const auto whole = static_cast<std::size_t>(std::floor(r));
  for (std::size_t k = 0; k < whole; ++k) a.t[k] = 1.0;
  if (whole < m) a.t[whole] = r - static_cast<double>(whole);
  return a;
}

namespace detail {

inline double clamp_bits(double v) { return std::clamp(v, 0.0, 1.0); }

inline void require_r(double r, std::size_t m) {
  if (m == 0) throw InputError("bound: need at least one observable");
  if (!(r >= 0.0 && r <= static_cast<double>(m))) {
    throw InputError("bound: r = " + std::to_string(r) + " outside [0, M]");
  }
}

}  // namespace detail

/// Convex regime: H_alpha(X|K) >= H_alpha(Y|K) with
/// Pr[y, k] = (1/M)(1 + (-1)^y sqrt(t_k)) / 2 at the optimal assignment.
inline UncertaintyBound bound_low_alpha(const RenyiOrder& order, std::size_t m, double r) {
  if (!in_low_alpha_regime(order)) {
    throw UnsupportedOrderError("bound_low_alpha covers Shannon and alpha in (1, 3/2] only");
  }
  detail::require_r(r, m);
  Assignment a = optimal_assignment(r, m);
  std::vector<double> g(m);
  for (std::size_t k = 0; k < m; ++k) g[k] = std::sqrt(a.t[k]);
  const double value = renyi_cond_entropy(order, dist_from_g(g));
  return {detail::clamp_bits(value), order, m, r, std::move(a), BoundMethod::low_alpha, false};
}

/// Concave regime: H_alpha(X|K) >= H_alpha(Y) with
/// Pr[y] = (1 + (-1)^y sqrt(r/M)) / 2.
inline UncertaintyBound bound_high_alpha(const RenyiOrder& order, std::size_t m, double r) {
  if (!in_high_alpha_regime(order)) {
    throw UnsupportedOrderError("bound_high_alpha covers alpha >= 2 and min-entropy only");
  }
  detail::require_r(r, m);
  const double s = std::sqrt(r / static_cast<double>(m));
  const double plus = 0.5 * (1.0 + s);
  const double minus = 0.5 * (1.0 - s);
  double value = 0.0;
  if (order.is_min_entropy()) {
    value = -std::log2(plus);
  } else {
    const double a = order.alpha();
    value = std::log2(std::pow(plus, a) + std::pow(minus, a)) / (1.0 - a);
  }
  Assignment uniform{r, std::vector<double>(m, r / static_cast<double>(m))};
  return {detail::clamp_bits(value), order, m, r, std::move(uniform), BoundMethod::high_alpha,
          false};
}

/// Dispatches on the order; alpha in (3/2, 2) has no certified bound.
inline UncertaintyBound bound(const RenyiOrder& order, std::size_t m, double r) {
  if (in_low_alpha_regime(order)) return bound_low_alpha(order, m, r);
  if (in_high_alpha_regime(order)) return bound_high_alpha(order, m, r);
  throw UnsupportedOrderError("Renyi order " + std::to_string(order.alpha()) +
                              " lies in (3/2, 2), where neither convexity nor concavity "
                              "of w_alpha(sqrt t) holds; no certified bound is available");
}

/// Bound from an anti-commutation matrix, r = ||T|| clamped to [max diag, M].
inline UncertaintyBound bound(const RenyiOrder& order, const AntiCommutationMatrix& t) {
  const double m = static_cast<double>(t.m());
  const double floor = std::min(t.max_diagonal(), m);
  const double r = std::clamp(spectral_norm(t.symmetric()), floor, m);
  UncertaintyBound b = bound(order, t.m(), r);
  b.generalized = !t.projective();
  return b;
}

/// Maassen-Uffink bound -log2(c) / 2.
inline double q_mu(double c) {
  if (!(c >= 0.5 && c <= 1.0)) throw InputError("q_mu: overlap outside [1/2, 1]");
  return -0.5 * std::log2(c);
}

/// c = (1 + |epsilon|) / 2 for projective qubit measurements.
inline double overlap_from_epsilon(double epsilon) {
  if (!(std::abs(epsilon) <= 1.0)) throw InputError("overlap_from_epsilon: |epsilon| > 1");
  return 0.5 * (1.0 + std::abs(epsilon));
}

inline double epsilon_from_overlap(double c) {
  if (!(c >= 0.5 && c <= 1.0)) throw InputError("epsilon_from_overlap: overlap outside [1/2, 1]");
  return 2.0 * c - 1.0;
}

/// Shannon bound for two projective qubit measurements with overlap c,
/// i.e. the convex-regime bound at M = 2, r = 1 + |epsilon| = 2c.
inline double q_ac(double c) {
  if (!(c >= 0.5 && c <= 1.0)) throw InputError("q_ac: overlap outside [1/2, 1]");
  return bound_low_alpha(RenyiOrder::shannon(), 2, std::min(2.0 * c, 2.0)).value_bits;
}

}  // namespace ucert
