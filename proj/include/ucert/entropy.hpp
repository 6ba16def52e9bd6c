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

// Classical entropies of the outcome X conditioned on a uniformly chosen
// setting K. All logarithms are base 2.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ucert/ellipsoid.hpp"
#include "ucert/error.hpp"

namespace ucert {

/// Renyi order: Shannon (alpha -> 1), finite alpha > 1, or min-entropy.
class RenyiOrder {
 public:
  enum class Kind { shannon, finite, min_entropy };

  static RenyiOrder shannon() { return RenyiOrder(Kind::shannon, 1.0); }
  static RenyiOrder min_entropy() {
    return RenyiOrder(Kind::min_entropy, std::numeric_limits<double>::infinity());
  }
  static RenyiOrder finite(double alpha) {
    if (!(alpha > 1.0) || !std::isfinite(alpha)) {
      throw InputError("finite Renyi order needs alpha > 1, got " + std::to_string(alpha));
    }
    return RenyiOrder(Kind::finite, alpha);
  }

  Kind kind() const { return kind_; }
  /// 1 for Shannon, +inf for min-entropy.
  double alpha() const { return alpha_; }

  bool is_shannon() const { return kind_ == Kind::shannon; }
  bool is_min_entropy() const { return kind_ == Kind::min_entropy; }
  bool is_finite() const { return kind_ == Kind::finite; }

  friend bool operator==(const RenyiOrder&, const RenyiOrder&) = default;

 private:
  RenyiOrder(Kind kind, double alpha) : kind_(kind), alpha_(alpha) {}

  Kind kind_;
  double alpha_;
};

/// Pr[X = x, K = k] for binary x and m settings.
class JointDistribution {
 public:
  JointDistribution(std::vector<double> p0, std::vector<double> p1)
      : p0_(std::move(p0)), p1_(std::move(p1)) {
    if (p0_.size() != p1_.size() || p0_.empty()) {
      throw InputError("joint distribution rows must have equal non-zero length");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < p0_.size(); ++k) {
      if (p0_[k] < 0.0 || p1_[k] < 0.0) throw InputError("negative probability");
      total += p0_[k] + p1_[k];
    }
    if (std::abs(total - 1.0) > 1e-12) {
      throw InputError("probabilities sum to " + std::to_string(total));
    }
  }

  std::size_t m() const { return p0_.size(); }
  double prob(int x, std::size_t k) const { return x == 0 ? p0_[k] : p1_[k]; }
  double setting_prob(std::size_t k) const { return p0_[k] + p1_[k]; }

 private:
  std::vector<double> p0_;
  std::vector<double> p1_;
};

/// Pr[x, k] = (1/M) (1 + (-1)^x g_k) / 2.
inline JointDistribution dist_from_g(std::span<const double> g) {
  const double inv_m = 1.0 / static_cast<double>(g.size());
  std::vector<double> p0;
  std::vector<double> p1;
  for (double gk : g) {
    p0.push_back(inv_m * 0.5 * (1.0 + gk));
    p1.push_back(inv_m * 0.5 * (1.0 - gk));
  }
  return JointDistribution(std::move(p0), std::move(p1));
}

inline JointDistribution dist_from_g(const ExpectationVector& g) {
  return dist_from_g(g.values());
}

inline double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("binary_entropy: p outside [0, 1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

/// [((1+g)/2)^alpha + ((1-g)/2)^alpha]^{1/alpha}; max((1+g)/2, (1-g)/2) at alpha = inf.
inline double w_alpha(const RenyiOrder& order, double g) {
  if (!(std::abs(g) <= 1.0)) throw InputError("w_alpha: |g| > 1");
  const double plus = 0.5 * (1.0 + g);
  const double minus = 0.5 * (1.0 - g);
  switch (order.kind()) {
    case RenyiOrder::Kind::min_entropy:
      return std::max(plus, minus);
    case RenyiOrder::Kind::finite: {
      const double a = order.alpha();
      return std::pow(std::pow(plus, a) + std::pow(minus, a), 1.0 / a);
    }
    case RenyiOrder::Kind::shannon:
      break;
  }
  throw InputError("w_alpha is undefined for the Shannon order");
}

/// H_alpha(X|K) in bits.
inline double renyi_cond_entropy(const RenyiOrder& order, const JointDistribution& dist) {
  const std::size_t m = dist.m();
  switch (order.kind()) {
    case RenyiOrder::Kind::shannon: {
      double h = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        const double pk = dist.setting_prob(k);
        if (pk == 0.0) continue;
        h += pk * binary_entropy(std::clamp(dist.prob(0, k) / pk, 0.0, 1.0));
      }
      return h;
    }
    case RenyiOrder::Kind::min_entropy: {
      double guess = 0.0;
      for (std::size_t k = 0; k < m; ++k) guess += std::max(dist.prob(0, k), dist.prob(1, k));
      return -std::log2(guess);
    }
    case RenyiOrder::Kind::finite: {
      const double a = order.alpha();
      double acc = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        const double pk = dist.setting_prob(k);
        if (pk == 0.0) continue;
        const double q0 = dist.prob(0, k) / pk;
        const double q1 = dist.prob(1, k) / pk;
        acc += pk * std::pow(std::pow(q0, a) + std::pow(q1, a), 1.0 / a);
      }
      return a / (1.0 - a) * std::log2(acc);
    }
  }
  return 0.0;
}

/// Coefficient of x^k in the Taylor series of
/// (alpha-1)/2 sinh 3x + (1+alpha)/2 sinh x - sinh((2 alpha - 1) x),
/// i.e. [(alpha-1) 3^k + 1 + alpha - 2 (2 alpha - 1)^k] / (2 k!).
inline double taylor_coefficient(int k, double alpha) {
  if (k < 0) throw InputError("taylor_coefficient: k must be non-negative");
  double three_pow = 1.0;  // 3^k / k!
  double mixed_pow = 1.0;  // (2 alpha - 1)^k / k!
  double inv_fact = 1.0;   // 1 / k!
  for (int i = 1; i <= k; ++i) {
    three_pow *= 3.0 / i;
    mixed_pow *= (2.0 * alpha - 1.0) / i;
    inv_fact /= i;
  }
  return 0.5 * ((alpha - 1.0) * three_pow + (1.0 + alpha) * inv_fact - 2.0 * mixed_pow);
}

struct ConvexityReport {
  double min_second_difference = 0.0;
  double max_second_difference = 0.0;
  int points = 0;
};

/// Centered second differences of t -> w_alpha(sqrt t) on grid_size points
/// spread over [1e-4, 1 - 1e-4], finite-difference step 1e-4.
inline ConvexityReport convexity_witness(double alpha, int grid_size) {
  if (grid_size < 10) throw InputError("convexity_witness: grid_size must be >= 10");
  const RenyiOrder order = RenyiOrder::finite(alpha);
  constexpr double kInset = 1e-4;
  constexpr double kStep = 1e-4;
  auto f = [&](double t) { return w_alpha(order, std::sqrt(std::clamp(t, 0.0, 1.0))); };

  ConvexityReport rep{std::numeric_limits<double>::infinity(),
                      -std::numeric_limits<double>::infinity(), grid_size};
  for (int i = 0; i < grid_size; ++i) {
    const double t = kInset + (1.0 - 2.0 * kInset) * i / (grid_size - 1);
    const double d2 = f(t + kStep) - 2.0 * f(t) + f(t - kStep);
    rep.min_second_difference = std::min(rep.min_second_difference, d2);
    rep.max_second_difference = std::max(rep.max_second_difference, d2);
  }
  return rep;
}

}  // namespace ucert
