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

// Brute-force verifiers for the analytic bounds. These never certify
// anything: each one returns an achievable entropy value, which therefore
// upper-bounds the true minimum and can only falsify a claimed lower bound.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ucert/bounds.hpp"
#include "ucert/ellipsoid.hpp"
#include "ucert/entropy.hpp"
#include "ucert/random.hpp"

namespace ucert {

struct OracleResult {
  double minimum_bits = 0.0;
  std::vector<double> argmin_g;
  std::size_t evaluations = 0;
  bool refined = false;
};

namespace detail {

enum class SphereMode { ball, sphere };

inline void project(std::vector<double>& x, SphereMode mode) {
  double norm2 = 0.0;
  for (double v : x) norm2 += v * v;
  if (norm2 == 0.0) return;
  if (mode == SphereMode::sphere || norm2 > 1.0) {
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& v : x) v *= inv;
  }
}

/// Derivative-free coordinate descent over the unit ball (or sphere): try
/// +-step along each axis, re-project, keep improvements; halve the step
/// after a sweep without progress.
inline double coordinate_descent(const std::function<double(std::span<const double>)>& f,
                                 std::vector<double>& x, SphereMode mode, int iterations,
                                 std::size_t& evaluations) {
  double best = f(x);
  ++evaluations;
  double step = 0.1;
  std::vector<double> trial(x.size());
  for (int it = 0; it < iterations; ++it) {
    bool improved = false;
    for (std::size_t j = 0; j < x.size(); ++j) {
      for (double sign : {1.0, -1.0}) {
        trial = x;
        trial[j] += sign * step;
        project(trial, mode);
        const double v = f(trial);
        ++evaluations;
        if (v < best) {
          best = v;
          x = trial;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

}  // namespace detail

/// Minimizes H_alpha(X|K) over the exact ellipsoid {g = T^{1/2} u : |u| <= 1}.
///
/// Candidates are the 2M axis points of the sphere followed by `samples`
/// seeded draws (even index on the sphere, odd index inside the ball); draw i
/// depends only on (seed, i), so larger sample counts extend smaller ones.
/// The running best is refined at every prefix length 1000 * 2^k and at
/// `samples`, which keeps the reported minimum non-increasing along the
/// doubling sequence.
inline OracleResult min_entropy_over_ellipsoid(const RenyiOrder& order,
                                               const AntiCommutationMatrix& t,
                                               std::size_t samples, std::uint64_t seed) {
  if (samples < 1000) throw InputError("min_entropy_over_ellipsoid: need at least 1000 samples");
  const std::size_t m = t.m();
  const RealMatrix root = psd_sqrt(t.matrix());

  auto to_g = [&](std::span<const double> u) {
    auto g = mat_vec(root, u);
    for (auto& x : g) x = std::clamp(x, -1.0, 1.0);
    return g;
  };
  auto objective = [&](std::span<const double> u) {
    return renyi_cond_entropy(order, dist_from_g(to_g(u)));
  };

  OracleResult res;
  res.minimum_bits = std::numeric_limits<double>::infinity();
  double best_sample = std::numeric_limits<double>::infinity();
  std::vector<double> best_u(m, 0.0);

  auto consider = [&](const std::vector<double>& u) {
    const double v = objective(u);
    ++res.evaluations;
    if (v < best_sample) {
      best_sample = v;
      best_u = u;
    }
    if (v < res.minimum_bits) {
      res.minimum_bits = v;
      res.argmin_g = to_g(u);
    }
  };
  auto refine = [&] {
    std::vector<double> u = best_u;
    const double v = detail::coordinate_descent(objective, u, detail::SphereMode::ball, 60,
                                                res.evaluations);
    res.refined = true;
    if (v < res.minimum_bits) {
      res.minimum_bits = v;
      res.argmin_g = to_g(u);
    }
  };

  for (std::size_t j = 0; j < m; ++j) {
    for (double sign : {1.0, -1.0}) {
      std::vector<double> u(m, 0.0);
      u[j] = sign;
      consider(u);
    }
  }

  std::size_t checkpoint = 1000;
  for (std::size_t i = 0; i < samples; ++i) {
    Rng rng(derive_seed(seed, i));
    consider(i % 2 == 0 ? rng.unit_vector(m) : rng.ball_point(m));
    if (i + 1 == checkpoint || i + 1 == samples) {
      refine();
      if (i + 1 == checkpoint) checkpoint *= 2;
    }
  }
  return res;
}

/// Numerical optimum min_rho (H(A) + H(B)) / 2 for the projective qubit
/// observables Z and cos(theta) Z + sin(theta) X with overlap
/// c = (1 + cos theta) / 2. Half the samples sweep the great circle through
/// both measurement axes, half are seeded points on the whole Bloch sphere;
/// the best one is refined by coordinate descent on the sphere.
inline double q_opt(double c, std::size_t state_samples, std::uint64_t seed) {
  if (!(c >= 0.5 && c <= 1.0)) throw InputError("q_opt: overlap outside [1/2, 1]");
  if (state_samples < 2) throw InputError("q_opt: need at least 2 state samples");
  const double cos_t = std::clamp(2.0 * c - 1.0, -1.0, 1.0);
  const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));

  auto objective = [&](std::span<const double> n) {
    const double za = std::clamp(n[2], -1.0, 1.0);
    const double zb = std::clamp(sin_t * n[0] + cos_t * n[2], -1.0, 1.0);
    return 0.5 * (binary_entropy(0.5 * (1.0 + za)) + binary_entropy(0.5 * (1.0 + zb)));
  };

  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_n{0.0, 0.0, 1.0};
  auto consider = [&](std::vector<double> n) {
    const double v = objective(n);
    if (v < best) {
      best = v;
      best_n = std::move(n);
    }
  };

  const std::size_t circle = state_samples / 2;
  for (std::size_t i = 0; i < circle; ++i) {
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(i) / circle;
    consider({std::sin(phi), 0.0, std::cos(phi)});
  }
  for (std::size_t i = circle; i < state_samples; ++i) {
    Rng rng(derive_seed(seed, i));
    consider(rng.unit_vector(3));
  }

  std::size_t evaluations = 0;
  const double refined =
      detail::coordinate_descent(objective, best_n, detail::SphereMode::sphere, 100, evaluations);
  return std::min(best, refined);
}

struct CompareRow {
  double c = 0.0;
  double q_mu = 0.0;
  double q_ac = 0.0;
  double q_opt = 0.0;
};

/// Rows (c, q_MU, q_ac, q_opt) ordered by c.
inline std::vector<CompareRow> compare_curve(std::vector<double> c_grid, std::uint64_t seed,
                                             std::size_t state_samples = 100000) {
  std::sort(c_grid.begin(), c_grid.end());
  std::vector<CompareRow> rows;
  rows.reserve(c_grid.size());
  for (std::size_t i = 0; i < c_grid.size(); ++i) {
    const double c = c_grid[i];
    rows.push_back({c, q_mu(c), q_ac(c), q_opt(c, state_samples, derive_seed(seed, i))});
  }
  return rows;
}

/// Evenly spaced overlaps from 1/2 to 1 inclusive.
inline std::vector<double> overlap_grid(std::size_t n) {
  if (n < 2) throw InputError("overlap grid needs at least 2 points");
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = 0.5 + 0.5 * static_cast<double>(i) / (n - 1);
  return grid;
}

struct SoundnessFailure {
  std::size_t trial = 0;
  std::size_t m = 0;
  std::string order;
  double entropy_bits = 0.0;
  double bound_bits = 0.0;
  double slack = 0.0;
  std::string reason;
};

struct OrderSlack {
  RenyiOrder order = RenyiOrder::shannon();
  std::size_t checks = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  double max_slack = -std::numeric_limits<double>::infinity();
};

struct SoundnessReport {
  std::size_t trials = 0;
  std::size_t max_m = 0;
  std::uint64_t seed = 0;
  std::vector<OrderSlack> per_order;
  std::vector<SoundnessFailure> failures;

  bool passed() const { return failures.empty(); }
};

inline std::string order_label(const RenyiOrder& order) {
  if (order.is_shannon()) return "shannon";
  if (order.is_min_entropy()) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", order.alpha());
  return buf;
}

inline constexpr double kSoundnessSlack = 1e-9;

/// Realizes (g, T), recomputes both from the realization, and compares the
/// entropy of the realized statistics against each bound. `bound_offset` is
/// added to every bound value (harness self-test).
inline void check_instance(const ExpectationVector& g, const AntiCommutationMatrix& t,
                           std::span<const RenyiOrder> orders, std::size_t trial,
                           SoundnessReport& report, double bound_offset = 0.0) {
  std::optional<Realization> real;
  try {
    real.emplace(construct_realization(g, t));
  } catch (const std::exception& e) {
    report.failures.push_back({trial, t.m(), "-", 0.0, 0.0, 0.0,
                               std::string("realization failed: ") + e.what()});
    return;
  }
  const auto g_back = expectation_vector(real->state, real->observables);
  const auto t_back = effective_anticommutators(real->state, real->observables);
  const auto dist = dist_from_g(g_back);

  for (std::size_t o = 0; o < orders.size(); ++o) {
    const double entropy = renyi_cond_entropy(orders[o], dist);
    const double b = bound(orders[o], t_back).value_bits + bound_offset;
    const double slack = entropy - b;
    auto& stats = report.per_order[o];
    ++stats.checks;
    stats.min_slack = std::min(stats.min_slack, slack);
    stats.max_slack = std::max(stats.max_slack, slack);
    if (slack < -kSoundnessSlack) {
      report.failures.push_back(
          {trial, t.m(), order_label(orders[o]), entropy, b, slack, "bound exceeds entropy"});
    }
  }
}

inline SoundnessReport make_soundness_report(std::span<const RenyiOrder> orders) {
  SoundnessReport report;
  for (const auto& o : orders) report.per_order.push_back({o});
  return report;
}

/// End-to-end soundness sweep over random feasible instances with
/// M in [1, max_m]; trial i depends only on (seed, i).
inline SoundnessReport verify_soundness(std::size_t trials, std::size_t max_m,
                                        std::span<const RenyiOrder> orders, std::uint64_t seed,
                                        double bound_offset = 0.0) {
  if (trials < 1) throw InputError("verify_soundness: need at least one trial");
  if (max_m < 1) throw InputError("verify_soundness: max_m must be positive");
  SoundnessReport report = make_soundness_report(orders);
  report.trials = trials;
  report.max_m = max_m;
  report.seed = seed;
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng(derive_seed(seed, i));
    const auto m = static_cast<std::size_t>(rng.uniform_int(1, static_cast<int>(max_m)));
    const auto pair = sampling::random_feasible_pair(rng, m);
    check_instance(pair.g, pair.t, orders, i, report, bound_offset);
  }
  return report;
}

}  // namespace ucert
