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

// Deterministic random streams. Every consumer derives its own stream from a
// (seed, index...) tuple so results never depend on evaluation order.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace ucert {

/// SplitMix64 finalizer; used to mix seeds with stream indices.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

template <typename... Ix>
std::uint64_t derive_seed(std::uint64_t seed, Ix... indices) {
  std::uint64_t s = mix64(seed);
  ((s = mix64(s ^ static_cast<std::uint64_t>(indices))), ...);
  return s;
}

/// mt19937_64 with portable uniform/normal conversions (the standard
/// distributions are implementation-defined, the engine is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(engine_() % span);
  }

  /// Uniform direction on the unit sphere in R^n.
  std::vector<double> unit_vector(std::size_t n) {
    std::vector<double> v(n);
    double norm = 0.0;
    do {
      norm = 0.0;
      for (auto& x : v) {
        x = normal();
        norm += x * x;
      }
    } while (norm < 1e-300);
    norm = std::sqrt(norm);
    for (auto& x : v) x /= norm;
    return v;
  }

  /// Uniform point in the closed unit ball in R^n.
  std::vector<double> ball_point(std::size_t n) {
    auto v = unit_vector(n);
    const double radius = std::pow(uniform(), 1.0 / static_cast<double>(n));
    for (auto& x : v) x *= radius;
    return v;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ucert
