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

// Device-independent certification of the anti-commutation norm. Alice's
// M settings play combined CHSH subgames against an auxiliary device; every
// observed violation beta_jk caps |epsilon_jk| and hence ||T||.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ucert/bounds.hpp"
#include "ucert/ellipsoid.hpp"
#include "ucert/error.hpp"
#include "ucert/gamma.hpp"
#include "ucert/matcore.hpp"
#include "ucert/random.hpp"

namespace ucert {

inline constexpr double kTsirelson = 2.0 * std::numbers::sqrt2;
inline constexpr double kTsirelsonRoundoff = 1e-13;

/// Unordered setting pair, stored with first < second (0-based).
using SettingPair = std::pair<std::size_t, std::size_t>;

inline SettingPair normalize_pair(std::size_t j, std::size_t k, std::size_t m) {
  if (j == k || j >= m || k >= m) {
    throw InputError("invalid setting pair (" + std::to_string(j) + ", " + std::to_string(k) +
                     ") for M = " + std::to_string(m));
  }
  return j < k ? SettingPair{j, k} : SettingPair{k, j};
}

/// Shared bipartite state, Alice's M settings and Bob's settings B_{jk,t}.
class DevicePair {
 public:
  using BobKey = std::pair<SettingPair, int>;

  DevicePair(QuantumState state, std::vector<BinaryObservable> alice,
             std::map<BobKey, BinaryObservable> bob)
      : state_(std::move(state)), alice_(std::move(alice)), bob_(std::move(bob)) {
    if (alice_.size() < 2) throw InputError("device pair needs at least two settings");
    const std::size_t d = alice_.front().dim();
    if (state_.dim() != d * bob_dim()) {
      throw InputError("bipartite state dimension does not match the local devices");
    }
    for (const auto& a : alice_) {
      if (a.dim() != d) throw InputError("Alice's observables differ in dimension");
      if (!a.projective()) throw InputError("Alice's observables must be projective");
    }
    for (std::size_t j = 0; j < m(); ++j)
      for (std::size_t k = j + 1; k < m(); ++k)
        for (int t : {0, 1}) {
          auto it = bob_.find({{j, k}, t});
          if (it == bob_.end()) {
            throw InputError("missing Bob setting for pair (" + std::to_string(j) + ", " +
                             std::to_string(k) + ")");
          }
          if (!it->second.projective()) throw InputError("Bob's observables must be projective");
        }
  }

  std::size_t m() const { return alice_.size(); }
  const QuantumState& state() const { return state_; }
  const BinaryObservable& alice(std::size_t j) const { return alice_.at(j); }
  const BinaryObservable& bob(std::size_t j, std::size_t k, int t) const {
    return bob_.at({normalize_pair(j, k, m()), t});
  }

 private:
  std::size_t bob_dim() const { return bob_.empty() ? 1 : bob_.begin()->second.dim(); }

  QuantumState state_;
  std::vector<BinaryObservable> alice_;
  std::map<BobKey, BinaryObservable> bob_;
};

/// Pure state |psi><psi| from an unnormalized-safe amplitude vector.
inline QuantumState pure_state(const std::vector<Complex>& psi) {
  double norm2 = 0.0;
  for (const auto& a : psi) norm2 += std::norm(a);
  const std::size_t n = psi.size();
  ComplexMatrix rho(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rho(i, j) = psi[i] * std::conj(psi[j]) / norm2;
  return QuantumState(std::move(rho));
}

/// Maximally entangled state on d x d with A_j = Gamma_j and
/// B_{jk,t} = (Gamma_j^T + (-1)^t Gamma_k^T) / sqrt 2.
inline DevicePair ideal_devices(int m) {
  if (m < 2) throw InputError("ideal_devices: need M >= 2");
  const GammaSet gammas = build_gamma_set(m);
  const std::size_t d = gammas.dim;

  std::vector<Complex> psi(d * d, 0.0);
  for (std::size_t k = 0; k < d; ++k) psi[k * d + k] = 1.0;

  std::vector<BinaryObservable> alice;
  for (const auto& g : gammas.operators) alice.emplace_back(g);

  std::map<DevicePair::BobKey, BinaryObservable> bob;
  const Complex inv_sqrt2(1.0 / std::numbers::sqrt2);
  for (std::size_t j = 0; j < gammas.count(); ++j)
    for (std::size_t k = j + 1; k < gammas.count(); ++k) {
      const auto gj = gammas.operators[j].transpose();
      const auto gk = gammas.operators[k].transpose();
      bob.emplace(DevicePair::BobKey{{j, k}, 0}, BinaryObservable((gj + gk) * inv_sqrt2));
      bob.emplace(DevicePair::BobKey{{j, k}, 1}, BinaryObservable((gj - gk) * inv_sqrt2));
    }
  return DevicePair(pure_state(psi), std::move(alice), std::move(bob));
}

/// Devices around an explicit projective realization: the purification
/// sum_k (sqrt(rho)|k>) |k> shared with Bob, who measures
/// ((A_j +- A_k) / |A_j +- A_k|)^T.
inline DevicePair devices_from_realization(const QuantumState& rho,
                                           std::span<const BinaryObservable> alice) {
  const std::size_t d = rho.dim();
  const ComplexMatrix root = psd_sqrt(rho.matrix());
  std::vector<Complex> psi(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) psi[i * d + k] = root(i, k);

  std::map<DevicePair::BobKey, BinaryObservable> bob;
  for (std::size_t j = 0; j < alice.size(); ++j)
    for (std::size_t k = j + 1; k < alice.size(); ++k)
      for (int t : {0, 1}) {
        const double sign = t == 0 ? 1.0 : -1.0;
        ComplexMatrix b = alice[j].matrix() + Complex(sign) * alice[k].matrix();
        const auto eig = hermitian_eigen(b);
        const double scale = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
        // A_j + sign A_k squares to a multiple of I only when the pair comes
        // from an anti-commuting construction; otherwise fall back to A_j.
        b = scale > 1e-6 ? b * Complex(1.0 / scale) : alice[j].matrix();
        if (max_abs_diff(b * b, ComplexMatrix::identity(d)) > 1e-10) b = alice[j].matrix();
        bob.emplace(DevicePair::BobKey{{j, k}, t}, BinaryObservable(b.transpose()));
      }
  return DevicePair(pure_state(psi), {alice.begin(), alice.end()}, std::move(bob));
}

namespace detail {

struct Correlator {
  const BinaryObservable* a;
  const BinaryObservable* b;
  double sign;
};

inline std::array<Correlator, 4> chsh_terms(const DevicePair& dev, const SettingPair& p) {
  const auto& aj = dev.alice(p.first);
  const auto& ak = dev.alice(p.second);
  const auto& b0 = dev.bob(p.first, p.second, 0);
  const auto& b1 = dev.bob(p.first, p.second, 1);
  return {Correlator{&aj, &b0, 1.0}, Correlator{&aj, &b1, 1.0}, Correlator{&ak, &b0, 1.0},
          Correlator{&ak, &b1, -1.0}};
}

struct LocalMoments {
  double a = 0.0;   // <A (x) I>
  double b = 0.0;   // <I (x) B>
  double ab = 0.0;  // <A (x) B>
};

inline LocalMoments moments(const DevicePair& dev, const Correlator& c) {
  const std::size_t da = c.a->dim();
  const std::size_t db = c.b->dim();
  const auto& rho = dev.state().matrix();
  return {real_trace_product(kron(c.a->matrix(), ComplexMatrix::identity(db)), rho),
          real_trace_product(kron(ComplexMatrix::identity(da), c.b->matrix()), rho),
          real_trace_product(kron(c.a->matrix(), c.b->matrix()), rho)};
}

}  // namespace detail

/// beta_jk = <A_j (x) (B0 + B1) + A_k (x) (B0 - B1)>, evaluated exactly.
inline double chsh_expectation(const DevicePair& dev, std::size_t j, std::size_t k) {
  const SettingPair p = normalize_pair(j, k, dev.m());
  double beta = 0.0;
  for (const auto& c : detail::chsh_terms(dev, p)) beta += c.sign * detail::moments(dev, c).ab;
  return beta;
}

struct CHSHEntry {
  std::size_t j = 0;
  std::size_t k = 0;
  double beta_hat = 0.0;
  std::size_t rounds_used = 0;
  double std_error = 0.0;
};

/// Samples each of the four correlators `rounds_per_setting` times from
/// Pr(a, b) = (1 + a<A> + b<B> + ab<AB>) / 4 (memoryless devices). Stream
/// for correlator c is seeded by (seed, j, k, c).
inline CHSHEntry sample_chsh(const DevicePair& dev, std::size_t j, std::size_t k,
                             std::size_t rounds_per_setting, std::uint64_t seed) {
  if (rounds_per_setting < 1) throw InputError("sample_chsh: need at least one round");
  const SettingPair p = normalize_pair(j, k, dev.m());
  const auto terms = detail::chsh_terms(dev, p);

  CHSHEntry out{p.first, p.second, 0.0, 4 * rounds_per_setting, 0.0};
  double variance_sum = 0.0;
  for (std::size_t c = 0; c < terms.size(); ++c) {
    const auto mom = detail::moments(dev, terms[c]);
    // Outcome order: (+,+), (+,-), (-,+), (-,-).
    std::array<double, 4> prob{};
    const int signs[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    for (int o = 0; o < 4; ++o) {
      const double a = signs[o][0];
      const double b = signs[o][1];
      prob[o] = 0.25 * (1.0 + a * mom.a + b * mom.b + a * b * mom.ab);
      if (prob[o] < -1e-9 || prob[o] > 1.0 + 1e-9) {
        throw InputError("sample_chsh: outcome probability " + std::to_string(prob[o]) +
                         " outside [0, 1]; devices are inconsistent");
      }
      prob[o] = std::clamp(prob[o], 0.0, 1.0);
    }
    const double total = prob[0] + prob[1] + prob[2] + prob[3];
    // Product ab is +1 on outcomes 0 and 3, -1 on outcomes 1 and 2.
    const double cut_low = prob[0] / total;
    const double cut_high = (prob[0] + prob[1] + prob[2]) / total;

    Rng rng(derive_seed(seed, p.first, p.second, c));
    long long agree = 0;
    for (std::size_t n = 0; n < rounds_per_setting; ++n) {
      const double u = rng.uniform();
      agree += (u < cut_low || u >= cut_high) ? 1 : -1;
    }
    const double mean = static_cast<double>(agree) / static_cast<double>(rounds_per_setting);
    out.beta_hat += terms[c].sign * mean;
    variance_sum += std::max(0.0, 1.0 - mean * mean);
  }
  out.std_error = std::sqrt(variance_sum / static_cast<double>(rounds_per_setting));
  return out;
}

/// c(beta) = (|beta|/4) sqrt(8 - beta^2) after clamping beta to the
/// Tsirelson range; no constraint (c = 1) at or below the classical value 2.
inline double epsilon_bound_from_beta(double beta) {
  const double b = std::min(std::abs(beta), kTsirelson);
  if (b <= 2.0) return 1.0;
  // The square root has infinite slope at Tsirelson; an analytic beta that
  // is off by a few ulps would otherwise come back as c ~ 1e-8.
  if (kTsirelson - b <= kTsirelsonRoundoff) return 0.0;
  return std::clamp(0.25 * b * std::sqrt(std::max(0.0, 8.0 - b * b)), 0.0, 1.0);
}

struct TPrime {
  AntiCommutationMatrix matrix;
  double r_prime = 1.0;
};

/// T' with unit diagonal and c_jk off the diagonal; r' = max(1, ||T'||).
inline TPrime tprime(const std::map<SettingPair, double>& c_values, std::size_t m) {
  if (m < 1) throw InputError("tprime: M must be positive");
  SymmetricRealMatrix t(m);
  for (std::size_t j = 0; j < m; ++j) t.set(j, j, 1.0);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = j + 1; k < m; ++k) {
      auto it = c_values.find({j, k});
      if (it == c_values.end()) {
        throw InputError("tprime: missing c value for pair (" + std::to_string(j) + ", " +
                         std::to_string(k) + ")");
      }
      if (!(it->second >= 0.0 && it->second <= 1.0)) {
        throw InputError("tprime: c value outside [0, 1]");
      }
      t.set(j, k, it->second);
    }
  const double norm = spectral_norm(t);
  return {AntiCommutationMatrix(std::move(t)),
          std::clamp(norm, 1.0, static_cast<double>(m))};
}

struct CertificationReport {
  std::size_t m = 0;
  std::vector<CHSHEntry> stats;
  std::map<SettingPair, double> c_values;
  AntiCommutationMatrix t_prime;
  double r_prime = 1.0;
  std::vector<UncertaintyBound> bounds;
  std::size_t rounds_per_setting = 0;
  std::size_t total_rounds = 0;
  std::uint64_t seed = 0;
  bool exact = false;
  /// Pairs whose estimate did not exceed the classical value 2.
  std::size_t unviolated_pairs = 0;
};

/// Full procedure: estimate every beta_jk (exactly when rounds_per_setting
/// is 0), cap |epsilon_jk|, bound ||T|| by ||T'|| and evaluate the bounds.
inline CertificationReport certify_pipeline(int m, std::size_t rounds_per_setting,
                                            std::uint64_t seed,
                                            std::span<const RenyiOrder> orders,
                                            std::optional<DevicePair> devices = std::nullopt) {
  if (m < 2) throw InputError("certify_pipeline: need M >= 2");
  if (!devices) devices.emplace(ideal_devices(m));
  if (devices->m() != static_cast<std::size_t>(m)) {
    throw InputError("certify_pipeline: devices have a different number of settings");
  }

  CertificationReport rep;
  rep.m = static_cast<std::size_t>(m);
  rep.rounds_per_setting = rounds_per_setting;
  rep.seed = seed;
  rep.exact = rounds_per_setting == 0;

  for (std::size_t j = 0; j < rep.m; ++j)
    for (std::size_t k = j + 1; k < rep.m; ++k) {
      CHSHEntry e = rep.exact ? CHSHEntry{j, k, chsh_expectation(*devices, j, k), 0, 0.0}
                              : sample_chsh(*devices, j, k, rounds_per_setting, seed);
      rep.total_rounds += e.rounds_used;
      if (std::abs(e.beta_hat) <= 2.0) ++rep.unviolated_pairs;
      rep.c_values[{j, k}] = epsilon_bound_from_beta(e.beta_hat);
      rep.stats.push_back(e);
    }

  auto tp = tprime(rep.c_values, rep.m);
  rep.t_prime = std::move(tp.matrix);
  rep.r_prime = tp.r_prime;
  for (const auto& order : orders) rep.bounds.push_back(bound(order, rep.m, rep.r_prime));
  return rep;
}

}  // namespace ucert
