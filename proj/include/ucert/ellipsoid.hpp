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

// Effective anti-commutators, expectation vectors, and the ellipsoid
// condition g g^T <= T together with its explicit realization.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ucert/error.hpp"
#include "ucert/gamma.hpp"
#include "ucert/matcore.hpp"
#include "ucert/random.hpp"

namespace ucert {

/// Symmetric matrix of effective anti-commutators, <A_j^2> on the diagonal.
///
/// Construction checks symmetry, diag in (0, 1] and |T_jk| <= sqrt(T_jj T_kk).
/// Positive semi-definiteness is a property of matrices that come from a
/// physical realization; certificate matrices built from CHSH data need not
/// have it, so it is checked by the operations that rely on it.
class AntiCommutationMatrix {
 public:
  AntiCommutationMatrix() = default;

  explicit AntiCommutationMatrix(SymmetricRealMatrix t) : t_(std::move(t)) {
    const std::size_t m = t_.dim();
    if (m == 0) throw InputError("anti-commutation matrix must be non-empty");
    for (std::size_t j = 0; j < m; ++j) {
      const double d = t_(j, j);
      if (!(d > 0.0) || d > 1.0 + 1e-9) {
        throw InputError("diagonal entry " + std::to_string(j) + " = " + std::to_string(d) +
                         " outside (0, 1]");
      }
    }
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k)
        if (std::abs(t_(j, k)) > std::sqrt(t_(j, j) * t_(k, k)) + 1e-9) {
          throw InputError("off-diagonal entry (" + std::to_string(j) + ", " +
                           std::to_string(k) + ") exceeds sqrt(T_jj T_kk)");
        }
  }

  explicit AntiCommutationMatrix(const RealMatrix& m, double sym_tol = 1e-12)
      : AntiCommutationMatrix(SymmetricRealMatrix(m, sym_tol)) {}

  std::size_t m() const { return t_.dim(); }
  double operator()(std::size_t j, std::size_t k) const { return t_(j, k); }
  const SymmetricRealMatrix& symmetric() const { return t_; }
  const RealMatrix& matrix() const { return t_.matrix(); }

  /// All diagonal entries equal 1 (projective observables).
  bool projective() const {
    for (std::size_t j = 0; j < m(); ++j)
      if (std::abs(t_(j, j) - 1.0) > 1e-9) return false;
    return true;
  }

  double max_diagonal() const { return t_.max_diagonal(); }

 private:
  SymmetricRealMatrix t_;
};

/// Vector of expectation values, each in [-1, 1].
class ExpectationVector {
 public:
  ExpectationVector() = default;

  explicit ExpectationVector(std::vector<double> g) : g_(std::move(g)) {
    for (auto& x : g_) {
      if (!(std::abs(x) <= 1.0 + 1e-9)) {
        throw InputError("expectation value " + std::to_string(x) + " outside [-1, 1]");
      }
      x = std::clamp(x, -1.0, 1.0);
    }
  }

  std::size_t m() const { return g_.size(); }
  double operator[](std::size_t k) const { return g_[k]; }
  std::span<const double> values() const { return g_; }

 private:
  std::vector<double> g_;
};

namespace detail {

inline void require_matching_dims(const QuantumState& state,
                                  std::span<const BinaryObservable> obs) {
  if (obs.empty()) throw InputError("observable list is empty");
  for (const auto& a : obs)
    if (a.dim() != state.dim()) {
      throw InputError("observable dimension " + std::to_string(a.dim()) +
                       " != state dimension " + std::to_string(state.dim()));
    }
}

}  // namespace detail

/// T_jk = tr({A_j, A_k} rho) / 2, T_jj = tr(A_j^2 rho).
inline AntiCommutationMatrix effective_anticommutators(const QuantumState& state,
                                                       std::span<const BinaryObservable> obs) {
  detail::require_matching_dims(state, obs);
  const std::size_t m = obs.size();
  SymmetricRealMatrix t(m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = j; k < m; ++k) {
      const ComplexMatrix prod = obs[j].matrix() * obs[k].matrix();
      // tr((AB + BA) rho) / 2 = Re tr(AB rho) for Hermitian A, B, rho.
      Complex acc{};
      const auto& rho = state.matrix();
      for (std::size_t a = 0; a < prod.rows(); ++a)
        for (std::size_t b = 0; b < prod.cols(); ++b) acc += prod(a, b) * rho(b, a);
      t.set(j, k, acc.real());
    }
  }
  return AntiCommutationMatrix(std::move(t));
}

inline ExpectationVector expectation_vector(const QuantumState& state,
                                            std::span<const BinaryObservable> obs) {
  detail::require_matching_dims(state, obs);
  std::vector<double> g;
  g.reserve(obs.size());
  for (const auto& a : obs) g.push_back(expectation(state, a));
  return ExpectationVector(std::move(g));
}

/// T - g g^T as a plain matrix.
inline RealMatrix ellipsoid_slack(const ExpectationVector& g, const AntiCommutationMatrix& t) {
  if (g.m() != t.m()) throw InputError("expectation vector and matrix sizes differ");
  RealMatrix s = t.matrix();
  for (std::size_t j = 0; j < g.m(); ++j)
    for (std::size_t k = 0; k < g.m(); ++k) s(j, k) -= g[j] * g[k];
  return s;
}

/// g g^T <= T, tested spectrally on T - g g^T.
inline bool check_ellipsoid(const ExpectationVector& g, const AntiCommutationMatrix& t,
                            double tol = 1e-9) {
  return is_psd(ellipsoid_slack(g, t), tol);
}

struct Realization {
  QuantumState state;
  std::vector<BinaryObservable> observables;
  std::size_t rank = 0;
};

/// Builds rho and {A_j} with expectation vector g and anti-commutation
/// matrix T: A_j = sum_i R_ji Gamma_i with R R^T = T, and rho the Bloch
/// state with x = R^+ g.
inline Realization construct_realization(const ExpectationVector& g,
                                         const AntiCommutationMatrix& t) {
  if (g.m() != t.m()) throw InputError("expectation vector and matrix sizes differ");
  if (!is_psd(t.symmetric(), kRankTol)) {
    throw InfeasibleError("anti-commutation matrix is not positive semi-definite");
  }
  if (!check_ellipsoid(g, t, kRankTol)) {
    throw InfeasibleError("ellipsoid condition g g^T <= T is violated");
  }

  const RealMatrix r = rank_factor(t.symmetric(), kRankTol);
  const std::size_t rank = r.cols();
  const GammaSet gammas = build_gamma_set(static_cast<int>(rank));

  std::vector<BinaryObservable> observables;
  observables.reserve(t.m());
  for (std::size_t j = 0; j < t.m(); ++j) {
    ComplexMatrix a(gammas.dim, gammas.dim);
    for (std::size_t i = 0; i < rank; ++i) a += Complex(r(j, i)) * gammas.operators[i];
    observables.emplace_back(std::move(a));
  }

  std::vector<double> x = mat_vec(left_inverse(r), g.values());
  double norm2 = 0.0;
  for (double xi : x) norm2 += xi * xi;
  if (norm2 > 1.0) {
    // Feasibility was accepted at tolerance; pull the Bloch vector back onto
    // the unit sphere and let the round-trip check below judge the result.
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto& xi : x) xi *= scale;
  }

  Realization out{state_from_bloch(x, gammas), std::move(observables), rank};

  const auto t_back = effective_anticommutators(out.state, out.observables);
  const auto g_back = expectation_vector(out.state, out.observables);
  const double t_err = max_abs_diff(t_back.matrix(), t.matrix());
  double g_err = 0.0;
  for (std::size_t k = 0; k < g.m(); ++k) g_err = std::max(g_err, std::abs(g_back[k] - g[k]));
  if (t_err > 1e-9 || g_err > 1e-9) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "realization round trip off by T: %.3g, g: %.3g", t_err, g_err);
    throw InternalConsistencyError(msg);
  }
  return out;
}

struct DimensionRequirement {
  std::size_t rank = 0;
  std::size_t dim = 0;
};

/// Number of anti-commuting generators and Hilbert-space dimension that
/// suffice to realize T.
inline DimensionRequirement min_dimension(const AntiCommutationMatrix& t) {
  const std::size_t rank = numerical_rank(t.symmetric(), kRankTol);
  if (rank == 0) throw InputError("min_dimension: matrix has rank zero");
  return {rank, anticommuting_dimension(rank)};
}

struct Point2 {
  double g1 = 0.0;
  double g2 = 0.0;
};

/// n samples of the boundary g^T T^{-1} g = 1 for T = [[1, e], [e, 1]].
/// At |e| = 1 the ellipse collapses to the diagonal segment.
inline std::vector<Point2> ellipse_boundary(double epsilon, int n) {
  if (!(std::abs(epsilon) <= 1.0)) throw InputError("ellipse_boundary: |epsilon| > 1");
  if (n < 3) throw InputError("ellipse_boundary: need at least 3 points");
  const double major = std::sqrt(1.0 + epsilon);
  const double minor = std::sqrt(1.0 - epsilon);
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double phi = 2.0 * std::numbers::pi * i / n;
    const double a = major * std::cos(phi) * inv_sqrt2;
    const double b = minor * std::sin(phi) * inv_sqrt2;
    pts.push_back({std::clamp(a + b, -1.0, 1.0), std::clamp(a - b, -1.0, 1.0)});
  }
  return pts;
}

namespace sampling {

struct FeasiblePair {
  ExpectationVector g;
  AntiCommutationMatrix t;
};

/// Random T with unit diagonal (normalized Gram matrix of random rank) and
/// a feasible g; every fourth draw lies on the boundary of the ellipsoid.
inline FeasiblePair random_feasible_pair(Rng& rng, std::size_t m) {
  const auto cols = static_cast<std::size_t>(rng.uniform_int(1, static_cast<int>(m)));
  RealMatrix factor(m, cols);
  for (auto& x : factor.data()) x = rng.normal();
  RealMatrix w = factor * factor.transpose();
  std::vector<double> inv_sqrt(m);
  for (std::size_t i = 0; i < m; ++i) inv_sqrt[i] = 1.0 / std::sqrt(w(i, i));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) w(i, j) *= inv_sqrt[i] * inv_sqrt[j];
  for (std::size_t i = 0; i < m; ++i) w(i, i) = 1.0;
  AntiCommutationMatrix t(SymmetricRealMatrix(w, 1e-9));

  // g = R x with R R^T = T covers the same set as T^{1/2} u and keeps g
  // exactly in the range of T, which a square root of a singular T does not.
  const RealMatrix r = rank_factor(t.symmetric());
  const bool boundary = rng.uniform() < 0.25;
  const auto x = boundary ? rng.unit_vector(r.cols()) : rng.ball_point(r.cols());
  std::vector<double> g = mat_vec(r, x);
  for (auto& x : g) x = std::clamp(x, -1.0, 1.0);
  return {ExpectationVector(std::move(g)), std::move(t)};
}

/// Haar-ish random unitary from Gram-Schmidt on a complex Gaussian matrix.
inline ComplexMatrix random_unitary(Rng& rng, std::size_t d) {
  ComplexMatrix u(d, d);
  for (auto& x : u.data()) x = Complex(rng.normal(), rng.normal());
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      Complex overlap{};
      for (std::size_t i = 0; i < d; ++i) overlap += std::conj(u(i, k)) * u(i, j);
      for (std::size_t i = 0; i < d; ++i) u(i, j) -= overlap * u(i, k);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < d; ++i) norm += std::norm(u(i, j));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < d; ++i) u(i, j) /= norm;
  }
  return u;
}

/// Random projective observable U diag(+-1) U^dagger.
inline BinaryObservable random_projective_observable(Rng& rng, std::size_t d) {
  const ComplexMatrix u = random_unitary(rng, d);
  ComplexMatrix diag(d, d);
  for (std::size_t i = 0; i < d; ++i) diag(i, i) = rng.uniform() < 0.5 ? 1.0 : -1.0;
  ComplexMatrix a = u * diag * u.adjoint();
  // Remove the rounding-level anti-Hermitian part.
  a = (a + a.adjoint()) * Complex(0.5);
  return BinaryObservable(std::move(a));
}

struct PhysicalInstance {
  QuantumState state;
  std::vector<BinaryObservable> observables;
};

/// Random Bloch-type state in dimension d = 2^qubits together with m random
/// projective observables.
inline PhysicalInstance random_physical_instance(Rng& rng, std::size_t m, std::size_t qubits) {
  const GammaSet gammas = build_gamma_set(static_cast<int>(2 * qubits + 1));
  const auto x = rng.ball_point(gammas.count());
  PhysicalInstance out{state_from_bloch(x, gammas), {}};
  for (std::size_t j = 0; j < m; ++j)
    out.observables.push_back(random_projective_observable(rng, gammas.dim));
  return out;
}

}  // namespace sampling

}  // namespace ucert
