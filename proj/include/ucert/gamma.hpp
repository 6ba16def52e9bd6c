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

// Hermitian, traceless, pairwise anti-commuting generators (Jordan-Wigner
// chain) and the Bloch-type states and binary observables built on them.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ucert/error.hpp"
#include "ucert/matcore.hpp"

namespace ucert {

namespace pauli {

inline ComplexMatrix identity() { return ComplexMatrix::identity(2); }
inline ComplexMatrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline ComplexMatrix y() { return {{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}}; }
inline ComplexMatrix z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

}  // namespace pauli

/// Dimension 2^ceil((m-1)/2) needed for m anti-commuting generators, with
/// d = 2 for m <= 1 (no 1x1 traceless involution exists).
inline std::size_t anticommuting_dimension(std::size_t m) {
  if (m <= 1) return 2;
  const std::size_t qubits = m / 2;  // == ceil((m - 1) / 2)
  return std::size_t{1} << qubits;
}

struct GammaSet {
  std::size_t dim = 0;
  std::vector<ComplexMatrix> operators;

  std::size_t count() const { return operators.size(); }
};

/// Jordan-Wigner chain over n qubits: for pair p,
/// Z^{(p-1)} X I..., Z^{(p-1)} Y I..., then Z^{n} when m is odd.
inline GammaSet build_gamma_set(int m) {
  if (m < 1) throw InputError("build_gamma_set: need at least one operator");
  if (m == 1) return GammaSet{2, {pauli::z()}};

  const std::size_t qubits = static_cast<std::size_t>(m) / 2;
  GammaSet out;
  out.dim = std::size_t{1} << qubits;

  auto chain = [&](std::size_t p, const ComplexMatrix& site) {
    ComplexMatrix acc = ComplexMatrix::identity(1);
    for (std::size_t q = 0; q < qubits; ++q) {
      const ComplexMatrix factor = q < p ? pauli::z() : (q == p ? site : pauli::identity());
      acc = kron(acc, factor);
    }
    return acc;
  };

  for (std::size_t p = 0; p < qubits; ++p) {
    out.operators.push_back(chain(p, pauli::x()));
    out.operators.push_back(chain(p, pauli::y()));
  }
  if (m % 2 == 1) out.operators.push_back(chain(qubits, pauli::identity()));
  return out;
}

/// Density matrix: Hermitian, PSD, unit trace.
class QuantumState {
 public:
  explicit QuantumState(ComplexMatrix rho) : rho_(std::move(rho)) {
    if (!rho_.is_square() || rho_.rows() == 0) throw InputError("state must be square");
    if (!is_hermitian(rho_, 1e-9)) throw InputError("state is not Hermitian");
    if (std::abs(rho_.trace() - Complex(1.0)) > 1e-10) {
      throw InputError("state trace differs from 1");
    }
    if (!is_psd(rho_, 1e-9)) throw InputError("state is not positive semi-definite");
  }

  std::size_t dim() const { return rho_.rows(); }
  const ComplexMatrix& matrix() const { return rho_; }

 private:
  ComplexMatrix rho_;
};

/// Two-outcome observable: Hermitian with spectrum in [-1, 1].
class BinaryObservable {
 public:
  explicit BinaryObservable(ComplexMatrix a) : a_(std::move(a)) {
    if (!a_.is_square() || a_.rows() == 0) throw InputError("observable must be square");
    if (!is_hermitian(a_, 1e-9)) throw InputError("observable is not Hermitian");
    const auto eig = hermitian_eigen(a_);
    if (eig.values.front() > 1.0 + 1e-9 || eig.values.back() < -1.0 - 1e-9) {
      throw InputError("observable spectrum leaves [-1, 1]");
    }
    projective_ = max_abs_diff(a_ * a_, ComplexMatrix::identity(a_.rows())) <= 1e-10;
  }

  std::size_t dim() const { return a_.rows(); }
  const ComplexMatrix& matrix() const { return a_; }
  bool projective() const { return projective_; }

 private:
  ComplexMatrix a_;
  bool projective_ = false;
};

/// rho = (I + sum_j x_j Gamma_j) / d; valid iff |x| <= 1.
inline QuantumState state_from_bloch(std::span<const double> x, const GammaSet& gammas) {
  if (x.size() != gammas.count()) {
    throw InputError("state_from_bloch: Bloch vector length " + std::to_string(x.size()) +
                     " != generator count " + std::to_string(gammas.count()));
  }
  double norm2 = 0.0;
  for (double xi : x) norm2 += xi * xi;
  if (norm2 > 1.0 + 1e-12) {
    throw InputError("state_from_bloch: |x|^2 = " + std::to_string(norm2) + " exceeds 1");
  }
  ComplexMatrix rho = ComplexMatrix::identity(gammas.dim);
  for (std::size_t j = 0; j < x.size(); ++j) rho += x[j] * gammas.operators[j];
  rho *= Complex(1.0 / static_cast<double>(gammas.dim));
  return QuantumState(std::move(rho));
}

/// tr(A rho) for generic operators; throws if the imaginary part exceeds 1e-10.
inline double real_trace_product(const ComplexMatrix& a, const ComplexMatrix& rho) {
  if (a.rows() != rho.rows() || a.cols() != rho.cols()) {
    throw InputError("dimension mismatch between operator and state");
  }
  Complex acc{};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * rho(k, i);
  if (std::abs(acc.imag()) > 1e-10) {
    throw InputError("expectation value has imaginary part " + std::to_string(acc.imag()));
  }
  return acc.real();
}

inline double expectation(const QuantumState& state, const BinaryObservable& obs) {
  return real_trace_product(obs.matrix(), state.matrix());
}

}  // namespace ucert
