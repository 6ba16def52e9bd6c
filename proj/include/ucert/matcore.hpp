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

// Dense real/complex matrices sized for small quantum systems (d <= 256).
// All eigen-decompositions go through a cyclic Jacobi sweep that works for
// both real symmetric and complex Hermitian input.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "ucert/error.hpp"

namespace ucert {

using Complex = std::complex<double>;

inline constexpr double kRankTol = 1e-9;

namespace detail {

template <typename T>
inline constexpr bool is_complex_v = std::is_same_v<T, Complex>;

template <typename T>
T conj_of(const T& x) {
  if constexpr (is_complex_v<T>) {
    return std::conj(x);
  } else {
    return x;
  }
}

template <typename T>
double real_of(const T& x) {
  if constexpr (is_complex_v<T>) {
    return x.real();
  } else {
    return x;
  }
}

}  // namespace detail

/// Row-major dense matrix over double or std::complex<double>.
template <typename T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) {
        throw InputError("ragged matrix literal");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }

  Matrix adjoint() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        out(j, i) = detail::conj_of((*this)(i, j));
    return out;
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  T trace() const {
    T acc{};
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) acc += (*this)(i, i);
    return acc;
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(T s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, T s) { return a *= s; }
  friend Matrix operator*(T s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      throw InputError("matrix product shape mismatch");
    }
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T aik = a(i, k);
        if (aik == T{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    }
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw InputError("matrix shape mismatch");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ComplexMatrix = Matrix<Complex>;
using RealMatrix = Matrix<double>;

inline ComplexMatrix to_complex(const RealMatrix& m) {
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

/// Largest entrywise |a - b|.
template <typename T>
double max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InputError("matrix shape mismatch");
  }
  double worst = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i)
    worst = std::max(worst, std::abs(da[i] - db[i]));
  return worst;
}

/// Real symmetric matrix, stored exactly symmetrized.
class SymmetricRealMatrix {
 public:
  SymmetricRealMatrix() = default;

  explicit SymmetricRealMatrix(std::size_t dim) : m_(dim, dim) {}

  /// Accepts `m` if |m - m^T| <= tol entrywise and stores (m + m^T)/2.
  explicit SymmetricRealMatrix(const RealMatrix& m, double tol = 1e-12) : m_(m) {
    if (!m.is_square()) throw InputError("symmetric matrix must be square");
    for (std::size_t i = 0; i < dim(); ++i) {
      for (std::size_t j = i + 1; j < dim(); ++j) {
        if (std::abs(m(i, j) - m(j, i)) > tol) {
          throw InputError("matrix is not symmetric at (" + std::to_string(i) +
                           ", " + std::to_string(j) + ")");
        }
        const double avg = 0.5 * (m(i, j) + m(j, i));
        m_(i, j) = avg;
        m_(j, i) = avg;
      }
    }
  }

  std::size_t dim() const { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  void set(std::size_t i, std::size_t j, double v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }

  const RealMatrix& matrix() const { return m_; }

  double max_diagonal() const {
    double best = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) best = std::max(best, m_(i, i));
    return best;
  }

 private:
  RealMatrix m_;
};

/// Eigenvalues in descending order, eigenvectors as matching columns.
template <typename T>
struct EigenDecomposition {
  std::vector<double> values;
  Matrix<T> vectors;
};

/// Cyclic Jacobi eigen-decomposition of a Hermitian (or real symmetric)
/// matrix. Only the upper triangle's Hermitian part is trusted.
template <typename T>
EigenDecomposition<T> hermitian_eigen(const Matrix<T>& input) {
  if (!input.is_square()) throw InputError("eigen-decomposition needs a square matrix");
  const std::size_t n = input.rows();
  Matrix<T> h = input;
  Matrix<T> v = Matrix<T>::identity(n);

  double frob = 0.0;
  for (const auto& x : h.data()) frob += std::norm(x);
  frob = std::sqrt(frob);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(h(p, q));
    if (std::sqrt(off) <= 1e-16 * frob || off == 0.0) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(h(p, q));
        if (mag < 1e-300) continue;

        if constexpr (detail::is_complex_v<T>) {
          // Rotate column/row q by a phase so that h(p, q) becomes real.
          const Complex phase = std::conj(h(p, q)) / mag;
          for (std::size_t k = 0; k < n; ++k) {
            h(k, q) *= phase;
            v(k, q) *= phase;
          }
          for (std::size_t k = 0; k < n; ++k) h(q, k) *= std::conj(phase);
        }

        // Real and non-zero at this point; the sign matters in the real case.
        const double apq = detail::real_of(h(p, q));
        const double app = detail::real_of(h(p, p));
        const double aqq = detail::real_of(h(q, q));
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const T hkp = h(k, p);
          const T hkq = h(k, q);
          h(k, p) = c * hkp - s * hkq;
          h(k, q) = s * hkp + c * hkq;
          const T vkp = v(k, p);
          const T vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const T hpk = h(p, k);
          const T hqk = h(q, k);
          h(p, k) = c * hpk - s * hqk;
          h(q, k) = s * hpk + c * hqk;
        }
        h(p, q) = T{};
        h(q, p) = T{};
        h(p, p) = detail::real_of(h(p, p));
        h(q, q) = detail::real_of(h(q, q));
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return detail::real_of(h(a, a)) > detail::real_of(h(b, b));
  });

  EigenDecomposition<T> out{std::vector<double>(n), Matrix<T>(n, n)};
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = detail::real_of(h(order[j], order[j]));
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

/// True iff max entrywise |m - m^dagger| <= tol.
template <typename T>
bool is_hermitian(const Matrix<T>& m, double tol) {
  if (!m.is_square()) throw InputError("is_hermitian: matrix is not square");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      if (std::abs(m(i, j) - detail::conj_of(m(j, i))) > tol) return false;
  return true;
}

template <typename T>
double min_eigenvalue(const Matrix<T>& m) {
  const auto eig = hermitian_eigen(m);
  return eig.values.empty() ? 0.0 : eig.values.back();
}

/// PSD test relative to the spectral scale: lambda_min >= -tol * max(1, ||m||).
template <typename T>
bool is_psd(const Matrix<T>& m, double tol) {
  if (!is_hermitian(m, std::max(tol, 1e-12))) {
    throw InputError("is_psd: matrix is not Hermitian");
  }
  const auto eig = hermitian_eigen(m);
  if (eig.values.empty()) return true;
  const double norm = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
  return eig.values.back() >= -tol * std::max(1.0, norm);
}

inline bool is_psd(const SymmetricRealMatrix& t, double tol) {
  return is_psd(t.matrix(), tol);
}

/// Largest eigenvalue magnitude.
inline double spectral_norm(const SymmetricRealMatrix& t) {
  const auto eig = hermitian_eigen(t.matrix());
  if (eig.values.empty()) return 0.0;
  return std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
}

/// Numerical rank at threshold lambda >= tol * max(1, lambda_max).
inline std::size_t numerical_rank(const SymmetricRealMatrix& t, double tol = kRankTol) {
  const auto eig = hermitian_eigen(t.matrix());
  if (eig.values.empty()) return 0;
  const double cutoff = tol * std::max(1.0, eig.values.front());
  return static_cast<std::size_t>(std::count_if(
      eig.values.begin(), eig.values.end(), [&](double l) { return l >= cutoff; }));
}

/// M x r factor R with R R^T = t, r the numerical rank of t.
inline RealMatrix rank_factor(const SymmetricRealMatrix& t, double tol = kRankTol) {
  if (!is_psd(t, tol)) throw InputError("rank_factor: matrix is not PSD");
  const auto eig = hermitian_eigen(t.matrix());
  const std::size_t m = t.dim();
  const double cutoff = tol * std::max(1.0, eig.values.empty() ? 0.0 : eig.values.front());
  std::size_t rank = 0;
  while (rank < m && eig.values[rank] >= cutoff) ++rank;

  RealMatrix r(m, rank);
  for (std::size_t j = 0; j < rank; ++j) {
    const double scale = std::sqrt(eig.values[j]);
    // Fix the column sign so the largest-magnitude entry is positive.
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < m; ++i)
      if (std::abs(eig.vectors(i, j)) > std::abs(eig.vectors(pivot, j)) + 1e-12) pivot = i;
    const double sign = eig.vectors(pivot, j) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < m; ++i) r(i, j) = sign * scale * eig.vectors(i, j);
  }
  return r;
}

/// Moore-Penrose left inverse (R^T R)^{-1} R^T of a full-column-rank matrix.
inline RealMatrix left_inverse(const RealMatrix& r_mat) {
  const std::size_t rank = r_mat.cols();
  if (rank == 0 || r_mat.rows() < rank) {
    throw InputError("left_inverse: matrix cannot have full column rank");
  }
  const RealMatrix gram = r_mat.transpose() * r_mat;
  const auto eig = hermitian_eigen(gram);
  const double top = eig.values.front();
  if (!(eig.values.back() > 1e-12 * std::max(1.0, top))) {
    throw InputError("left_inverse: columns are linearly dependent");
  }
  RealMatrix inv(rank, rank);
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < rank; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < rank; ++k)
        acc += eig.vectors(i, k) * eig.vectors(j, k) / eig.values[k];
      inv(i, j) = acc;
    }
  return inv * r_mat.transpose();
}

/// Kronecker product a (x) b.
template <typename T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const T aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

/// Principal square root of a PSD matrix; eigenvalues below zero are clamped.
template <typename T>
Matrix<T> psd_sqrt(const Matrix<T>& m) {
  const auto eig = hermitian_eigen(m);
  const std::size_t n = m.rows();
  Matrix<T> out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = std::sqrt(std::max(0.0, eig.values[k]));
    if (s == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += s * eig.vectors(i, k) * detail::conj_of(eig.vectors(j, k));
  }
  return out;
}

inline std::vector<double> mat_vec(const RealMatrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw InputError("matrix-vector shape mismatch");
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

}  // namespace ucert
