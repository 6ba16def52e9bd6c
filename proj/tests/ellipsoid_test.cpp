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

#include "ucert/ellipsoid.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace ucert {
namespace {

AntiCommutationMatrix two_by_two(double eps) {
  return AntiCommutationMatrix(RealMatrix{{1.0, eps}, {eps, 1.0}});
}

QuantumState bloch_qubit(double x, double y, double z) {
  const std::vector<double> v{x, y, z};
  return state_from_bloch(v, build_gamma_set(3));
}

TEST(Ellipsoid, EffectiveAnticommutatorExamples) {
  const QuantumState rho = bloch_qubit(0.3, -0.2, 0.5);
  const std::vector<BinaryObservable> zx{BinaryObservable(pauli::z()), BinaryObservable(pauli::x())};
  EXPECT_NEAR(effective_anticommutators(rho, zx)(0, 1), 0.0, 1e-15);

  const ComplexMatrix tilted = (pauli::z() + pauli::x()) * Complex(1.0 / std::numbers::sqrt2);
  const std::vector<BinaryObservable> pair{BinaryObservable(pauli::z()), BinaryObservable(tilted)};
  for (const auto& state : {rho, bloch_qubit(0.0, 0.0, 0.0), bloch_qubit(-1.0, 0.0, 0.0)}) {
    EXPECT_NEAR(effective_anticommutators(state, pair)(0, 1), 1.0 / std::numbers::sqrt2, 1e-15);
  }

  const std::vector<BinaryObservable> same{BinaryObservable(pauli::z()), BinaryObservable(pauli::z())};
  const auto t = effective_anticommutators(rho, same);
  EXPECT_NEAR(t(0, 1), 1.0, 1e-15);
  EXPECT_NEAR(t(0, 0), 1.0, 1e-15);

  const std::vector<BinaryObservable> wrong_dim{BinaryObservable(ComplexMatrix::identity(4))};
  EXPECT_THROW(effective_anticommutators(rho, wrong_dim), InputError);
}

TEST(Ellipsoid, ExpectationVectorExamples) {
  const std::vector<BinaryObservable> zx{BinaryObservable(pauli::z()), BinaryObservable(pauli::x())};
  auto g = expectation_vector(bloch_qubit(0.0, 0.0, 0.0), zx);
  EXPECT_NEAR(g[0], 0.0, 1e-15);
  EXPECT_NEAR(g[1], 0.0, 1e-15);

  g = expectation_vector(bloch_qubit(0.0, 0.0, 1.0), zx);
  EXPECT_NEAR(g[0], 1.0, 1e-15);
  EXPECT_NEAR(g[1], 0.0, 1e-15);

  g = expectation_vector(bloch_qubit(0.8, 0.0, 0.6), zx);
  EXPECT_NEAR(g[0], 0.6, 1e-15);
  EXPECT_NEAR(g[1], 0.8, 1e-15);
}

TEST(Ellipsoid, CheckExamples) {
  const AntiCommutationMatrix id(RealMatrix::identity(2));
  EXPECT_TRUE(check_ellipsoid(ExpectationVector({1.0, 0.0}), id));
  EXPECT_FALSE(check_ellipsoid(ExpectationVector({1.0, 1.0}), id));
  // g^T T^{-1} g = 1.0571909584... > 1 for T = [[1, .5], [.5, 1]].
  EXPECT_FALSE(check_ellipsoid(ExpectationVector({1.0, std::sqrt(0.5)}), two_by_two(0.5)));
  EXPECT_TRUE(check_ellipsoid(ExpectationVector({1.0, 0.5}), two_by_two(0.5)));
}

TEST(Ellipsoid, ConstructRealizationExamples) {
  const AntiCommutationMatrix id(RealMatrix::identity(2));
  auto real = construct_realization(ExpectationVector({0.0, 0.0}), id);
  EXPECT_LE(max_abs_diff(real.state.matrix(), ComplexMatrix::identity(2) * Complex(0.5)), 1e-15);
  const auto gammas = build_gamma_set(2);
  EXPECT_LE(max_abs_diff(real.observables[0].matrix(), gammas.operators[0]), 1e-15);
  EXPECT_LE(max_abs_diff(real.observables[1].matrix(), gammas.operators[1]), 1e-15);

  real = construct_realization(ExpectationVector({0.6, 0.0}), id);
  const auto g = expectation_vector(real.state, real.observables);
  EXPECT_NEAR(g[0], 0.6, 1e-10);
  EXPECT_NEAR(g[1], 0.0, 1e-10);
  EXPECT_LE(max_abs_diff(effective_anticommutators(real.state, real.observables).matrix(),
                         id.matrix()),
            1e-10);

  EXPECT_THROW(construct_realization(ExpectationVector({1.0, 1.0}), id), InfeasibleError);
}

TEST(Ellipsoid, ConstructRejectsIndefiniteMatrix) {
  const AntiCommutationMatrix t(RealMatrix{{1.0, 0.9, 0.9}, {0.9, 1.0, -0.9}, {0.9, -0.9, 1.0}});
  EXPECT_THROW(construct_realization(ExpectationVector({0.0, 0.0, 0.0}), t), InfeasibleError);
}

TEST(Ellipsoid, GeneralizedMeasurementDiagonal) {
  // Diagonal < 1: unsharp observables; realization still reproduces T.
  const AntiCommutationMatrix t(RealMatrix{{0.5, 0.1}, {0.1, 0.8}});
  EXPECT_FALSE(t.projective());
  const auto real = construct_realization(ExpectationVector({0.3, -0.4}), t);
  EXPECT_LE(max_abs_diff(effective_anticommutators(real.state, real.observables).matrix(),
                         t.matrix()),
            1e-10);
  EXPECT_FALSE(real.observables[0].projective());
}

TEST(Ellipsoid, MinDimensionExamples) {
  auto req = min_dimension(AntiCommutationMatrix(RealMatrix::identity(3)));
  EXPECT_EQ(req.rank, 3u);
  EXPECT_EQ(req.dim, 2u);
  req = min_dimension(two_by_two(1.0));
  EXPECT_EQ(req.rank, 1u);
  EXPECT_EQ(req.dim, 2u);
  req = min_dimension(AntiCommutationMatrix(RealMatrix::identity(5)));
  EXPECT_EQ(req.rank, 5u);
  EXPECT_EQ(req.dim, 4u);
}

TEST(Ellipsoid, MatrixValidation) {
  EXPECT_THROW(AntiCommutationMatrix(RealMatrix{{1.2, 0.0}, {0.0, 1.0}}), InputError);
  EXPECT_THROW(AntiCommutationMatrix(RealMatrix{{0.0, 0.0}, {0.0, 1.0}}), InputError);
  EXPECT_THROW(AntiCommutationMatrix(RealMatrix{{1.0, 1.1}, {1.1, 1.0}}), InputError);
  EXPECT_THROW(ExpectationVector({1.5}), InputError);
}

TEST(Ellipsoid, BoundaryCircleAndEllipse) {
  for (const auto& p : ellipse_boundary(0.0, 64)) {
    EXPECT_NEAR(p.g1 * p.g1 + p.g2 * p.g2, 1.0, 1e-14);
  }
  // Semi-axes sqrt(1.9) along (1,1) and sqrt(0.1) along (1,-1).
  double major = 0.0;
  double minor = 10.0;
  for (const auto& p : ellipse_boundary(0.9, 400)) {
    const double along = std::abs(p.g1 + p.g2) / std::numbers::sqrt2;
    const double across = std::abs(p.g1 - p.g2) / std::numbers::sqrt2;
    major = std::max(major, along);
    minor = std::min(minor, std::hypot(along, across));
  }
  EXPECT_NEAR(major, std::sqrt(1.9), 1e-12);
  EXPECT_NEAR(minor, std::sqrt(0.1), 1e-12);

  for (const auto& p : ellipse_boundary(1.0, 20)) EXPECT_NEAR(p.g1, p.g2, 1e-15);
  EXPECT_THROW(ellipse_boundary(1.5, 10), InputError);
  EXPECT_THROW(ellipse_boundary(0.5, 2), InputError);
}

TEST(Ellipsoid, CornerOnlyAtFullCorrelation) {
  const ExpectationVector corner({1.0, 1.0});
  EXPECT_FALSE(check_ellipsoid(corner, two_by_two(0.9)));
  EXPECT_FALSE(check_ellipsoid(corner, two_by_two(0.999)));
  EXPECT_TRUE(check_ellipsoid(corner, two_by_two(1.0)));
}

TEST(EllipsoidProperty, PhysicalInstancesSatisfyEllipsoidCondition) {
  Rng rng(314);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto m = static_cast<std::size_t>(rng.uniform_int(1, 5));
    const auto qubits = static_cast<std::size_t>(rng.uniform_int(1, 2));
    const auto inst = sampling::random_physical_instance(rng, m, qubits);
    const auto g = expectation_vector(inst.state, inst.observables);
    const auto t = effective_anticommutators(inst.state, inst.observables);
    EXPECT_TRUE(check_ellipsoid(g, t)) << "trial " << trial;
    EXPECT_TRUE(is_psd(t.symmetric(), 1e-9)) << "trial " << trial;
  }
}

TEST(EllipsoidProperty, FeasiblePairsRoundTripThroughRealization) {
  Rng rng(271);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto m = static_cast<std::size_t>(rng.uniform_int(1, 5));
    const auto pair = sampling::random_feasible_pair(rng, m);
    ASSERT_TRUE(check_ellipsoid(pair.g, pair.t)) << "trial " << trial;
    const auto real = construct_realization(pair.g, pair.t);
    const auto g = expectation_vector(real.state, real.observables);
    const auto t = effective_anticommutators(real.state, real.observables);
    EXPECT_LE(max_abs_diff(t.matrix(), pair.t.matrix()), 1e-9);
    for (std::size_t k = 0; k < m; ++k) EXPECT_NEAR(g[k], pair.g[k], 1e-9);
    EXPECT_EQ(real.state.dim(), anticommuting_dimension(real.rank));
    // Unit diagonal: every constructed observable is an involution.
    for (const auto& a : real.observables) EXPECT_TRUE(a.projective());
  }
}

}  // namespace
}  // namespace ucert
