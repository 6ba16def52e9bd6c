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

#include "ucert/entropy.hpp"
#include "ucert/random.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "test_oracles.hpp"

namespace ucert {
namespace {

const RenyiOrder kShannon = RenyiOrder::shannon();
const RenyiOrder kCollision = RenyiOrder::finite(2.0);
const RenyiOrder kMin = RenyiOrder::min_entropy();

TEST(Entropy, OrderValidation) {
  EXPECT_THROW(RenyiOrder::finite(1.0), InputError);
  EXPECT_THROW(RenyiOrder::finite(0.5), InputError);
  EXPECT_THROW(RenyiOrder::finite(std::numeric_limits<double>::infinity()), InputError);
  EXPECT_DOUBLE_EQ(RenyiOrder::finite(1.3).alpha(), 1.3);
}

TEST(Entropy, DistributionFromExpectations) {
  const std::vector<double> zero{0.0, 0.0};
  const auto uniform = dist_from_g(zero);
  for (int x = 0; x < 2; ++x)
    for (std::size_t k = 0; k < 2; ++k) EXPECT_DOUBLE_EQ(uniform.prob(x, k), 0.25);

  const std::vector<double> det{1.0};
  const auto d1 = dist_from_g(det);
  EXPECT_DOUBLE_EQ(d1.prob(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(d1.prob(1, 0), 0.0);

  const std::vector<double> mixed{0.6, -0.6};
  const auto d2 = dist_from_g(mixed);
  EXPECT_NEAR(d2.prob(0, 0), 0.40, 1e-15);
  EXPECT_NEAR(d2.prob(1, 0), 0.10, 1e-15);
  EXPECT_NEAR(d2.prob(0, 1), 0.10, 1e-15);
  EXPECT_NEAR(d2.prob(1, 1), 0.40, 1e-15);
  for (std::size_t k = 0; k < 2; ++k) EXPECT_NEAR(d2.setting_prob(k), 0.5, 1e-15);
}

TEST(Entropy, DistributionValidation) {
  EXPECT_THROW(JointDistribution({0.5, 0.6}, {0.0, 0.0}), InputError);
  EXPECT_THROW(JointDistribution({-0.1, 0.6}, {0.5, 0.0}), InputError);
  EXPECT_THROW(JointDistribution({0.5}, {0.25, 0.25}), InputError);
}

TEST(Entropy, WAlphaExamples) {
  EXPECT_NEAR(w_alpha(kCollision, 0.0), std::pow(2.0, -0.5), 1e-15);
  for (const auto& o : {kCollision, RenyiOrder::finite(1.3), RenyiOrder::finite(7.0), kMin}) {
    EXPECT_NEAR(w_alpha(o, 1.0), 1.0, 1e-15);
  }
  // sqrt(0.64 + 0.04) = 0.824621125123532...
  EXPECT_NEAR(w_alpha(kCollision, 0.6), 0.824621125123532, 1e-14);
  EXPECT_DOUBLE_EQ(w_alpha(kMin, -0.2), 0.6);
  EXPECT_THROW(w_alpha(kCollision, 1.1), InputError);
  EXPECT_THROW(w_alpha(kShannon, 0.1), InputError);
}

TEST(Entropy, ConditionalEntropyExamples) {
  const std::vector<double> zero{0.0, 0.0};
  EXPECT_NEAR(renyi_cond_entropy(kCollision, dist_from_g(zero)), 1.0, 1e-14);

  const std::vector<double> det{1.0, 1.0};
  for (const auto& o : {kShannon, RenyiOrder::finite(1.2), kCollision, kMin}) {
    EXPECT_NEAR(renyi_cond_entropy(o, dist_from_g(det)), 0.0, 1e-14);
  }

  const std::vector<double> mub{1.0, 0.0};
  EXPECT_NEAR(renyi_cond_entropy(kShannon, dist_from_g(mub)), 0.5, 1e-15);
}

TEST(Entropy, SimplifiedFormAgreesWithGeneralForm) {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = static_cast<std::size_t>(rng.uniform_int(1, 6));
    std::vector<double> g(m);
    for (auto& x : g) x = 2.0 * rng.uniform() - 1.0;
    for (double alpha : {1.2, 1.5, 2.0, 3.5}) {
      const RenyiOrder o = RenyiOrder::finite(alpha);
      double sum_w = 0.0;
      for (double x : g) sum_w += w_alpha(o, x);
      const double simplified = alpha / (1.0 - alpha) * std::log2(sum_w / static_cast<double>(m));
      EXPECT_NEAR(renyi_cond_entropy(o, dist_from_g(g)), simplified, 1e-12);
    }
  }
}

TEST(Entropy, ZeroWeightSettingsAreSkipped) {
  const JointDistribution d({0.5, 0.0}, {0.5, 0.0});
  EXPECT_NEAR(renyi_cond_entropy(kShannon, d), 1.0, 1e-15);
  EXPECT_NEAR(renyi_cond_entropy(kCollision, d), 1.0, 1e-15);
}

TEST(Entropy, BinaryEntropyExamples) {
  EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
  EXPECT_DOUBLE_EQ(binary_entropy(1.0), 0.0);
  EXPECT_DOUBLE_EQ(binary_entropy(0.0), 0.0);
  // mpmath: h((1 + sqrt(1/2)) / 2) = 0.600876036692856...
  EXPECT_NEAR(binary_entropy(0.5 * (1.0 + std::sqrt(0.5))), 0.600876036692856, 1e-14);
  EXPECT_THROW(binary_entropy(-0.1), InputError);
  EXPECT_THROW(binary_entropy(1.1), InputError);
}

TEST(Entropy, TaylorCoefficients) {
  for (double alpha : {1.3, 1.5, 2.0, 5.0}) EXPECT_NEAR(taylor_coefficient(1, alpha), 0.0, 1e-12);
  EXPECT_NEAR(taylor_coefficient(3, 1.5), 0.0, 1e-12);
  EXPECT_NEAR(taylor_coefficient(3, 2.0), -2.0, 1e-12);
  // Even k is outside the odd expansion and may have either sign.
  EXPECT_NEAR(taylor_coefficient(2, 1.5), -0.25, 1e-12);
}

TEST(EntropyProperty, OddCoefficientSigns) {
  for (int k = 1; k <= 15; k += 2) {
    EXPECT_GE(taylor_coefficient(k, 1.5), -1e-12) << "k = " << k;
    EXPECT_LE(taylor_coefficient(k, 2.0), 1e-12) << "k = " << k;
  }
}

TEST(Entropy, ConvexityWitness) {
  for (double alpha : {1.1, 1.3, 1.5}) {
    EXPECT_GE(convexity_witness(alpha, 2000).min_second_difference, -1e-8) << alpha;
  }
  for (double alpha : {2.0, 3.0, 10.0}) {
    EXPECT_LE(convexity_witness(alpha, 2000).max_second_difference, 1e-8) << alpha;
  }
  const auto mixed = convexity_witness(1.75, 2000);
  EXPECT_LT(mixed.min_second_difference, 0.0);
  EXPECT_GT(mixed.max_second_difference, 0.0);
  EXPECT_THROW(convexity_witness(1.5, 5), InputError);
}

TEST(EntropyProperty, MonotoneInOrder) {
  Rng rng(23);
  const std::vector<RenyiOrder> orders{kShannon,
                                       RenyiOrder::finite(1.2),
                                       RenyiOrder::finite(1.5),
                                       kCollision,
                                       RenyiOrder::finite(3.0),
                                       RenyiOrder::finite(10.0),
                                       kMin};
  for (int trial = 0; trial < 500; ++trial) {
    const auto m = static_cast<std::size_t>(rng.uniform_int(1, 6));
    std::vector<double> g(m);
    for (auto& x : g) x = 2.0 * rng.uniform() - 1.0;
    const auto d = dist_from_g(g);
    double prev = renyi_cond_entropy(orders.front(), d);
    for (std::size_t i = 1; i < orders.size(); ++i) {
      const double cur = renyi_cond_entropy(orders[i], d);
      EXPECT_LE(cur, prev + 1e-10);
      prev = cur;
    }
  }
}

TEST(EntropyProperty, ShannonLimit) {
  Rng rng(29);
  const RenyiOrder near_one = RenyiOrder::finite(1.0 + 1e-6);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = static_cast<std::size_t>(rng.uniform_int(1, 6));
    std::vector<double> g(m);
    for (auto& x : g) x = 2.0 * rng.uniform() - 1.0;
    const auto d = dist_from_g(g);
    EXPECT_NEAR(renyi_cond_entropy(near_one, d), renyi_cond_entropy(kShannon, d), 1e-4);
    // Shannon branch against the textbook definition.
    double ref = 0.0;
    for (double x : g) ref += testing::h2(0.5 * (1.0 + x)) / static_cast<double>(m);
    EXPECT_NEAR(renyi_cond_entropy(kShannon, d), ref, 1e-13);
  }
}

TEST(EntropyProperty, WAlphaIsEven) {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const double g = 2.0 * rng.uniform() - 1.0;
    for (const auto& o : {RenyiOrder::finite(1.2), kCollision, RenyiOrder::finite(6.5), kMin}) {
      EXPECT_EQ(w_alpha(o, g), w_alpha(o, -g));
    }
  }
}

}  // namespace
}  // namespace ucert
