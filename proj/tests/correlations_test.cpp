// Copyright 2026 The entcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "entcorr/correlations.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace entcorr {
namespace {

// Deviation matrix written directly in terms of the Schmidt coefficients.
Eigen::MatrixXd delta_from_lambdas(const std::vector<double>& l) {
  const auto n = static_cast<Eigen::Index>(l.size());
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      d(i, j) = i == j ? l[i] * (1.0 - l[i]) : l[i] * l[j];
  return d;
}

TEST(CorrelationTable, UnequalTwoLevel) {
  const CorrelationTable t = correlation_table(canonical_decomposition({0.7, 0.3}));
  ASSERT_EQ(t.n, 2u);
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j) EXPECT_NEAR(t.delta(i, j), 0.21, 1e-15);
  EXPECT_NEAR(t.joint(0, 0), 0.7, 1e-15);
  EXPECT_EQ(t.joint(0, 1), 0.0);
  ASSERT_TRUE(t.conditional[0][0].has_value());
  EXPECT_NEAR(*t.conditional[0][0], 1.0, 1e-15);
  EXPECT_NEAR(*t.conditional[1][0], 0.0, 1e-15);
}

TEST(CorrelationTable, ProductHasNoDeviation) {
  const CorrelationTable t = correlation_table(canonical_decomposition({1.0, 0.0}));
  EXPECT_EQ(t.delta.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_FALSE(t.conditional[0][1].has_value());
  EXPECT_FALSE(t.conditional[1][1].has_value());
  EXPECT_TRUE(is_factorizable(t, 1e-12));
}

TEST(CorrelationTable, MaximallyEntangled) {
  const CorrelationTable t = correlation_table(canonical_decomposition({0.5, 0.5}));
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j) EXPECT_NEAR(t.delta(i, j), 0.25, 1e-15);
  EXPECT_FALSE(is_factorizable(t, 1e-6));
}

TEST(CorrelationTable, NearlySeparableIsFactorizableAtLooseTolerance) {
  const CorrelationTable t = correlation_table(canonical_decomposition({0.999999999, 1e-9}));
  EXPECT_TRUE(is_factorizable(t, 1e-6));
  EXPECT_FALSE(is_factorizable(t, 1e-12));
}

TEST(CorrelationTable, MatchesLambdaFormula) {
  testing::Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const auto l = testing::random_lambdas(rng, 2 + static_cast<std::size_t>(trial % 6));
    const CorrelationTable t = correlation_table(canonical_decomposition(l));
    EXPECT_LT((t.delta - delta_from_lambdas(l)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((t.delta - t.delta.transpose()).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(CorrelationTable, BornTableAgreesWithSchmidtTable) {
  testing::Rng rng(37);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t m = 2 + static_cast<std::size_t>(trial % 5);
    const std::size_t mp = 2 + static_cast<std::size_t>((trial / 5) % 5);
    const PureState psi = testing::random_state(rng, {m, mp});
    const SchmidtDecomposition dec = schmidt_decompose(psi);
    const CorrelationTable a = correlation_table(dec);
    const CorrelationTable b = born_correlation_table(psi, dec);
    EXPECT_LT((a.delta - b.delta).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT((b.delta - b.delta.transpose()).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_NEAR(b.joint.sum(), 1.0, 1e-9);
  }
}

TEST(CorrelationTable, FactorizableExactlyForRankOne) {
  testing::Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const PureState product = testing::random_product_state(rng, 3, 3);
    const SchmidtDecomposition dp = schmidt_decompose(product);
    EXPECT_TRUE(is_factorizable(born_correlation_table(product, dp), 1e-9));
    const PureState generic = testing::random_state(rng, {3, 3});
    const SchmidtDecomposition dg = schmidt_decompose(generic);
    EXPECT_EQ(is_factorizable(correlation_table(dg), 1e-9), schmidt_rank(dg).separable());
  }
}

TEST(CorrelationTable, FromJointComputesMarginals) {
  Eigen::MatrixXd joint(2, 2);
  joint << 0.1, 0.2, 0.3, 0.4;
  const CorrelationTable t = table_from_joint(joint);
  EXPECT_NEAR(t.local_a[0], 0.3, 1e-15);
  EXPECT_NEAR(t.local_b[1], 0.6, 1e-15);
  EXPECT_NEAR(*t.conditional[0][1], 0.2 / 0.6, 1e-15);
  EXPECT_NEAR(t.delta(0, 0), std::abs(0.1 - 0.3 * 0.4), 1e-15);
}

}  // namespace
}  // namespace entcorr
