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

#include "entcorr/measures.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "entcorr/error.hpp"

#include "test_util.hpp"

namespace entcorr {
namespace {

double e2_of(const std::vector<double>& l) { return e2_correlation_sum(correlation_table(canonical_decomposition(l))).value; }

double en_of(const std::vector<double>& l) { return en_correlation_sum(correlation_table(canonical_decomposition(l))).value; }

PureState ghz() {
  const double h = 1.0 / std::sqrt(2.0);
  std::vector<Complex> a(8, 0.0);
  a[0] = h;
  a[7] = h;
  return validate_pure({2, 2, 2}, a);
}

PureState w_state() {
  const double t = 1.0 / std::sqrt(3.0);
  std::vector<Complex> a(8, 0.0);
  a[1] = t;
  a[2] = t;
  a[4] = t;
  return validate_pure({2, 2, 2}, a);
}

TEST(E2, Examples) {
  EXPECT_NEAR(e2_of({0.5, 0.5}), 1.0, 1e-12);
  EXPECT_NEAR(e2_of({1.0, 0.0}), 0.0, 1e-12);
  EXPECT_NEAR(e2_of({0.75, 0.25}), 0.75, 1e-12);
  EXPECT_EQ(e2_correlation_sum(correlation_table(canonical_decomposition({0.5, 0.5}))).method, Method::kCorrelationSum);
}

TEST(E2, EqualsFourTimesDeterminantSquared) {
  testing::Rng rng(43);
  for (int trial = 0; trial < 500; ++trial) {
    const PureState psi = testing::random_state(rng, {2, 2});
    const double det = std::abs(psi.amplitude(0) * psi.amplitude(3) - psi.amplitude(1) * psi.amplitude(2));
    EXPECT_NEAR(e2_correlation_sum(correlation_table(schmidt_decompose(psi))).value, 4.0 * det * det, 1e-12);
  }
}

TEST(E2, RejectsLargerTables) {
  const CorrelationTable t = correlation_table(canonical_decomposition({0.5, 0.3, 0.2}));
  try {
    e2_correlation_sum(t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kWrongDimension);
  }
}

TEST(EN, Examples) {
  EXPECT_NEAR(en_of({1.0 / 3, 1.0 / 3, 1.0 / 3}), 1.0, 1e-12);
  EXPECT_NEAR(en_of({1.0, 0.0, 0.0}), 0.0, 1e-12);
  EXPECT_NEAR(en_of({0.5, 0.3, 0.2}), 0.93, 1e-12);
}

TEST(EN, ClosedFormExamples) {
  EXPECT_NEAR(en_closed_form(canonical_decomposition({0.5, 0.5})).value, 1.0, 1e-12);
  EXPECT_NEAR(en_closed_form(canonical_decomposition({1.0, 0.0})).value, 0.0, 1e-12);
  EXPECT_NEAR(en_closed_form(canonical_decomposition({0.7, 0.3})).value, 0.84, 1e-12);
  EXPECT_EQ(en_closed_form(canonical_decomposition({0.7, 0.3})).method, Method::kClosedForm);
}

TEST(EN, SingleOutcomeIsRejected) {
  CorrelationTable t = table_from_joint(Eigen::MatrixXd::Ones(1, 1));
  EXPECT_THROW(en_correlation_sum(t), Error);
}

TEST(EN, SumAgreesWithClosedForm) {
  testing::Rng rng(47);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 7);
    const auto dec = canonical_decomposition(testing::random_lambdas(rng, n));
    const double sum = en_correlation_sum(correlation_table(dec)).value;
    const double closed = en_closed_form(dec).value;
    EXPECT_NEAR(sum, closed, 1e-12);
    EXPECT_GE(sum, 0.0);
    EXPECT_LE(sum, 1.0);
  }
}

TEST(EN, ReducesToE2ForQubits) {
  testing::Rng rng(53);
  for (int trial = 0; trial < 200; ++trial) {
    const auto dec = schmidt_decompose(testing::random_state(rng, {2, 2}));
    const auto t = correlation_table(dec);
    EXPECT_NEAR(en_correlation_sum(t).value, e2_correlation_sum(t).value, 1e-12);
  }
}

TEST(EN, InvariantUnderLocalUnitaries) {
  testing::Rng rng(59);
  for (int trial = 0; trial < 200; ++trial) {
    const PureState psi = testing::random_state(rng, {3, 4});
    const PureState rotated =
        testing::apply_local(psi, testing::random_unitary(rng, 3), testing::random_unitary(rng, 4));
    EXPECT_NEAR(en_closed_form(schmidt_decompose(psi)).value, en_closed_form(schmidt_decompose(rotated)).value, 1e-9);
  }
}

TEST(Clamp, WithinToleranceOnly) {
  EXPECT_EQ(clamp_unit(-1e-12, "x"), 0.0);
  EXPECT_EQ(clamp_unit(1.0 + 1e-12, "x"), 1.0);
  EXPECT_EQ(clamp_unit(0.25, "x"), 0.25);
  try {
    clamp_unit(1.01, "x");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInternalConsistency);
  }
  EXPECT_THROW(clamp_unit(std::nan(""), "x"), Error);
}

TEST(ThreeTangle, Examples) {
  EXPECT_NEAR(three_tangle(ghz()).value, 1.0, 1e-9);
  EXPECT_NEAR(three_tangle(w_state()).value, 0.0, 1e-9);
  std::vector<Complex> product(8, 0.0);
  product[0] = 1.0;
  EXPECT_NEAR(three_tangle(validate_pure({2, 2, 2}, product)).value, 0.0, 1e-9);
}

TEST(ThreeTangle, MatchesHyperdeterminant) {
  testing::Rng rng(61);
  for (int trial = 0; trial < 1000; ++trial) {
    const PureState psi = testing::random_state(rng, {2, 2, 2});
    const double tau = three_tangle(psi).value;
    EXPECT_NEAR(tau, testing::ckw_tangle(psi), 1e-8);
    EXPECT_GE(tau, -1e-9);
  }
}

TEST(ThreeTangle, RequiresThreeQubits) {
  testing::Rng rng(67);
  try {
    three_tangle(testing::random_state(rng, {2, 2, 3}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kWrongDimension);
  }
  EXPECT_THROW(three_tangle(testing::random_state(rng, {2, 2})), Error);
}

}  // namespace
}  // namespace entcorr
