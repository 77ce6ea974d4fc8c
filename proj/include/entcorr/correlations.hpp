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

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "entcorr/qstate.hpp"
#include "entcorr/schmidt.hpp"

namespace entcorr {

/// Outcome statistics for Alice and Bob measuring in the Schmidt bases.
///
/// conditional(i, j) is P(i_A | j_B); it is undefined (std::nullopt) for
/// columns with P(j_B) <= kRankTol. delta is always taken from the joint form
/// |P(i_A, j_B) - P(i_A) P(j_B)|, which needs no division.
struct CorrelationTable {
  std::size_t n = 0;
  std::vector<double> local_a;
  std::vector<double> local_b;
  Eigen::MatrixXd joint;
  std::vector<std::vector<std::optional<double>>> conditional;
  Eigen::MatrixXd delta;

  double delta_sum() const { return delta.sum(); }
  double max_delta() const { return n == 0 ? 0.0 : delta.maxCoeff(); }
};

/// Table implied by the Schmidt coefficients alone: P(i_A) = P(i_B) =
/// lambda_i and P(i_A, j_B) = delta_ij lambda_j.
CorrelationTable correlation_table(const SchmidtDecomposition& dec);

/// Born-rule table: probabilities |<a_i b_j|psi>|^2 of projecting psi onto
/// the product Schmidt vectors, with marginals summed from the joint.
CorrelationTable born_correlation_table(const PureState& psi, const SchmidtDecomposition& dec);

/// Builds locals, conditionals and deltas from a square joint distribution.
CorrelationTable table_from_joint(Eigen::MatrixXd joint);

/// True when every delta is within tol, i.e. the joint distribution
/// factorizes into its marginals.
bool is_factorizable(const CorrelationTable& table, double tol);

}  // namespace entcorr
