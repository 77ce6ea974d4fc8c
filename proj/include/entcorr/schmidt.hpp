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
#include <vector>

#include <Eigen/Dense>

#include "entcorr/qstate.hpp"

namespace entcorr {

/// Schmidt coefficients at or below this weight count as zero.
inline constexpr double kRankTol = 1e-12;

/// psi = sum_i sqrt(lambdas[i]) |a_i> (x) |b_i>, with lambdas descending and
/// N = min(M, M') terms. When coefficients are degenerate the bases are one
/// valid choice among many; nothing downstream depends on which.
struct SchmidtDecomposition {
  std::vector<double> lambdas;
  Eigen::MatrixXcd basis_a;  // M x N, columns are |a_i>
  Eigen::MatrixXcd basis_b;  // M' x N, columns are |b_i>

  std::size_t size() const noexcept { return lambdas.size(); }

  /// Flat row-major amplitudes of sum_i sqrt(lambda_i) |a_i>|b_i>.
  Eigen::VectorXcd reconstruct() const;
};

struct SchmidtRank {
  std::size_t value = 1;
  bool separable() const noexcept { return value == 1; }
};

/// Requires a two-party state. Each basis_a column is phased so that its
/// largest-magnitude entry is real and positive.
SchmidtDecomposition schmidt_decompose(const PureState& psi);

SchmidtRank schmidt_rank(const SchmidtDecomposition& dec);

/// sum_i sqrt(lambdas[i]) |i>|i> on dims [N, N].
PureState schmidt_state(const std::vector<double>& lambdas);

/// The decomposition of schmidt_state(lambdas): lambdas sorted descending,
/// computational bases.
SchmidtDecomposition canonical_decomposition(std::vector<double> lambdas);

}  // namespace entcorr
