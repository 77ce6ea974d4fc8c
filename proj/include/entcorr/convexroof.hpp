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
#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "entcorr/qstate.hpp"

namespace entcorr {

enum class RoofMeasure { kE2, kEn };

std::string_view to_string(RoofMeasure measure);
RoofMeasure parse_roof_measure(std::string_view name);

struct RoofOptions {
  std::size_t restarts = 8;
  std::uint64_t seed = 0;
  std::size_t ensemble_cap = 0;  // 0 selects rank(rho)^2
  double conv_tol = 1e-7;
  std::size_t patience = 25;
  std::size_t max_iterations = 2000;
  unsigned threads = 1;
};

/// rho = sum_i weights[i] |states[i]><states[i]|.
struct Decomposition {
  std::vector<double> weights;
  std::vector<PureState> states;

  Eigen::MatrixXcd reconstruct() const;
};

struct RoofResult {
  double value = 0.0;
  Decomposition decomposition;
  std::size_t iterations = 0;  // sweeps made by the winning restart
  bool converged = false;
  std::size_t restarts_used = 0;
  /// Best value after each sweep, one series per restart.
  std::vector<std::vector<double>> traces;
};

/// Pure-state value of the measure: squared concurrence for kE2 (two qubits
/// only), normalized I-concurrence for kEn.
double pure_measure(const PureState& psi, RoofMeasure measure);

/// Average measure over the eigendecomposition of rho. convex_roof never
/// reports more than this.
double eigendecomposition_average(const DensityMatrix& rho, RoofMeasure measure);

/// Minimizes the average measure over decompositions
///   |psi~_i> = sum_j U_ij sqrt(mu_j) |v_j>,   p_i = <psi~_i|psi~_i>,
/// where (mu_j, |v_j>) are the nonzero eigenpairs of rho and U is an m x r
/// isometry, r = rank(rho) <= m <= ensemble_cap. U is a product of complex
/// Givens rotations applied to column phases; each restart runs coordinate-wise
/// golden-section descent from its own start point. Restart 0 starts at the
/// eigendecomposition; the others draw uniform angles from a stream keyed by
/// (seed, restart index), so results do not depend on the thread count.
///
/// kE2 requires dims [2, 2]; kEn accepts [2, 2] and [3, 3].
RoofResult convex_roof(const DensityMatrix& rho, RoofMeasure measure, const RoofOptions& options = {});

/// Two-qubit concurrence in closed form: max(0, s1 - s2 - s3 - s4) with s_i the
/// descending square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy).
///
/// The s_i are computed as the singular values of T = W^T (sy x sy) W, where
/// the columns of W are subnormalized states with W W^dagger = rho. This avoids
/// square roots of near-zero eigenvalues. Eigenvalues of rho at or below
/// kRankTol are treated as zero.
double two_qubit_concurrence(const DensityMatrix& rho);

/// Same formula for rho = W W^dagger given directly by its ensemble columns.
double two_qubit_concurrence_of_ensemble(const Eigen::MatrixXcd& ensemble);

}  // namespace entcorr
