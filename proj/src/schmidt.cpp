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

#include "entcorr/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "entcorr/error.hpp"

namespace entcorr {

Eigen::VectorXcd SchmidtDecomposition::reconstruct() const {
  const Eigen::Index rows = basis_a.rows();
  const Eigen::Index cols = basis_b.rows();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows, cols);
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    m += std::sqrt(lambdas[i]) * basis_a.col(k) * basis_b.col(k).transpose();
  }
  Eigen::VectorXcd flat(rows * cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) flat(i * cols + j) = m(i, j);
  }
  return flat;
}

SchmidtDecomposition schmidt_decompose(const PureState& psi) {
  if (psi.dims().size() != 2) {
    throw Error(ErrorCode::kWrongDimension, "Schmidt decomposition needs a two-party state");
  }
  const Eigen::MatrixXcd amplitudes = psi.bipartite_matrix();
  // psi_ij = sum_k U_ik s_k conj(V_jk), so |b_k> has entries conj(V_jk).
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(amplitudes, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& singular = svd.singularValues();
  const Eigen::Index n = singular.size();

  SchmidtDecomposition dec;
  dec.lambdas.resize(static_cast<std::size_t>(n));
  dec.basis_a = svd.matrixU().leftCols(n);
  dec.basis_b = svd.matrixV().leftCols(n).conjugate();
  for (Eigen::Index k = 0; k < n; ++k) {
    dec.lambdas[static_cast<std::size_t>(k)] = singular(k) * singular(k);

    Eigen::Index pivot = 0;
    dec.basis_a.col(k).cwiseAbs().maxCoeff(&pivot);
    const Complex entry = dec.basis_a(pivot, k);
    if (std::abs(entry) > 0.0) {
      const Complex phase = entry / std::abs(entry);
      dec.basis_a.col(k) *= std::conj(phase);
      dec.basis_b.col(k) *= phase;
    }
  }
  return dec;
}

SchmidtRank schmidt_rank(const SchmidtDecomposition& dec) {
  const auto count = static_cast<std::size_t>(
      std::count_if(dec.lambdas.begin(), dec.lambdas.end(), [](double l) { return l > kRankTol; }));
  return SchmidtRank{std::max<std::size_t>(count, 1)};
}

PureState schmidt_state(const std::vector<double>& lambdas) {
  const std::size_t n = lambdas.size();
  std::vector<Complex> amplitudes(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) amplitudes[i * n + i] = std::sqrt(lambdas[i]);
  return validate_pure({n, n}, std::move(amplitudes));
}

SchmidtDecomposition canonical_decomposition(std::vector<double> lambdas) {
  std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
  const auto n = static_cast<Eigen::Index>(lambdas.size());
  return SchmidtDecomposition{std::move(lambdas), Eigen::MatrixXcd::Identity(n, n), Eigen::MatrixXcd::Identity(n, n)};
}

}  // namespace entcorr
