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

#include "entcorr/error.hpp"

namespace entcorr {

CorrelationTable table_from_joint(Eigen::MatrixXd joint) {
  if (joint.rows() != joint.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "joint distribution must be square");
  }
  CorrelationTable table;
  table.n = static_cast<std::size_t>(joint.rows());
  const auto n = joint.rows();
  table.local_a.assign(table.n, 0.0);
  table.local_b.assign(table.n, 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      table.local_a[static_cast<std::size_t>(i)] += joint(i, j);
      table.local_b[static_cast<std::size_t>(j)] += joint(i, j);
    }
  }
  table.conditional.assign(table.n, std::vector<std::optional<double>>(table.n));
  table.delta.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double pa = table.local_a[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < n; ++j) {
      const double pb = table.local_b[static_cast<std::size_t>(j)];
      if (pb > kRankTol) {
        table.conditional[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = joint(i, j) / pb;
      }
      table.delta(i, j) = std::abs(joint(i, j) - pa * pb);
    }
  }
  table.joint = std::move(joint);
  return table;
}

CorrelationTable correlation_table(const SchmidtDecomposition& dec) {
  const auto n = static_cast<Eigen::Index>(dec.size());
  Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) joint(i, i) = dec.lambdas[static_cast<std::size_t>(i)];
  return table_from_joint(std::move(joint));
}

CorrelationTable born_correlation_table(const PureState& psi, const SchmidtDecomposition& dec) {
  if (psi.dims().size() != 2 || static_cast<std::size_t>(dec.basis_a.rows()) != psi.dims()[0] ||
      static_cast<std::size_t>(dec.basis_b.rows()) != psi.dims()[1]) {
    throw Error(ErrorCode::kDimensionMismatch, "decomposition does not match the state");
  }
  // <a_i b_j|psi> = (A^dagger Psi conj(B))_ij with Psi the amplitude matrix.
  const Eigen::MatrixXcd overlaps = dec.basis_a.adjoint() * psi.bipartite_matrix() * dec.basis_b.conjugate();
  return table_from_joint(overlaps.cwiseAbs2());
}

bool is_factorizable(const CorrelationTable& table, double tol) { return table.max_delta() <= tol; }

}  // namespace entcorr
