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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace entcorr {

using Complex = std::complex<double>;

/// Tolerance for normalization, Hermiticity and unit trace.
inline constexpr double kNormTol = 1e-9;
/// Eigenvalues of a density matrix may dip this far below zero.
inline constexpr double kPositivityTol = 1e-9;
/// Deviations of the squared norm below this are left untouched, so that
/// renormalization is idempotent and canonical files round-trip exactly.
inline constexpr double kRenormEps = 1e-14;

using Dims = std::vector<std::size_t>;

std::size_t product(const Dims& dims);

/// Normalized pure state over two or three subsystems. Amplitudes are stored
/// row-major over the subsystem indices: index = i_A * M' + i_B for two
/// parties, (i_A * M' + i_B) * M'' + i_C for three.
class PureState {
 public:
  const Dims& dims() const noexcept { return dims_; }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }
  Complex amplitude(std::size_t index) const { return amplitudes_.at(index); }

  Eigen::VectorXcd vector() const;

  /// Amplitudes reshaped to an M x (product of the remaining dims) matrix.
  Eigen::MatrixXcd bipartite_matrix() const;

  friend PureState validate_pure(Dims dims, std::vector<Complex> amplitudes);

 private:
  PureState(Dims dims, std::vector<Complex> amplitudes)
      : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {}

  Dims dims_;
  std::vector<Complex> amplitudes_;
};

/// Checks dims, finiteness and normalization. States within kNormTol of unit
/// norm are rescaled to unit norm; anything further off is rejected.
PureState validate_pure(Dims dims, std::vector<Complex> amplitudes);
PureState validate_pure(Dims dims, const Eigen::VectorXcd& amplitudes);

/// Hermitian, unit-trace, positive semidefinite matrix over two subsystems.
class DensityMatrix {
 public:
  const Dims& dims() const noexcept { return dims_; }
  const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }

  friend DensityMatrix validate_density(Dims dims, Eigen::MatrixXcd matrix);

 private:
  DensityMatrix(Dims dims, Eigen::MatrixXcd matrix)
      : dims_(std::move(dims)), matrix_(std::move(matrix)) {}

  Dims dims_;
  Eigen::MatrixXcd matrix_;
};

DensityMatrix validate_density(Dims dims, Eigen::MatrixXcd matrix);

/// |psi><psi| for a two-party pure state.
DensityMatrix projector(const PureState& psi);

/// trace(rho^2).
double purity(const DensityMatrix& rho);

/// Reduced state of a three-party pure state on the two kept subsystems
/// (given in increasing order).
DensityMatrix reduced_pair(const PureState& psi, std::size_t first, std::size_t second);

}  // namespace entcorr
