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

#include "entcorr/qstate.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "entcorr/error.hpp"

namespace entcorr {

namespace {

std::string dims_string(const Dims& dims) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < dims.size(); ++i) {
    out << (i ? ", " : "") << dims[i];
  }
  out << ']';
  return out.str();
}

void check_dims(const Dims& dims, std::size_t min_parties, std::size_t max_parties) {
  if (dims.size() < min_parties || dims.size() > max_parties) {
    throw Error(ErrorCode::kDimensionMismatch,
                "expected " + std::to_string(min_parties) + ".." + std::to_string(max_parties) +
                    " subsystems, got " + dims_string(dims));
  }
  for (std::size_t d : dims) {
    if (d == 0) {
      throw Error(ErrorCode::kDimensionMismatch, "subsystem dimension must be positive");
    }
  }
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotNormalized: return "NotNormalized";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kTraceNotOne: return "TraceNotOne";
    case ErrorCode::kNotPositive: return "NotPositive";
    case ErrorCode::kWrongDimension: return "WrongDimension";
    case ErrorCode::kInvalidShots: return "InvalidShots";
    case ErrorCode::kTooFewShots: return "TooFewShots";
    case ErrorCode::kNotIncreasing: return "NotIncreasing";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInternalConsistency: return "InternalConsistency";
  }
  return "Unknown";
}

std::size_t product(const Dims& dims) {
  std::size_t total = 1;
  for (std::size_t d : dims) total *= d;
  return total;
}

Eigen::VectorXcd PureState::vector() const {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(amplitudes_.size()));
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) v(static_cast<Eigen::Index>(i)) = amplitudes_[i];
  return v;
}

Eigen::MatrixXcd PureState::bipartite_matrix() const {
  const auto rows = static_cast<Eigen::Index>(dims_.front());
  const auto cols = static_cast<Eigen::Index>(amplitudes_.size() / dims_.front());
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(i, j) = amplitudes_[static_cast<std::size_t>(i * cols + j)];
    }
  }
  return m;
}

PureState validate_pure(Dims dims, std::vector<Complex> amplitudes) {
  check_dims(dims, 2, 3);
  if (amplitudes.size() != product(dims)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "got " + std::to_string(amplitudes.size()) + " amplitudes for dims " + dims_string(dims));
  }
  double norm2 = 0.0;
  for (const Complex& a : amplitudes) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw Error(ErrorCode::kNonFinite, "amplitude is not finite");
    }
    norm2 += std::norm(a);
  }
  const double deviation = std::abs(norm2 - 1.0);
  if (deviation > kNormTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "squared norm " << norm2 << " differs from 1 by more than " << kNormTol;
    throw Error(ErrorCode::kNotNormalized, msg.str());
  }
  if (deviation > kRenormEps) {
    const double scale = 1.0 / std::sqrt(norm2);
    for (Complex& a : amplitudes) a *= scale;
  }
  return PureState(std::move(dims), std::move(amplitudes));
}

PureState validate_pure(Dims dims, const Eigen::VectorXcd& amplitudes) {
  return validate_pure(std::move(dims), std::vector<Complex>(amplitudes.data(), amplitudes.data() + amplitudes.size()));
}

DensityMatrix validate_density(Dims dims, Eigen::MatrixXcd matrix) {
  check_dims(dims, 2, 2);
  const auto n = static_cast<Eigen::Index>(product(dims));
  if (matrix.rows() != n || matrix.cols() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "matrix is " + std::to_string(matrix.rows()) + "x" + std::to_string(matrix.cols()) +
                    " but dims " + dims_string(dims) + " need " + std::to_string(n) + "x" + std::to_string(n));
  }
  if (!matrix.allFinite()) {
    throw Error(ErrorCode::kNonFinite, "matrix entry is not finite");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      if (std::abs(matrix(i, j) - std::conj(matrix(j, i))) > kNormTol) {
        throw Error(ErrorCode::kNotHermitian,
                    "entries (" + std::to_string(i) + "," + std::to_string(j) + ") are not conjugate");
      }
    }
  }
  const double trace = matrix.trace().real();
  if (std::abs(trace - 1.0) > kNormTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "trace is " << trace;
    throw Error(ErrorCode::kTraceNotOne, msg.str());
  }
  const Eigen::MatrixXcd hermitian = 0.5 * (matrix + matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian, Eigen::EigenvaluesOnly);
  const double smallest = solver.eigenvalues().minCoeff();
  if (smallest < -kPositivityTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "eigenvalue " << smallest << " is negative";
    throw Error(ErrorCode::kNotPositive, msg.str());
  }
  return DensityMatrix(std::move(dims), std::move(matrix));
}

DensityMatrix projector(const PureState& psi) {
  if (psi.dims().size() != 2) {
    throw Error(ErrorCode::kDimensionMismatch, "density matrices are limited to two subsystems");
  }
  const Eigen::VectorXcd v = psi.vector();
  return validate_density(psi.dims(), v * v.adjoint());
}

double purity(const DensityMatrix& rho) {
  // trace(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.matrix().squaredNorm();
}

DensityMatrix reduced_pair(const PureState& psi, std::size_t first, std::size_t second) {
  const Dims& dims = psi.dims();
  if (dims.size() != 3 || first >= second || second > 2) {
    throw Error(ErrorCode::kDimensionMismatch, "reduced_pair needs a three-party state and 0 <= first < second <= 2");
  }
  const std::size_t traced = 3 - first - second;
  const std::size_t d1 = dims[first];
  const std::size_t d2 = dims[second];
  const std::size_t dt = dims[traced];
  auto flat = [&](std::size_t i, std::size_t j, std::size_t k) {
    std::array<std::size_t, 3> idx{};
    idx[first] = i;
    idx[second] = j;
    idx[traced] = k;
    return (idx[0] * dims[1] + idx[1]) * dims[2] + idx[2];
  };
  const auto n = static_cast<Eigen::Index>(d1 * d2);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t i = 0; i < d1; ++i) {
    for (std::size_t j = 0; j < d2; ++j) {
      for (std::size_t ip = 0; ip < d1; ++ip) {
        for (std::size_t jp = 0; jp < d2; ++jp) {
          Complex sum = 0.0;
          for (std::size_t k = 0; k < dt; ++k) {
            sum += psi.amplitude(flat(i, j, k)) * std::conj(psi.amplitude(flat(ip, jp, k)));
          }
          rho(static_cast<Eigen::Index>(i * d2 + j), static_cast<Eigen::Index>(ip * d2 + jp)) = sum;
        }
      }
    }
  }
  return validate_density({d1, d2}, std::move(rho));
}

}  // namespace entcorr
