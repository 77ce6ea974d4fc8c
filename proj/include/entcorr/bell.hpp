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

#include <array>

#include <Eigen/Dense>

#include "entcorr/qstate.hpp"

namespace entcorr {

/// Linear-polarization analyzer at `angle` radians. The +1 outcome is V
/// (|0>) and -1 is H (|1>) at angle 0; the observable is
/// cos(2 angle) sz + sin(2 angle) sx, so angles are taken modulo pi.
class MeasurementSetting {
 public:
  explicit MeasurementSetting(double angle);

  double angle() const noexcept { return angle_; }
  Eigen::Matrix2cd observable() const;

 private:
  double angle_;
};

struct ChshSettings {
  MeasurementSetting a;
  MeasurementSetting a_prime;
  MeasurementSetting b;
  MeasurementSetting b_prime;
};

struct ChshValue {
  double s = 0.0;
  ChshSettings settings;
};

inline constexpr double kTsirelsonBound = 2.8284271247461903;  // 2 sqrt(2)

/// <A(a) (x) B(b)> by the trace rule. Two-qubit states only.
double joint_expectation(const DensityMatrix& rho, const MeasurementSetting& a, const MeasurementSetting& b);
double joint_expectation(const PureState& psi, const MeasurementSetting& a, const MeasurementSetting& b);

/// s = E(a, b) + E(a, b') + E(a', b) - E(a', b').
ChshValue chsh(const DensityMatrix& rho, const ChshSettings& settings);
ChshValue chsh(const PureState& psi, const ChshSettings& settings);

/// Largest |s| over a uniform grid of grid_density^4 angle tuples in [0, pi)^4,
/// optionally polished by compass search. Ties keep the lexicographically
/// smallest tuple. The returned settings are flipped (b, b' advanced by pi/2)
/// when needed so that s >= 0. `threads` splits the grid without changing the
/// result.
ChshValue chsh_maximize(const DensityMatrix& rho, int grid_density, bool refine, unsigned threads = 1);
ChshValue chsh_maximize(const PureState& psi, int grid_density, bool refine, unsigned threads = 1);

}  // namespace entcorr
