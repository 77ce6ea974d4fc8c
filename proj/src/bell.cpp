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

#include "entcorr/bell.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>
#include <vector>

#include "entcorr/error.hpp"

namespace entcorr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinRefineStep = 1e-10;

void require_two_qubits(const Dims& dims) {
  if (dims != Dims{2, 2}) throw Error(ErrorCode::kWrongDimension, "Bell tests need a two-qubit state");
}

// E(a, b) = c(a)^T K c(b) with c(t) = (cos 2t, sin 2t) and K the z/x
// correlation block; exact because the observables are linear in c.
struct CorrelationBlock {
  Eigen::Matrix2d k;

  explicit CorrelationBlock(const DensityMatrix& rho) {
    const MeasurementSetting z(0.0);
    const MeasurementSetting x(kPi / 4.0);
    k << joint_expectation(rho, z, z), joint_expectation(rho, z, x), joint_expectation(rho, x, z),
        joint_expectation(rho, x, x);
  }

  double expectation(double a, double b) const {
    const Eigen::Vector2d ca(std::cos(2.0 * a), std::sin(2.0 * a));
    const Eigen::Vector2d cb(std::cos(2.0 * b), std::sin(2.0 * b));
    return ca.dot(k * cb);
  }

  double s(const std::array<double, 4>& t) const {
    return expectation(t[0], t[2]) + expectation(t[0], t[3]) + expectation(t[1], t[2]) - expectation(t[1], t[3]);
  }
};

struct GridBest {
  double value = -1.0;
  std::size_t index = 0;
};

}  // namespace

MeasurementSetting::MeasurementSetting(double angle) {
  if (!std::isfinite(angle)) throw Error(ErrorCode::kInvalidArgument, "analyzer angle must be finite");
  double a = std::fmod(angle, kPi);
  if (a < 0.0) a += kPi;
  if (a >= kPi) a = 0.0;
  angle_ = a;
}

Eigen::Matrix2cd MeasurementSetting::observable() const {
  const double c = std::cos(2.0 * angle_);
  const double s = std::sin(2.0 * angle_);
  Eigen::Matrix2cd m;
  m << c, s, s, -c;
  return m;
}

double joint_expectation(const DensityMatrix& rho, const MeasurementSetting& a, const MeasurementSetting& b) {
  require_two_qubits(rho.dims());
  const Eigen::Matrix2cd oa = a.observable();
  const Eigen::Matrix2cd ob = b.observable();
  Eigen::Matrix4cd joint;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) joint.block<2, 2>(2 * i, 2 * j) = oa(i, j) * ob;
  }
  return (rho.matrix() * joint).trace().real();
}

double joint_expectation(const PureState& psi, const MeasurementSetting& a, const MeasurementSetting& b) {
  require_two_qubits(psi.dims());
  return joint_expectation(projector(psi), a, b);
}

ChshValue chsh(const DensityMatrix& rho, const ChshSettings& settings) {
  const auto& [a, ap, b, bp] = settings;
  const double s = joint_expectation(rho, a, b) + joint_expectation(rho, a, bp) + joint_expectation(rho, ap, b) -
                   joint_expectation(rho, ap, bp);
  if (std::abs(s) > kTsirelsonBound + 1e-9) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "CHSH value " << s << " exceeds the Tsirelson bound";
    throw Error(ErrorCode::kInternalConsistency, msg.str());
  }
  return {s, settings};
}

ChshValue chsh(const PureState& psi, const ChshSettings& settings) {
  require_two_qubits(psi.dims());
  return chsh(projector(psi), settings);
}

ChshValue chsh_maximize(const DensityMatrix& rho, int grid_density, bool refine, unsigned threads) {
  require_two_qubits(rho.dims());
  if (grid_density < 8) throw Error(ErrorCode::kInvalidArgument, "grid density must be at least 8");
  const CorrelationBlock block(rho);
  const auto g = static_cast<std::size_t>(grid_density);
  const double spacing = kPi / static_cast<double>(g);
  auto tuple_at = [&](std::size_t index) {
    std::array<double, 4> t{};
    for (int d = 3; d >= 0; --d) {
      t[static_cast<std::size_t>(d)] = static_cast<double>(index % g) * spacing;
      index /= g;
    }
    return t;
  };

  // Each worker scans a contiguous slice of the lexicographic order.
  const std::size_t total = g * g * g * g;
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(g)));
  std::vector<GridBest> partial(workers);
  auto scan = [&](unsigned w) {
    const std::size_t begin = total * w / workers;
    const std::size_t end = total * (w + 1) / workers;
    GridBest best;
    for (std::size_t i = begin; i < end; ++i) {
      const double value = std::abs(block.s(tuple_at(i)));
      if (value > best.value) best = {value, i};
    }
    partial[w] = best;
  };
  if (workers == 1) {
    scan(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(scan, w);
  }
  GridBest best = partial.front();
  for (const GridBest& p : partial) {
    if (p.value > best.value || (p.value == best.value && p.index < best.index)) best = p;
  }

  std::array<double, 4> t = tuple_at(best.index);
  const double sign = block.s(t) < 0.0 ? -1.0 : 1.0;
  if (refine) {
    double current = sign * block.s(t);
    for (double step = spacing / 2.0; step >= kMinRefineStep;) {
      bool moved = false;
      for (std::size_t d = 0; d < 4; ++d) {
        for (double dir : {1.0, -1.0}) {
          std::array<double, 4> trial = t;
          trial[d] += dir * step;
          const double value = sign * block.s(trial);
          if (value > current) {
            current = value;
            t = trial;
            moved = true;
          }
        }
      }
      if (!moved) step /= 2.0;
    }
  }
  if (sign < 0.0) {
    t[2] += kPi / 2.0;
    t[3] += kPi / 2.0;
  }
  return chsh(rho, {MeasurementSetting(t[0]), MeasurementSetting(t[1]), MeasurementSetting(t[2]),
                    MeasurementSetting(t[3])});
}

ChshValue chsh_maximize(const PureState& psi, int grid_density, bool refine, unsigned threads) {
  require_two_qubits(psi.dims());
  return chsh_maximize(projector(psi), grid_density, refine, threads);
}

}  // namespace entcorr
