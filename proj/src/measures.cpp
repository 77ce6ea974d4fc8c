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

#include <sstream>
#include <string>

#include "entcorr/convexroof.hpp"
#include "entcorr/error.hpp"

namespace entcorr {

namespace {

constexpr double kClampTol = 1e-9;

double normalization(std::size_t n) { return static_cast<double>(n) / (2.0 * static_cast<double>(n - 1)); }

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kCorrelationSum: return "correlation_sum";
    case Method::kClosedForm: return "closed_form";
    case Method::kConvexRoof: return "convex_roof";
    case Method::kMonteCarlo: return "monte_carlo";
  }
  return "unknown";
}

double clamp_unit(double value, std::string_view what) {
  if (value < -kClampTol || value > 1.0 + kClampTol || !std::isfinite(value)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << " = " << value << " is outside [0, 1]";
    throw Error(ErrorCode::kInternalConsistency, msg.str());
  }
  return std::clamp(value, 0.0, 1.0);
}

EntanglementValue e2_correlation_sum(const CorrelationTable& table) {
  if (table.n != 2) {
    throw Error(ErrorCode::kWrongDimension, "E2 needs a two-outcome table, got n = " + std::to_string(table.n));
  }
  const double sum = table.delta(0, 0) + table.delta(0, 1) + table.delta(1, 0) + table.delta(1, 1);
  return {clamp_unit(sum, "E2"), Method::kCorrelationSum, 2};
}

EntanglementValue en_correlation_sum(const CorrelationTable& table) {
  if (table.n < 2) {
    throw Error(ErrorCode::kWrongDimension, "E_N needs n >= 2, got n = " + std::to_string(table.n));
  }
  return {clamp_unit(normalization(table.n) * table.delta_sum(), "E_N"), Method::kCorrelationSum, table.n};
}

EntanglementValue en_closed_form(const SchmidtDecomposition& dec) {
  const std::size_t n = dec.size();
  if (n < 2) {
    throw Error(ErrorCode::kWrongDimension, "E_N needs N >= 2, got N = " + std::to_string(n));
  }
  double sum_squares = 0.0;
  for (double l : dec.lambdas) sum_squares += l * l;
  const double value = static_cast<double>(n) / static_cast<double>(n - 1) * (1.0 - sum_squares);
  return {clamp_unit(value, "E_N"), Method::kClosedForm, n};
}

TangleValue three_tangle(const PureState& psi) {
  if (psi.dims() != Dims{2, 2, 2}) {
    throw Error(ErrorCode::kWrongDimension, "three_tangle needs a three-qubit state");
  }
  // A|(BC) split: same amplitudes viewed as a 2 x 4 state.
  const PureState split = validate_pure({2, 4}, psi.vector());
  const double c2_a_bc = en_closed_form(schmidt_decompose(split)).value;
  const double c_ab = two_qubit_concurrence(reduced_pair(psi, 0, 1));
  const double c_ac = two_qubit_concurrence(reduced_pair(psi, 0, 2));
  return {clamp_unit(c2_a_bc - c_ab * c_ab - c_ac * c_ac, "3-tangle")};
}

}  // namespace entcorr
