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
#include <string_view>

#include "entcorr/correlations.hpp"
#include "entcorr/qstate.hpp"
#include "entcorr/schmidt.hpp"

namespace entcorr {

enum class Method { kCorrelationSum, kClosedForm, kConvexRoof, kMonteCarlo };

std::string_view to_string(Method method);

struct EntanglementValue {
  double value = 0.0;
  Method method = Method::kClosedForm;
  std::size_t n = 0;  // Schmidt-space size used for normalization
};

struct TangleValue {
  double value = 0.0;
};

/// Values that land within 1e-9 outside [0, 1] are clamped; anything
/// further out throws kInternalConsistency.
double clamp_unit(double value, std::string_view what);

/// Sum of the four deltas of a two-outcome table: the squared concurrence.
EntanglementValue e2_correlation_sum(const CorrelationTable& table);

/// N / (2 (N - 1)) times the sum of all deltas.
EntanglementValue en_correlation_sum(const CorrelationTable& table);

/// N / (N - 1) * (1 - sum lambda_i^2).
EntanglementValue en_closed_form(const SchmidtDecomposition& dec);

/// Residual three-way tangle of a three-qubit pure state:
/// C^2_{A(BC)} - C^2_{AB} - C^2_{AC}.
TangleValue three_tangle(const PureState& psi);

}  // namespace entcorr
