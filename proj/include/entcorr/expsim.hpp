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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entcorr/schmidt.hpp"

namespace entcorr {

/// Joint outcome tallies of Alice's and Bob's Schmidt-basis measurements.
struct MeasurementRecord {
  std::size_t n = 0;
  std::vector<std::uint64_t> counts;  // row-major n x n, counts[i * n + j] for (i_A, j_B)
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;

  std::uint64_t count(std::size_t i, std::size_t j) const { return counts.at(i * n + j); }
};

struct EstimateWithError {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t shots = 0;
};

inline constexpr std::size_t kBootstrapResamples = 200;

/// Draws `shots` joint outcomes from P(i_A, j_B) = delta_ij lambda_j. Shot k
/// uses block k of the (seed, shots-domain) stream, so the counts are the
/// same for every thread count.
MeasurementRecord simulate_measurements(const SchmidtDecomposition& dec, std::uint64_t shots, std::uint64_t seed,
                                        unsigned threads = 1);

/// Plug-in E_N over the full empirical table (off-diagonal noise included),
/// with a bootstrap standard error from kBootstrapResamples multinomial
/// resamples keyed by the record's seed.
EstimateWithError estimate_en(const MeasurementRecord& record);

/// One simulation and estimate per entry of a strictly increasing schedule;
/// entry i simulates with a seed derived from (seed, i).
std::vector<EstimateWithError> estimate_convergence_scan(const SchmidtDecomposition& dec,
                                                         std::span<const std::uint64_t> schedule, std::uint64_t seed,
                                                         unsigned threads = 1);

/// Seed used by entry `index` of a convergence scan.
std::uint64_t schedule_seed(std::uint64_t seed, std::size_t index);

/// {"kind": "record", "n": .., "shots": .., "seed": .., "counts": [row-major]}
std::string write_record_file(const MeasurementRecord& record);
MeasurementRecord parse_record_file(std::string_view text);

}  // namespace entcorr
