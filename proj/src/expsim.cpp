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

#include "entcorr/expsim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <thread>

#include <json.hpp>

#include "entcorr/correlations.hpp"
#include "entcorr/error.hpp"
#include "entcorr/measures.hpp"
#include "entcorr/philox.hpp"

namespace entcorr {

namespace {

// Inverse-CDF lookup over the cells; zero-probability cells are never chosen.
std::size_t pick_cell(const std::vector<double>& cumulative, const std::vector<std::size_t>& cells, double u) {
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  const auto pos = static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                                                      static_cast<std::ptrdiff_t>(cells.size()) - 1));
  return cells[pos];
}

double plug_in_en(const std::vector<std::uint64_t>& counts, std::size_t n, std::uint64_t shots) {
  Eigen::MatrixXd joint(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      joint(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          static_cast<double>(counts[i * n + j]) / static_cast<double>(shots);
    }
  }
  return en_correlation_sum(table_from_joint(std::move(joint))).value;
}

// Multinomial draw by sequential conditional binomials.
std::vector<std::uint64_t> resample(const std::vector<double>& probabilities, std::uint64_t shots,
                                    CounterStream& stream) {
  std::vector<std::uint64_t> out(probabilities.size(), 0);
  std::uint64_t remaining = shots;
  double mass = 1.0;
  for (std::size_t k = 0; k < probabilities.size() && remaining > 0; ++k) {
    const double p = probabilities[k];
    if (p <= 0.0) continue;
    const double conditional = mass > 0.0 ? p / mass : 1.0;
    std::uint64_t drawn = remaining;
    if (conditional < 1.0) {
      std::binomial_distribution<std::uint64_t> binomial(remaining, conditional);
      drawn = binomial(stream);
    }
    out[k] = drawn;
    remaining -= drawn;
    mass -= p;
  }
  return out;
}

[[noreturn]] void fail(const std::string& message) { throw Error(ErrorCode::kParseError, message); }

}  // namespace

MeasurementRecord simulate_measurements(const SchmidtDecomposition& dec, std::uint64_t shots, std::uint64_t seed,
                                        unsigned threads) {
  if (shots < 1) throw Error(ErrorCode::kInvalidShots, "shots must be at least 1");
  const std::size_t n = dec.size();
  // Cells with positive probability and their cumulative weights, in row-major
  // order. Only diagonal cells carry weight.
  std::vector<std::size_t> cells;
  std::vector<double> cumulative;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (dec.lambdas[i] > 0.0) {
      total += dec.lambdas[i];
      cells.push_back(i * n + i);
      cumulative.push_back(total);
    }
  }
  for (double& c : cumulative) c /= total;

  const CounterStream stream(seed, StreamDomain::kShots, 0);
  const unsigned workers = std::max(1u, threads);
  std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(n * n, 0));
  auto run = [&](unsigned w) {
    const std::uint64_t begin = shots * w / workers;
    const std::uint64_t end = shots * (w + 1) / workers;
    for (std::uint64_t shot = begin; shot < end; ++shot) {
      ++partial[w][pick_cell(cumulative, cells, stream.uniform_at(shot))];
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }

  MeasurementRecord record{n, std::vector<std::uint64_t>(n * n, 0), shots, seed};
  for (const auto& p : partial) {
    for (std::size_t k = 0; k < p.size(); ++k) record.counts[k] += p[k];
  }
  return record;
}

EstimateWithError estimate_en(const MeasurementRecord& record) {
  const std::size_t n = record.n;
  if (n < 2 || record.counts.size() != n * n) {
    throw Error(ErrorCode::kWrongDimension, "record needs n >= 2 and n^2 counts");
  }
  if (record.shots < n * n) {
    throw Error(ErrorCode::kTooFewShots,
                std::to_string(record.shots) + " shots is below the minimum of " + std::to_string(n * n));
  }
  EstimateWithError estimate;
  estimate.shots = record.shots;
  estimate.value = plug_in_en(record.counts, n, record.shots);

  std::vector<double> frequencies(n * n);
  for (std::size_t k = 0; k < frequencies.size(); ++k) {
    frequencies[k] = static_cast<double>(record.counts[k]) / static_cast<double>(record.shots);
  }
  std::vector<double> replicates;
  replicates.reserve(kBootstrapResamples);
  for (std::size_t b = 0; b < kBootstrapResamples; ++b) {
    CounterStream stream(record.seed, StreamDomain::kBootstrap, static_cast<std::uint32_t>(b));
    replicates.push_back(plug_in_en(resample(frequencies, record.shots, stream), n, record.shots));
  }
  double mean = 0.0;
  for (double r : replicates) mean += r;
  mean /= static_cast<double>(replicates.size());
  double variance = 0.0;
  for (double r : replicates) variance += (r - mean) * (r - mean);
  variance /= static_cast<double>(replicates.size() - 1);
  estimate.std_error = std::sqrt(variance);
  return estimate;
}

std::uint64_t schedule_seed(std::uint64_t seed, std::size_t index) {
  return CounterStream(seed, StreamDomain::kScheduleSeed, 0).bits64_at(index);
}

std::vector<EstimateWithError> estimate_convergence_scan(const SchmidtDecomposition& dec,
                                                         std::span<const std::uint64_t> schedule, std::uint64_t seed,
                                                         unsigned threads) {
  if (schedule.empty()) throw Error(ErrorCode::kInvalidArgument, "shot schedule is empty");
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (schedule[i] <= schedule[i - 1]) {
      throw Error(ErrorCode::kNotIncreasing, "shot schedule must be strictly increasing");
    }
  }
  std::vector<EstimateWithError> out;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    out.push_back(estimate_en(simulate_measurements(dec, schedule[i], schedule_seed(seed, i), threads)));
  }
  return out;
}

std::string write_record_file(const MeasurementRecord& record) {
  std::string out = "{\n  \"kind\": \"record\",\n  \"n\": " + std::to_string(record.n) +
                    ",\n  \"shots\": " + std::to_string(record.shots) + ",\n  \"seed\": " + std::to_string(record.seed) +
                    ",\n  \"counts\": [";
  for (std::size_t k = 0; k < record.counts.size(); ++k) {
    out += (k ? ", " : "") + std::to_string(record.counts[k]);
  }
  return out + "]\n}\n";
}

MeasurementRecord parse_record_file(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed record file: ") + e.what());
  }
  if (!doc.is_object()) fail("record file must be an object");
  const std::set<std::string> fields{"kind", "n", "shots", "seed", "counts"};
  for (const auto& item : doc.items()) {
    if (!fields.contains(item.key())) fail("unknown field '" + item.key() + "'");
  }
  for (const auto& key : fields) {
    if (!doc.contains(key)) fail("missing field '" + key + "'");
  }
  if (doc["kind"] != "record") fail("'kind' must be \"record\"");
  for (const char* key : {"n", "shots", "seed"}) {
    if (!doc[key].is_number_unsigned()) fail(std::string("'") + key + "' must be a non-negative integer");
  }
  MeasurementRecord record;
  record.n = doc["n"].get<std::size_t>();
  record.shots = doc["shots"].get<std::uint64_t>();
  record.seed = doc["seed"].get<std::uint64_t>();
  const json& counts = doc["counts"];
  if (!counts.is_array() || counts.size() != record.n * record.n) fail("'counts' must hold n^2 integers");
  std::uint64_t total = 0;
  for (const auto& c : counts) {
    if (!c.is_number_unsigned()) fail("'counts' entries must be non-negative integers");
    record.counts.push_back(c.get<std::uint64_t>());
    total += record.counts.back();
  }
  if (total != record.shots) fail("counts sum to " + std::to_string(total) + " but shots is " + std::to_string(record.shots));
  return record;
}

}  // namespace entcorr
