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

#include "entcorr/state_file.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "entcorr/error.hpp"

namespace entcorr {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) { throw Error(ErrorCode::kParseError, message); }

void check_fields(const json& doc, const std::set<std::string>& allowed) {
  if (!doc.is_object()) fail("state file must be an object");
  for (const auto& item : doc.items()) {
    if (!allowed.contains(item.key())) fail("unknown field '" + item.key() + "'");
  }
  for (const auto& key : allowed) {
    if (!doc.contains(key)) fail("missing field '" + key + "'");
  }
}

Dims parse_dims(const json& value) {
  if (!value.is_array() || value.empty()) fail("'dims' must be a non-empty array");
  Dims dims;
  for (const auto& d : value) {
    if (!d.is_number_unsigned() || d.get<std::size_t>() == 0) fail("'dims' entries must be positive integers");
    dims.push_back(d.get<std::size_t>());
  }
  return dims;
}

Complex parse_pair(const json& value) {
  if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number()) {
    fail("amplitudes must be [re, im] number pairs");
  }
  return {value[0].get<double>(), value[1].get<double>()};
}

std::string format_pair(const Complex& c) {
  return "[" + format_number(c.real()) + ", " + format_number(c.imag()) + "]";
}

std::string format_dims(const Dims& dims) {
  std::string out = "[";
  for (std::size_t i = 0; i < dims.size(); ++i) {
    out += (i ? ", " : "") + std::to_string(dims[i]);
  }
  return out + "]";
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) return "0";
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw Error(ErrorCode::kInternalConsistency, "number formatting failed");
  return std::string(buffer, end);
}

AnyState parse_state_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed state file: ") + e.what());
  }
  check_fields(doc, {"kind", "dims", "data"});
  if (!doc["kind"].is_string()) fail("'kind' must be a string");
  const auto kind = doc["kind"].get<std::string>();
  Dims dims = parse_dims(doc["dims"]);
  const json& data = doc["data"];
  if (!data.is_array()) fail("'data' must be an array");

  if (kind == "pure") {
    std::vector<Complex> amplitudes;
    amplitudes.reserve(data.size());
    for (const auto& pair : data) amplitudes.push_back(parse_pair(pair));
    return validate_pure(std::move(dims), std::move(amplitudes));
  }
  if (kind == "mixed") {
    const auto n = static_cast<Eigen::Index>(data.size());
    Eigen::MatrixXcd matrix(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const json& row = data[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) fail("'data' must be a square array of rows");
      for (Eigen::Index j = 0; j < n; ++j) matrix(i, j) = parse_pair(row[static_cast<std::size_t>(j)]);
    }
    return validate_density(std::move(dims), std::move(matrix));
  }
  fail("'kind' must be \"pure\" or \"mixed\", got \"" + kind + "\"");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

AnyState read_state_file(const std::filesystem::path& path) { return parse_state_file(read_text_file(path)); }

std::string write_state_file(const PureState& psi) {
  std::string out = "{\n  \"kind\": \"pure\",\n  \"dims\": " + format_dims(psi.dims()) + ",\n  \"data\": [\n";
  const auto amplitudes = psi.amplitudes();
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    out += "    " + format_pair(amplitudes[i]) + (i + 1 < amplitudes.size() ? ",\n" : "\n");
  }
  return out + "  ]\n}\n";
}

std::string write_state_file(const DensityMatrix& rho) {
  std::string out = "{\n  \"kind\": \"mixed\",\n  \"dims\": " + format_dims(rho.dims()) + ",\n  \"data\": [\n";
  const Eigen::MatrixXcd& m = rho.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out += "    [";
    for (Eigen::Index j = 0; j < m.cols(); ++j) out += (j ? ", " : "") + format_pair(m(i, j));
    out += i + 1 < m.rows() ? "],\n" : "]\n";
  }
  return out + "  ]\n}\n";
}

std::string write_state_file(const AnyState& state) {
  return std::visit([](const auto& s) { return write_state_file(s); }, state);
}

}  // namespace entcorr
