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

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "entcorr/qstate.hpp"

namespace entcorr {

using AnyState = std::variant<PureState, DensityMatrix>;

/// Parses a state file:
///
///   {"kind": "pure",  "dims": [2, 2], "data": [[re, im], ...]}
///   {"kind": "mixed", "dims": [2, 2], "data": [[[re, im], ...], ...]}
///
/// Unknown fields are rejected. The result is validated.
AnyState parse_state_file(std::string_view text);
AnyState read_state_file(const std::filesystem::path& path);

/// Canonical text form: fixed key order, one amplitude (or matrix row) per
/// line, shortest round-trip decimal numbers. Parsing a canonical file and
/// writing it back is byte-identical.
std::string write_state_file(const PureState& psi);
std::string write_state_file(const DensityMatrix& rho);
std::string write_state_file(const AnyState& state);

/// Shortest decimal that parses back to the same double (at most 17
/// significant digits). Negative zero is written as 0.
std::string format_number(double value);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace entcorr
