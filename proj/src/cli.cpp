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

#include "entcorr/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "entcorr/bell.hpp"
#include "entcorr/convexroof.hpp"
#include "entcorr/correlations.hpp"
#include "entcorr/error.hpp"
#include "entcorr/expsim.hpp"
#include "entcorr/measures.hpp"
#include "entcorr/schmidt.hpp"
#include "entcorr/state_file.hpp"

namespace entcorr {

namespace {

using Json = nlohmann::ordered_json;

struct CommonOptions {
  std::string state_path;
  std::string format = "text";
  unsigned threads = 1;
};

struct MeasureOptions {};

struct BellOptions {
  std::vector<double> angles;
  int grid = 0;
  bool refine = false;
};

struct SimulateOptions {
  std::uint64_t shots = 1000000;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> schedule;
  std::string record_out;
  std::string from_record;
};

struct RoofCliOptions {
  std::string measure = "e2";
  std::size_t restarts = 8;
  std::uint64_t seed = 0;
  std::size_t ensemble_cap = 0;
  double conv_tol = 1e-7;
  std::size_t patience = 25;
  std::size_t max_iterations = 2000;
};

struct ValidateOptions {
  std::string record_path;
};

Json vector_json(const std::vector<double>& v) { return Json(v); }

Json matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json dims_json(const Dims& dims) { return Json(dims); }

Json measure_json(std::string_view name, const EntanglementValue& v) {
  return Json{{"name", name}, {"method", to_string(v.method)}, {"value", v.value}, {"n", v.n}};
}

Json table_json(const CorrelationTable& t) {
  Json conditional = Json::array();
  for (const auto& row : t.conditional) {
    Json r = Json::array();
    for (const auto& c : row) r.push_back(c ? Json(*c) : Json(nullptr));
    conditional.push_back(std::move(r));
  }
  return Json{{"n", t.n},
              {"local_a", vector_json(t.local_a)},
              {"local_b", vector_json(t.local_b)},
              {"joint", matrix_json(t.joint)},
              {"conditional", std::move(conditional)},
              {"delta", matrix_json(t.delta)}};
}

Json header(std::string_view command) {
  return Json{{"kind", "report"}, {"tool", "entcorr"}, {"version", kToolVersion}, {"command", command}};
}

Json input_json(const std::string& path, const AnyState& state) {
  return std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        return Json{{"path", path}, {"kind", std::is_same_v<T, PureState> ? "pure" : "mixed"}, {"dims", dims_json(s.dims())}};
      },
      state);
}

// Dominant eigenvector of a density matrix with purity 1.
PureState pure_from_density(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(0.5 * (rho.matrix() + rho.matrix().adjoint()));
  const Eigen::Index top = solver.eigenvalues().size() - 1;
  return validate_pure(rho.dims(), Eigen::VectorXcd(solver.eigenvectors().col(top).normalized()));
}

bool is_pure_like(const DensityMatrix& rho) { return purity(rho) >= 1.0 - kNormTol; }

Json bipartite_measures(const PureState& psi, Json report) {
  const SchmidtDecomposition dec = schmidt_decompose(psi);
  const CorrelationTable table = correlation_table(dec);
  const SchmidtRank rank = schmidt_rank(dec);
  report["schmidt"] = Json{{"lambdas", vector_json(dec.lambdas)}, {"rank", rank.value}};
  report["correlations"] = table_json(table);
  Json measures = Json::array();
  if (table.n == 2) measures.push_back(measure_json("E2", e2_correlation_sum(table)));
  if (table.n >= 2) {
    measures.push_back(measure_json("E_N", en_correlation_sum(table)));
    measures.push_back(measure_json("E_N", en_closed_form(dec)));
  }
  report["measures"] = std::move(measures);
  report["separable"] = rank.separable();
  return report;
}

// Plain-text rendering of a report: one "key: value" line per scalar,
// numbers at 10 significant digits, nested blocks indented.
void render_text(const Json& value, std::ostream& out, int indent);

std::string scalar_text(const Json& v) {
  if (v.is_null()) return "undefined";
  if (v.is_number_float()) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.10g", v.get<double>());
    return buffer;
  }
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool is_flat(const Json& v) {
  if (!v.is_array()) return false;
  for (const auto& x : v) {
    if (x.is_structured()) return false;
  }
  return true;
}

void render_text(const Json& value, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, v] : value.items()) {
    if (indent == 0 && (key == "kind" || key == "tool")) continue;
    if (v.is_object()) {
      out << pad << key << ":\n";
      render_text(v, out, indent + 2);
    } else if (is_flat(v)) {
      out << pad << key << ":";
      for (const auto& x : v) out << ' ' << scalar_text(x);
      out << '\n';
    } else if (v.is_array()) {
      out << pad << key << ":\n";
      for (const auto& row : v) {
        if (row.is_object()) {
          out << pad << "  -\n";
          render_text(row, out, indent + 4);
        } else {
          out << pad << "  ";
          for (const auto& x : row) out << ' ' << scalar_text(x);
          out << '\n';
        }
      }
    } else {
      out << pad << key << ": " << scalar_text(v) << '\n';
    }
  }
}

void emit(const Json& report, const CommonOptions& common, std::ostream& out) {
  if (common.format == "machine") {
    out << report.dump(2) << '\n';
  } else {
    out << "entcorr " << kToolVersion << ' ' << report["command"].get<std::string>() << '\n';
    Json body = report;
    body.erase("command");
    body.erase("version");
    render_text(body, out, 0);
  }
}

Json run_measure(const CommonOptions& common) {
  const AnyState state = read_state_file(common.state_path);
  Json report = header("measure");
  report["input"] = input_json(common.state_path, state);
  if (const auto* psi = std::get_if<PureState>(&state)) {
    if (psi->dims().size() == 3) {
      const TangleValue tau = three_tangle(*psi);
      report["three_tangle"] = tau.value;
      if (psi->dims() == Dims{2, 2, 2}) {
        const PureState split = validate_pure({2, 4}, psi->vector());
        const double c_ab = two_qubit_concurrence(reduced_pair(*psi, 0, 1));
        const double c_ac = two_qubit_concurrence(reduced_pair(*psi, 0, 2));
        report["squared_concurrences"] =
            Json{{"A|BC", en_closed_form(schmidt_decompose(split)).value}, {"AB", c_ab * c_ab}, {"AC", c_ac * c_ac}};
      }
      return report;
    }
    return bipartite_measures(*psi, std::move(report));
  }
  const auto& rho = std::get<DensityMatrix>(state);
  report["purity"] = purity(rho);
  if (is_pure_like(rho)) {
    report["routed_to_pure"] = true;
    return bipartite_measures(pure_from_density(rho), std::move(report));
  }
  report["routed_to_pure"] = false;
  if (rho.dims() == Dims{2, 2}) {
    const double c = two_qubit_concurrence(rho);
    report["concurrence"] = c;
    report["E2"] = Json{{"name", "E2"}, {"method", "closed_form"}, {"value", c * c}, {"n", 2}};
  }
  return report;
}

Json run_bell(const CommonOptions& common, const BellOptions& options) {
  const AnyState state = read_state_file(common.state_path);
  const DensityMatrix rho = std::visit(
      [](const auto& s) -> DensityMatrix {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, PureState>) {
          if (s.dims() != Dims{2, 2}) throw Error(ErrorCode::kWrongDimension, "Bell tests need a two-qubit state");
          return projector(s);
        } else {
          return s;
        }
      },
      state);
  Json report = header("bell");
  report["input"] = input_json(common.state_path, state);
  Json chsh_block;
  const ChshValue value = [&] {
    if (!options.angles.empty()) {
      if (options.angles.size() != 4) throw Error(ErrorCode::kInvalidArgument, "--angles takes four values a,a',b,b'");
      chsh_block["mode"] = "angles";
      return chsh(rho, {MeasurementSetting(options.angles[0]), MeasurementSetting(options.angles[1]),
                        MeasurementSetting(options.angles[2]), MeasurementSetting(options.angles[3])});
    }
    const int grid = options.grid == 0 ? 16 : options.grid;
    chsh_block["mode"] = "maximize";
    chsh_block["grid"] = grid;
    chsh_block["refine"] = options.refine;
    return chsh_maximize(rho, grid, options.refine, common.threads);
  }();
  const auto& st = value.settings;
  chsh_block["angles"] = Json::array({st.a.angle(), st.a_prime.angle(), st.b.angle(), st.b_prime.angle()});
  chsh_block["s"] = value.s;
  chsh_block["abs_s"] = std::abs(value.s);
  chsh_block["classical_bound"] = 2.0;
  chsh_block["tsirelson_bound"] = kTsirelsonBound;
  chsh_block["violates_classical_bound"] = std::abs(value.s) > 2.0 + 1e-9;
  if (is_pure_like(rho)) {
    const CorrelationTable table = correlation_table(schmidt_decompose(pure_from_density(rho)));
    const double e2 = e2_correlation_sum(table).value;
    chsh_block["E2"] = e2;
    chsh_block["max_s_from_E2"] = 2.0 * std::sqrt(1.0 + e2);
  }
  report["chsh"] = std::move(chsh_block);
  return report;
}

Json estimate_json(const EstimateWithError& e) {
  return Json{{"value", e.value}, {"std_error", e.std_error}, {"shots", e.shots}};
}

Json run_simulate(const CommonOptions& common, const SimulateOptions& options) {
  Json report = header("simulate");
  if (!options.from_record.empty()) {
    const MeasurementRecord record = parse_record_file(read_text_file(options.from_record));
    report["input"] = Json{{"path", options.from_record}, {"kind", "record"}, {"n", record.n}};
    report["estimate"] = estimate_json(estimate_en(record));
    report["seed"] = record.seed;
    return report;
  }
  const AnyState state = read_state_file(common.state_path);
  const auto* psi = std::get_if<PureState>(&state);
  if (psi == nullptr || psi->dims().size() != 2) {
    throw Error(ErrorCode::kWrongDimension, "simulate needs a two-party pure state");
  }
  const SchmidtDecomposition dec = schmidt_decompose(*psi);
  report["input"] = input_json(common.state_path, state);
  report["seed"] = options.seed;
  report["truth"] = measure_json("E_N", en_closed_form(dec));
  if (!options.schedule.empty()) {
    const auto scan = estimate_convergence_scan(dec, options.schedule, options.seed, common.threads);
    Json entries = Json::array();
    for (std::size_t i = 0; i < scan.size(); ++i) {
      Json e = estimate_json(scan[i]);
      e["seed"] = schedule_seed(options.seed, i);
      entries.push_back(std::move(e));
    }
    report["scan"] = std::move(entries);
    return report;
  }
  const MeasurementRecord record = simulate_measurements(dec, options.shots, options.seed, common.threads);
  Json counts = Json::array();
  for (std::size_t i = 0; i < record.n; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < record.n; ++j) row.push_back(record.count(i, j));
    counts.push_back(std::move(row));
  }
  report["simulation"] = Json{{"shots", record.shots}, {"seed", record.seed}, {"counts", std::move(counts)}};
  if (!options.record_out.empty()) {
    std::ofstream file(options.record_out, std::ios::binary);
    if (!file) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + options.record_out + "'");
    file << write_record_file(record);
    report["simulation"]["record_file"] = options.record_out;
  }
  report["estimate"] = estimate_json(estimate_en(record));
  return report;
}

Json run_roof(const CommonOptions& common, const RoofCliOptions& options) {
  const AnyState state = read_state_file(common.state_path);
  const DensityMatrix rho = std::visit(
      [](const auto& s) -> DensityMatrix {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, PureState>) {
          return projector(s);
        } else {
          return s;
        }
      },
      state);
  const RoofMeasure measure = parse_roof_measure(options.measure);
  RoofOptions roof;
  roof.restarts = options.restarts;
  roof.seed = options.seed;
  roof.ensemble_cap = options.ensemble_cap;
  roof.conv_tol = options.conv_tol;
  roof.patience = options.patience;
  roof.max_iterations = options.max_iterations;
  roof.threads = common.threads;
  const RoofResult result = convex_roof(rho, measure, roof);

  Json report = header("roof");
  report["input"] = input_json(common.state_path, state);
  report["seed"] = options.seed;
  Json decomposition = Json::array();
  for (std::size_t i = 0; i < result.decomposition.states.size(); ++i) {
    decomposition.push_back(Json{{"weight", result.decomposition.weights[i]},
                                 {"measure", pure_measure(result.decomposition.states[i], measure)}});
  }
  report["roof"] = Json{{"measure", to_string(measure)},
                        {"value", result.value},
                        {"eigendecomposition_average", eigendecomposition_average(rho, measure)},
                        {"converged", result.converged},
                        {"iterations", result.iterations},
                        {"restarts_used", result.restarts_used},
                        {"ensemble_size", result.decomposition.states.size()},
                        {"decomposition", std::move(decomposition)}};
  if (rho.dims() == Dims{2, 2}) {
    const double c = two_qubit_concurrence(rho);
    report["oracle"] = Json{{"concurrence", c}, {"concurrence_squared", c * c}};
  }
  return report;
}

Json run_validate(const CommonOptions& common, const ValidateOptions& options) {
  Json report = header("validate");
  if (!options.record_path.empty()) {
    const MeasurementRecord record = parse_record_file(read_text_file(options.record_path));
    report["input"] = Json{{"path", options.record_path}, {"kind", "record"}, {"n", record.n}};
    report["shots"] = record.shots;
    report["seed"] = record.seed;
    report["valid"] = true;
    return report;
  }
  const AnyState state = read_state_file(common.state_path);
  report["input"] = input_json(common.state_path, state);
  if (const auto* rho = std::get_if<DensityMatrix>(&state)) report["purity"] = purity(*rho);
  report["valid"] = true;
  return report;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInternalConsistency: return kExitInternal;
    case ErrorCode::kInvalidArgument: return kExitUsage;
    default: return kExitInvalidInput;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement from measurement-outcome correlations", "entcorr"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  CommonOptions common;
  BellOptions bell;
  SimulateOptions simulate;
  RoofCliOptions roof;
  ValidateOptions validate;

  auto add_common = [&](CLI::App* sub, bool state_required) {
    auto* state = sub->add_option("--state", common.state_path, "state file");
    if (state_required) state->required();
    sub->add_option("--format", common.format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
    sub->add_option("--threads", common.threads, "worker thread cap (results do not depend on it)")
        ->check(CLI::Range(1u, 1024u));
  };

  auto* measure_cmd = app.add_subcommand("measure", "Schmidt coefficients, correlation table, E2 and E_N");
  add_common(measure_cmd, true);

  auto* bell_cmd = app.add_subcommand("bell", "CHSH value at given angles or maximized over a grid");
  add_common(bell_cmd, true);
  auto* angles = bell_cmd->add_option("--angles", bell.angles, "a,a',b,b' in radians")->delimiter(',')->expected(4);
  auto* grid = bell_cmd->add_option("--grid", bell.grid, "grid density per angle")->check(CLI::Range(8, 256));
  bell_cmd->add_flag("--refine", bell.refine, "polish the best grid point by compass search");
  angles->excludes(grid);

  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo Schmidt-basis measurements and E_N estimate");
  add_common(simulate_cmd, false);
  simulate_cmd->add_option("--shots", simulate.shots, "number of shots")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", simulate.seed, "stream seed");
  simulate_cmd->add_option("--schedule", simulate.schedule, "increasing shot counts, comma separated")->delimiter(',');
  simulate_cmd->add_option("--record-out", simulate.record_out, "write the measurement record here");
  simulate_cmd->add_option("--from-record", simulate.from_record, "estimate from an existing record file");

  auto* roof_cmd = app.add_subcommand("roof", "Convex-roof extension to mixed states");
  add_common(roof_cmd, true);
  roof_cmd->add_option("--measure", roof.measure, "e2 or en")->check(CLI::IsMember({"e2", "en"}));
  roof_cmd->add_option("--restarts", roof.restarts, "random restarts")->check(CLI::PositiveNumber);
  roof_cmd->add_option("--seed", roof.seed, "restart stream seed");
  roof_cmd->add_option("--ensemble-cap", roof.ensemble_cap, "decomposition size (0 = rank^2)");
  roof_cmd->add_option("--conv-tol", roof.conv_tol, "convergence tolerance")->check(CLI::PositiveNumber);
  roof_cmd->add_option("--patience", roof.patience, "sweeps without improvement before stopping")
      ->check(CLI::PositiveNumber);
  roof_cmd->add_option("--max-iterations", roof.max_iterations, "sweep limit per restart")->check(CLI::PositiveNumber);

  auto* validate_cmd = app.add_subcommand("validate", "Parse and check a state or record file");
  add_common(validate_cmd, false);
  validate_cmd->add_option("--record", validate.record_path, "record file");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Json report;
    if (*measure_cmd) {
      report = run_measure(common);
    } else if (*bell_cmd) {
      report = run_bell(common, bell);
    } else if (*simulate_cmd) {
      if (simulate.from_record.empty() == common.state_path.empty()) {
        err << "simulate: give exactly one of --state or --from-record\n";
        return kExitUsage;
      }
      report = run_simulate(common, simulate);
    } else if (*roof_cmd) {
      report = run_roof(common, roof);
    } else {
      if (validate.record_path.empty() == common.state_path.empty()) {
        err << "validate: give exactly one of --state or --record\n";
        return kExitUsage;
      }
      report = run_validate(common, validate);
    }
    emit(report, common, out);
    return kExitOk;
  } catch (const Error& e) {
    err << "entcorr: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "entcorr: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace entcorr
