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

#include "entcorr/convexroof.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>
#include <utility>

#include "entcorr/correlations.hpp"
#include "entcorr/error.hpp"
#include "entcorr/measures.hpp"
#include "entcorr/philox.hpp"
#include "entcorr/schmidt.hpp"

namespace entcorr {

namespace {

constexpr double kWeightFloor = 1e-14;
constexpr int kGoldenSteps = 24;
constexpr double kBracketHalfWidth = std::numbers::pi / 2.0;

// sy (x) sy in the computational basis |00>, |01>, |10>, |11>.
Eigen::Matrix4cd spin_flip() {
  Eigen::Matrix4cd y = Eigen::Matrix4cd::Zero();
  y(0, 3) = -1.0;
  y(1, 2) = 1.0;
  y(2, 1) = 1.0;
  y(3, 0) = -1.0;
  return y;
}

struct Eigenpairs {
  Eigen::MatrixXcd scaled;  // columns sqrt(mu_j) |v_j>, mu_j > kRankTol
};

Eigenpairs nonzero_eigenpairs(const DensityMatrix& rho) {
  const Eigen::MatrixXcd& m = rho.matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(0.5 * (m + m.adjoint()));
  const Eigen::VectorXd& mu = solver.eigenvalues();
  std::vector<Eigen::Index> kept;
  // Descending order, so the eigendecomposition lists its heaviest state first.
  for (Eigen::Index k = mu.size() - 1; k >= 0; --k) {
    if (mu(k) > kRankTol) kept.push_back(k);
  }
  Eigenpairs out;
  out.scaled.resize(m.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c) {
    out.scaled.col(static_cast<Eigen::Index>(c)) = std::sqrt(mu(kept[c])) * solver.eigenvectors().col(kept[c]);
  }
  return out;
}

void check_roof_dims(const Dims& dims, RoofMeasure measure) {
  if (measure == RoofMeasure::kE2 && dims != Dims{2, 2}) {
    throw Error(ErrorCode::kWrongDimension, "the e2 roof needs dims [2, 2]");
  }
  if (measure == RoofMeasure::kEn && dims != Dims{2, 2} && dims != Dims{3, 3}) {
    throw Error(ErrorCode::kWrongDimension, "the en roof is offered for dims [2, 2] and [3, 3] only");
  }
}

// Objective and isometry parametrization for one density matrix.
class RoofProblem {
 public:
  RoofProblem(Dims dims, Eigen::MatrixXcd scaled, std::size_t ensemble_size, RoofMeasure measure)
      : dims_(std::move(dims)),
        scaled_(std::move(scaled)),
        rank_(static_cast<std::size_t>(scaled_.cols())),
        size_(ensemble_size),
        measure_(measure),
        schmidt_n_(std::min(dims_[0], dims_[1])) {
    // Rotations on adjacent rows in the order a QR-style elimination of an
    // m x r isometry would use them; together with r column phases they cover
    // every isometry.
    for (std::size_t k = 0; k < rank_; ++k) {
      for (std::size_t j = size_ - 1; j > k; --j) rotations_.push_back(j - 1);
    }
  }

  std::size_t parameter_count() const { return 2 * rotations_.size() + rank_; }
  std::size_t rank() const { return rank_; }

  Eigen::MatrixXcd isometry(const Eigen::VectorXd& x) const {
    const auto m = static_cast<Eigen::Index>(size_);
    const auto r = static_cast<Eigen::Index>(rank_);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(m, r);
    const std::size_t phase_offset = 2 * rotations_.size();
    for (Eigen::Index k = 0; k < r; ++k) {
      u(k, k) = std::polar(1.0, x(static_cast<Eigen::Index>(phase_offset) + k));
    }
    for (std::size_t idx = rotations_.size(); idx-- > 0;) {
      const auto p = static_cast<Eigen::Index>(rotations_[idx]);
      const double c = std::cos(x(static_cast<Eigen::Index>(2 * idx)));
      const double s = std::sin(x(static_cast<Eigen::Index>(2 * idx)));
      const Complex phase = std::polar(1.0, x(static_cast<Eigen::Index>(2 * idx + 1)));
      for (Eigen::Index col = 0; col < r; ++col) {
        const Complex up = u(p, col);
        const Complex uq = u(p + 1, col);
        u(p, col) = c * up - std::conj(phase) * s * uq;
        u(p + 1, col) = phase * s * up + c * uq;
      }
    }
    return u;
  }

  /// Columns are the subnormalized states psi~_i.
  Eigen::MatrixXcd ensemble(const Eigen::VectorXd& x) const { return scaled_ * isometry(x).transpose(); }

  /// p * E(psi~ / sqrt(p)) for one subnormalized state.
  double weighted_measure(const Eigen::Ref<const Eigen::VectorXcd>& v) const {
    const double p = v.squaredNorm();
    if (p <= 0.0) return 0.0;
    if (measure_ == RoofMeasure::kE2) {
      return 4.0 * std::norm(v(0) * v(3) - v(1) * v(2)) / p;
    }
    const auto rows = static_cast<Eigen::Index>(dims_[0]);
    const auto cols = static_cast<Eigen::Index>(dims_[1]);
    Eigen::MatrixXcd a(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = v(i * cols + j);
    }
    const double purity_times_p2 = (a * a.adjoint()).squaredNorm();
    const auto n = static_cast<double>(schmidt_n_);
    return n / (n - 1.0) * (p - purity_times_p2 / p);
  }

  double objective(const Eigen::VectorXd& x) const {
    const Eigen::MatrixXcd states = ensemble(x);
    double total = 0.0;
    for (Eigen::Index i = 0; i < states.cols(); ++i) total += weighted_measure(states.col(i));
    return total;
  }

  /// Normalized decomposition and its average measure, recomputed through the
  /// pure-state measures.
  std::pair<Decomposition, double> decomposition(const Eigen::VectorXd& x) const {
    const Eigen::MatrixXcd states = ensemble(x);
    Decomposition dec;
    double value = 0.0;
    for (Eigen::Index i = 0; i < states.cols(); ++i) {
      const double p = states.col(i).squaredNorm();
      if (p <= kWeightFloor) continue;
      PureState psi = validate_pure(dims_, Eigen::VectorXcd(states.col(i) / std::sqrt(p)));
      value += p * pure_measure(psi, measure_);
      dec.weights.push_back(p);
      dec.states.push_back(std::move(psi));
    }
    return {std::move(dec), value};
  }

 private:
  Dims dims_;
  Eigen::MatrixXcd scaled_;
  std::size_t rank_;
  std::size_t size_;
  RoofMeasure measure_;
  std::size_t schmidt_n_;
  std::vector<std::size_t> rotations_;  // rotation acts on rows (p, p + 1)
};

struct RestartOutcome {
  Eigen::VectorXd x;
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> trace;
};

// Minimizes f along one coordinate on [x_k - h, x_k + h]. Returns the best
// point seen if it beats the current value.
template <typename F>
void golden_line_search(F&& f, Eigen::VectorXd& x, double& fx, Eigen::Index k) {
  constexpr double kInvPhi = 0.6180339887498949;
  const double origin = x(k);
  double lo = origin - kBracketHalfWidth;
  double hi = origin + kBracketHalfWidth;
  auto eval = [&](double t) {
    x(k) = t;
    return f(x);
  };
  double best_t = origin;
  double best_f = fx;
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = eval(c);
  double fd = eval(d);
  for (int step = 0; step < kGoldenSteps; ++step) {
    if (fc < best_f) best_f = fc, best_t = c;
    if (fd < best_f) best_f = fd, best_t = d;
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = eval(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = eval(d);
    }
  }
  if (fc < best_f) best_f = fc, best_t = c;
  if (fd < best_f) best_f = fd, best_t = d;
  x(k) = best_t;
  fx = best_f;
}

RestartOutcome run_restart(const RoofProblem& problem, const RoofOptions& options, std::size_t restart) {
  const auto n = static_cast<Eigen::Index>(problem.parameter_count());
  RestartOutcome out;
  out.x = Eigen::VectorXd::Zero(n);
  if (restart > 0) {
    CounterStream stream(options.seed, StreamDomain::kRoofRestart, static_cast<std::uint32_t>(restart));
    for (Eigen::Index k = 0; k < n; ++k) out.x(k) = (2.0 * stream.uniform() - 1.0) * std::numbers::pi;
  }
  auto f = [&](const Eigen::VectorXd& x) { return problem.objective(x); };
  out.value = f(out.x);
  out.trace.push_back(out.value);
  while (out.iterations < options.max_iterations) {
    for (Eigen::Index k = 0; k < n; ++k) golden_line_search(f, out.x, out.value, k);
    ++out.iterations;
    out.trace.push_back(out.value);
    if (out.trace.size() > options.patience) {
      const double earlier = out.trace[out.trace.size() - 1 - options.patience];
      if (earlier - out.value < options.conv_tol) {
        out.converged = true;
        break;
      }
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(RoofMeasure measure) { return measure == RoofMeasure::kE2 ? "e2" : "en"; }

RoofMeasure parse_roof_measure(std::string_view name) {
  if (name == "e2") return RoofMeasure::kE2;
  if (name == "en") return RoofMeasure::kEn;
  throw Error(ErrorCode::kInvalidArgument, "measure must be e2 or en, got '" + std::string(name) + "'");
}

Eigen::MatrixXcd Decomposition::reconstruct() const {
  if (states.empty()) return {};
  const auto n = static_cast<Eigen::Index>(states.front().dimension());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t i = 0; i < states.size(); ++i) {
    const Eigen::VectorXcd v = states[i].vector();
    rho += weights[i] * v * v.adjoint();
  }
  return rho;
}

double pure_measure(const PureState& psi, RoofMeasure measure) {
  const SchmidtDecomposition dec = schmidt_decompose(psi);
  if (measure == RoofMeasure::kE2) {
    if (psi.dims() != Dims{2, 2}) throw Error(ErrorCode::kWrongDimension, "e2 needs dims [2, 2]");
    return e2_correlation_sum(correlation_table(dec)).value;
  }
  return en_closed_form(dec).value;
}

double eigendecomposition_average(const DensityMatrix& rho, RoofMeasure measure) {
  check_roof_dims(rho.dims(), measure);
  Eigenpairs pairs = nonzero_eigenpairs(rho);
  const auto rank = static_cast<std::size_t>(pairs.scaled.cols());
  RoofProblem problem(rho.dims(), std::move(pairs.scaled), rank, measure);
  return problem.decomposition(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(problem.parameter_count()))).second;
}

RoofResult convex_roof(const DensityMatrix& rho, RoofMeasure measure, const RoofOptions& options) {
  check_roof_dims(rho.dims(), measure);
  if (options.restarts == 0) throw Error(ErrorCode::kInvalidArgument, "restarts must be at least 1");
  if (options.patience == 0) throw Error(ErrorCode::kInvalidArgument, "patience must be at least 1");

  Eigenpairs pairs = nonzero_eigenpairs(rho);
  const auto rank = static_cast<std::size_t>(pairs.scaled.cols());
  const std::size_t cap = options.ensemble_cap == 0 ? rank * rank : options.ensemble_cap;
  if (cap < rank) {
    throw Error(ErrorCode::kInvalidArgument, "ensemble cap " + std::to_string(cap) + " is below rank(rho) = " +
                                                 std::to_string(rank));
  }
  const RoofProblem problem(rho.dims(), std::move(pairs.scaled), cap, measure);

  std::vector<RestartOutcome> outcomes(options.restarts);
  const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(options.restarts)));
  if (workers == 1) {
    for (std::size_t i = 0; i < options.restarts; ++i) outcomes[i] = run_restart(problem, options, i);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < options.restarts; i += workers) outcomes[i] = run_restart(problem, options, i);
      });
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < outcomes.size(); ++i) {
    if (outcomes[i].value < outcomes[best].value) best = i;
  }

  RoofResult result;
  auto [decomposition, value] = problem.decomposition(outcomes[best].x);
  auto [baseline, baseline_value] =
      problem.decomposition(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(problem.parameter_count())));
  if (baseline_value < value) {
    decomposition = std::move(baseline);
    value = baseline_value;
  }
  result.value = clamp_unit(value, "convex roof");
  result.decomposition = std::move(decomposition);
  result.iterations = outcomes[best].iterations;
  result.converged = outcomes[best].converged;
  result.restarts_used = options.restarts;
  for (auto& o : outcomes) result.traces.push_back(std::move(o.trace));
  return result;
}

double two_qubit_concurrence_of_ensemble(const Eigen::MatrixXcd& ensemble) {
  if (ensemble.rows() != 4) throw Error(ErrorCode::kWrongDimension, "two-qubit concurrence needs 4-dimensional states");
  const Eigen::MatrixXcd t = ensemble.transpose() * spin_flip() * ensemble;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(t);
  const Eigen::VectorXd& s = svd.singularValues();
  double c = s.size() > 0 ? s(0) : 0.0;
  for (Eigen::Index i = 1; i < s.size(); ++i) c -= s(i);
  return clamp_unit(std::max(c, 0.0), "concurrence");
}

double two_qubit_concurrence(const DensityMatrix& rho) {
  if (rho.dims() != Dims{2, 2}) throw Error(ErrorCode::kWrongDimension, "two-qubit concurrence needs dims [2, 2]");
  return two_qubit_concurrence_of_ensemble(nonzero_eigenpairs(rho).scaled);
}

}  // namespace entcorr
