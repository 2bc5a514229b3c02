// Copyright 2026 The lrrom Authors.
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

#include "lrrom/solver.hpp"

#include "lrrom/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace lrrom {

namespace {

constexpr double kStationarityTolerance = 1e-8;

}  // namespace

const char* to_string(PartitionMode mode) {
  return mode == PartitionMode::split ? "split" : "reuse";
}

const char* to_string(LsMethod method) {
  return method == LsMethod::direct ? "direct" : "matrix-free";
}

const char* to_string(OutputForm form) {
  return form == OutputForm::last_fit ? "last-fit" : "literal";
}

PartitionMode partition_mode_from_string(std::string_view name) {
  if (name == "split") return PartitionMode::split;
  if (name == "reuse") return PartitionMode::reuse;
  throw ValidationError("unknown partition mode '" + std::string(name) + "'");
}

LsMethod ls_method_from_string(std::string_view name) {
  if (name == "direct") return LsMethod::direct;
  if (name == "matrix-free" || name == "matrix_free") return LsMethod::matrix_free;
  throw ValidationError("unknown least-squares method '" + std::string(name) + "'");
}

OutputForm output_form_from_string(std::string_view name) {
  if (name == "last-fit" || name == "last_fit") return OutputForm::last_fit;
  if (name == "literal") return OutputForm::literal;
  throw ValidationError("unknown output form '" + std::string(name) + "'");
}

void SolverConfig::validate() const {
  if (k < 1) throw ValidationError("solver: k must be >= 1");
  if (max_outer_iters < 1) throw ValidationError("solver: H must be >= 1");
  if (!(tolerance > 0.0)) throw ValidationError("solver: tolerance must be positive");
  if (!(ridge >= 0.0)) throw ValidationError("solver: ridge must be nonnegative");
  if (zero_signal_threshold && !(*zero_signal_threshold >= 0.0)) {
    throw ValidationError("solver: zero_signal_threshold must be nonnegative");
  }
  if (!(inner_tolerance > 0.0)) throw ValidationError("solver: inner tolerance must be positive");
  if (max_inner_iters < 0) throw ValidationError("solver: max_inner_iters must be >= 0");
}

std::vector<MeasurementSet> partition(const MeasurementSet& ms, int h, PartitionMode mode) {
  if (h < 1) throw ValidationError("partition: H must be >= 1");
  const Index parts = 2 * static_cast<Index>(h) + 1;
  std::vector<MeasurementSet> out;
  out.reserve(static_cast<std::size_t>(parts));
  if (mode == PartitionMode::reuse) {
    for (Index p = 0; p < parts; ++p) out.push_back(ms);
    return out;
  }
  const Index total = ms.size();
  if (total < parts) {
    throw InsufficientMeasurementsError(
        "partition: " + std::to_string(total) + " measurements cannot be split into " +
        std::to_string(parts) + " nonempty sets (H = " + std::to_string(h) + ")");
  }
  const Index block = total / parts;
  for (Index p = 0; p < parts; ++p) {
    const Index offset = p * block;
    const Index count = (p + 1 == parts) ? total - offset : block;
    out.emplace_back(ms.op->slice(offset, count), ms.b.segment(offset, count));
  }
  return out;
}

Initialization initialize(const MeasurementSet& set0, Index k, double zero_signal_threshold) {
  const MeasurementOperator& op = *set0.op;
  if (k < 1 || k > std::min(op.d1(), op.d2())) {
    throw RankError("initialize: k = " + std::to_string(k) + " exceeds min(d1, d2) = " +
                    std::to_string(std::min(op.d1(), op.d2())));
  }
  Initialization init;
  init.s = adjoint_weighted_sum(op, set0.b);
  init.signal_norm = spectral_norm(init.s);
  if (init.signal_norm <= zero_signal_threshold) {
    init.zero_signal = true;
    init.u0 = Matrix::Identity(op.d1(), k);
    return init;
  }
  init.u0 = top_left_singular_vectors(init.s, k);
  return init;
}

namespace {

Matrix unflatten(const Vector& x, Index rows, Index cols) {
  return Eigen::Map<const Matrix>(x.data(), rows, cols);
}

LsResult solve_direct(const FactorMap& map, const Vector& b, double ridge) {
  const Matrix design = map.design();
  const Index n = design.cols();
  LsResult out;
  Vector x;
  bool solved = false;

  if (design.rows() > 4 * n) {
    Matrix gram = Matrix::Zero(n, n);
    gram.selfadjointView<Eigen::Lower>().rankUpdate(design.transpose());
    gram.diagonal().array() += ridge;
    Eigen::LLT<Matrix> llt(gram.selfadjointView<Eigen::Lower>());
    if (llt.info() == Eigen::Success && llt.rcond() > 1e-12) {
      x = llt.solve(design.transpose() * b);
      out.normal_equations = true;
      solved = true;
    }
  }
  if (!solved) {
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod;
    cod.setThreshold(1e-12);
    if (ridge > 0.0) {
      Matrix augmented(design.rows() + n, n);
      augmented << design, std::sqrt(ridge) * Matrix::Identity(n, n);
      Vector rhs = Vector::Zero(design.rows() + n);
      rhs.head(design.rows()) = b;
      cod.compute(augmented);
      x = cod.solve(rhs);
    } else {
      cod.compute(design);
      x = cod.solve(b);
      out.rank_deficient = cod.rank() < n;
    }
  }
  out.gradient_norm = (design.transpose() * (design * x - b) + ridge * x).norm();
  out.factor = unflatten(x, map.free_rows(), map.rank());
  return out;
}

// CGLS on min |F(X) - b|^2 + ridge |X|^2 using only forward/adjoint.
LsResult solve_matrix_free(const FactorMap& map, const Vector& b, const LsOptions& options) {
  const Index rows = map.free_rows(), k = map.rank();
  const Index cap = options.max_inner_iters > 0
                        ? options.max_inner_iters
                        : std::max<Index>(50, 4 * map.unknowns());
  const double ridge = options.ridge;
  // Relative to the gradient at zero, so operator normalization does not
  // change how far the inner solve goes; never looser than the direct
  // solver's stationarity bound.
  const double g0 = map.adjoint(b).norm();
  const double tol = std::min(options.inner_tolerance * (g0 > 0.0 ? g0 : 1.0),
                              kStationarityTolerance * (1.0 + b.norm()));

  Matrix x = options.warm_start ? *options.warm_start : Matrix::Zero(rows, k);
  require_shape(x, rows, k, "matrix-free warm start");
  Vector residual = b - map.forward(x);
  Matrix s = map.adjoint(residual) - ridge * x;
  Matrix p = s;
  double gamma = s.squaredNorm();

  LsResult out;
  Index it = 0;
  while (std::sqrt(gamma) > tol && it < cap) {
    const Vector q = map.forward(p);
    const double delta = q.squaredNorm() + ridge * p.squaredNorm();
    if (!(delta > 0.0)) break;
    const double alpha = gamma / delta;
    x += alpha * p;
    ++it;
    // Recompute the residual now and then to stop drift.
    if (it % 50 == 0) {
      residual = b - map.forward(x);
    } else {
      residual -= alpha * q;
    }
    s = map.adjoint(residual) - ridge * x;
    const double next = s.squaredNorm();
    p = s + (next / gamma) * p;
    gamma = next;
  }
  out.inner_iterations = it;
  out.gradient_norm = (map.adjoint(map.forward(x) - b) + ridge * x).norm();
  out.inner_converged = out.gradient_norm <= tol;
  out.factor = std::move(x);
  return out;
}

}  // namespace

LsResult solve_factor(const FactorMap& map, const Vector& b, const LsOptions& options) {
  if (b.size() != map.rows()) throw DimensionError("least squares: b length differs from m");
  if (!(options.ridge >= 0.0)) throw ValidationError("least squares: ridge must be nonnegative");
  LsResult out = options.method == LsMethod::direct ? solve_direct(map, b, options.ridge)
                                                     : solve_matrix_free(map, b, options);
  if (!out.factor.allFinite()) throw NumericError("least squares produced a non-finite factor");
  return out;
}

LsResult ls_update_right(const Matrix& u, const MeasurementSet& set, const LsOptions& options) {
  const auto map = set.op->right_map(u);
  return solve_factor(*map, set.b, options);
}

LsResult ls_update_left(const Matrix& v, const MeasurementSet& set, const LsOptions& options) {
  const auto map = set.op->left_map(v);
  return solve_factor(*map, set.b, options);
}

namespace {

double relative_error(const Matrix& estimate, const Matrix& truth, bool spectral) {
  const Matrix diff = estimate - truth;
  const double den = spectral ? spectral_norm(truth) : truth.norm();
  const double num = spectral ? spectral_norm(diff) : diff.norm();
  return den > 0.0 ? num / den : num;
}

void finish_with_truth(RecoveryReport& report, const std::optional<Matrix>& wstar) {
  if (!wstar) return;
  const Matrix w = report.recovered();
  report.final_error_fro = relative_error(w, *wstar, false);
  report.final_error_spectral = relative_error(w, *wstar, true);
}

}  // namespace

RecoveryReport altmin_lrrom(const MeasurementSet& ms, const SolverConfig& config,
                            const std::optional<Matrix>& wstar) {
  config.validate();
  const MeasurementOperator& op = *ms.op;
  const Index k = config.k, d1 = op.d1(), d2 = op.d2();
  if (k > std::min(d1, d2)) {
    throw RankError("altmin: k = " + std::to_string(k) + " exceeds min(d1, d2) = " +
                    std::to_string(std::min(d1, d2)));
  }
  if (wstar) require_shape(*wstar, d1, d2, "altmin ground truth");

  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  auto seconds = [&] { return std::chrono::duration<double>(clock::now() - start).count(); };

  RecoveryReport report;
  report.config = config;
  const std::vector<MeasurementSet> sets = partition(ms, config.max_outer_iters,
                                                     config.partition_mode);
  const double threshold = config.zero_signal_threshold.value_or(
      1e-12 * std::sqrt(static_cast<double>(d1) * static_cast<double>(d2)));
  const Initialization init = initialize(sets[0], k, threshold);

  std::optional<Matrix> truth_basis;
  if (wstar && wstar->norm() > 0.0) truth_basis = top_left_singular_vectors(*wstar, k);
  if (truth_basis) report.initial_dist = subspace_dist(init.u0, *truth_basis);

  if (init.zero_signal) {
    report.zero_signal = true;
    report.converged = true;
    report.factors = {init.u0, Matrix::Zero(d2, k)};
    report.warnings.push_back("zero signal: |S|_2 below threshold, returning W = 0");
    finish_with_truth(report, wstar);
    return report;
  }

  LsOptions ls;
  ls.ridge = config.ridge;
  ls.method = config.ls_method;
  ls.inner_tolerance = config.inner_tolerance;
  ls.max_inner_iters = config.max_inner_iters;

  Matrix u = init.u0;
  // Warm starts (matrix_free only): the factor reproducing the latest product.
  Matrix v_start = init.s.transpose() * u;
  std::optional<Matrix> previous_w;
  bool warned_rank = false, warned_inner = false;

  for (int h = 0; h < config.max_outer_iters; ++h) {
    const int iter = h + 1;
    auto fail = [&](ErrorKind kind, const std::string& what) {
      report.iterations_run = static_cast<int>(report.per_iter.size());
      report.warnings.push_back(what);
      finish_with_truth(report, wstar);
      throw RecoveryFailure(kind, what, report);
    };

    if (ls.method == LsMethod::matrix_free) ls.warm_start = v_start;
    LsResult right;
    try {
      right = ls_update_right(u, sets[2 * h + 1], ls);
    } catch (const NumericError&) {
      fail(ErrorKind::divergence, "non-finite iterate at iteration " + std::to_string(iter));
    }
    QrFactors vq;
    try {
      vq = orthonormalize(right.factor);
    } catch (const RankCollapseError& e) {
      fail(ErrorKind::rank_collapse,
           "rank collapse of V at iteration " + std::to_string(iter) + ": " + e.what());
    }

    if (ls.method == LsMethod::matrix_free) ls.warm_start = u * vq.r.transpose();
    LsResult left;
    try {
      left = ls_update_left(vq.q, sets[2 * h + 2], ls);
    } catch (const NumericError&) {
      fail(ErrorKind::divergence, "non-finite iterate at iteration " + std::to_string(iter));
    }
    QrFactors uq;
    try {
      uq = orthonormalize(left.factor);
    } catch (const RankCollapseError& e) {
      fail(ErrorKind::rank_collapse,
           "rank collapse of U at iteration " + std::to_string(iter) + ": " + e.what());
    }

    u = uq.q;
    report.factors.u = u;
    report.factors.v_hat = config.output == OutputForm::last_fit
                               ? Matrix(vq.q * uq.r.transpose())
                               : right.factor;
    v_start = vq.q * uq.r.transpose();

    if ((right.rank_deficient || left.rank_deficient) && !warned_rank) {
      report.warnings.push_back("rank-deficient least-squares system at iteration " +
                                std::to_string(iter) + "; used the minimum-norm solution");
      warned_rank = true;
    }
    if ((!right.inner_converged || !left.inner_converged) && !warned_inner) {
      report.warnings.push_back("inner solve stopped at its iteration cap at iteration " +
                                std::to_string(iter));
      warned_inner = true;
    }

    const Matrix w = report.recovered();
    if (!w.allFinite()) fail(ErrorKind::divergence, "non-finite iterate at iteration " + std::to_string(iter));

    IterationRecord rec;
    rec.iter = iter;
    rec.residual_norm = (op.apply_factored(report.factors.u, report.factors.v_hat) - ms.b).norm();
    if (truth_basis) rec.dist_to_truth = subspace_dist(u, *truth_basis);
    rec.stationarity = std::max(right.gradient_norm, left.gradient_norm);
    rec.inner_iterations = right.inner_iterations + left.inner_iterations;
    rec.elapsed_seconds = seconds();
    report.per_iter.push_back(rec);

    if (previous_w) {
      const double change = (w - *previous_w).norm() / std::max(1.0, previous_w->norm());
      if (change <= config.tolerance) {
        report.converged = true;
        break;
      }
    }
    previous_w = w;
  }

  report.iterations_run = static_cast<int>(report.per_iter.size());
  finish_with_truth(report, wstar);
  return report;
}

}  // namespace lrrom
