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

#pragma once

#include "lrrom/common.hpp"
#include "lrrom/linalg.hpp"
#include "lrrom/measurement.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lrrom {

/// split: 2H+1 disjoint blocks, one per step. reuse: every step sees all data.
enum class PartitionMode { split, reuse };

/// direct: orthogonal factorization of the explicit design (normal equations
/// only when m > 4 * unknowns). matrix_free: CGLS through FactorMap::forward
/// and FactorMap::adjoint, warm-started from the previous iterate.
enum class LsMethod { direct, matrix_free };

/// What the solver returns as W.
///   last_fit: U_H (R_U V_H^T), i.e. exactly the last least-squares fit
///             Uhat_H V_H^T written with orthonormal U_H.
///   literal:  U_H Vhat_H^T with Vhat_H from the preceding right update.
enum class OutputForm { last_fit, literal };

const char* to_string(PartitionMode mode);
const char* to_string(LsMethod method);
const char* to_string(OutputForm form);
PartitionMode partition_mode_from_string(std::string_view name);
LsMethod ls_method_from_string(std::string_view name);
OutputForm output_form_from_string(std::string_view name);

struct SolverConfig {
  Index k = 1;
  int max_outer_iters = 100;
  double tolerance = 1e-10;
  PartitionMode partition_mode = PartitionMode::reuse;
  double ridge = 0.0;
  /// Defaults to 1e-12 sqrt(d1 d2) when unset.
  std::optional<double> zero_signal_threshold;
  LsMethod ls_method = LsMethod::direct;
  OutputForm output = OutputForm::last_fit;
  /// matrix_free stops once |gradient| <= min(inner_tolerance |A_F^T b|,
  /// 1e-8 (1 + |b|)).
  double inner_tolerance = 1e-10;
  /// matrix_free iteration cap; 0 means 4 * unknowns (at least 50).
  Index max_inner_iters = 0;

  /// Throws ValidationError on k < 1, H < 1, tolerance <= 0, ridge < 0.
  void validate() const;
};

/// Rank-k iterate: W = U V_hat^T with U orthonormal.
struct FactorPair {
  Matrix u;
  Matrix v_hat;

  Matrix recovered() const { return u * v_hat.transpose(); }
};

struct IterationRecord {
  int iter = 0;
  std::optional<double> dist_to_truth;
  double residual_norm = 0.0;
  double elapsed_seconds = 0.0;
  /// max stationarity |gradient|_F over the two inner solves of this round.
  double stationarity = 0.0;
  Index inner_iterations = 0;
};

struct RecoveryReport {
  int iterations_run = 0;
  std::vector<IterationRecord> per_iter;
  FactorPair factors;
  std::optional<double> initial_dist;
  std::optional<double> final_error_fro;
  std::optional<double> final_error_spectral;
  bool zero_signal = false;
  bool converged = false;
  std::vector<std::string> warnings;
  SolverConfig config;
  std::optional<std::uint64_t> seed;
  int threads = 1;

  Matrix recovered() const { return factors.recovered(); }
};

/// Thrown when a run fails numerically after it started (rank collapse,
/// divergence); carries the report up to the failing iteration.
class RecoveryFailure : public Error {
 public:
  RecoveryFailure(ErrorKind kind, const std::string& what, RecoveryReport partial)
      : Error(kind, what), partial_(std::move(partial)) {}
  const RecoveryReport& partial() const noexcept { return partial_; }

 private:
  RecoveryReport partial_;
};

/// 2H+1 measurement sets. split: contiguous blocks of floor(M/(2H+1)) in
/// input order, remainder appended to the last block. reuse: 2H+1 handles to
/// the full set (the operator is shared, not copied).
std::vector<MeasurementSet> partition(const MeasurementSet& ms, int h,
                                      PartitionMode mode = PartitionMode::split);

struct Initialization {
  Matrix u0;
  bool zero_signal = false;
  double signal_norm = 0.0;  // |S|_2
  Matrix s;                  // (1/m) sum_i b_i A_i
};

/// Top-k left singular vectors of S = adjoint_weighted_sum(set0), sign
/// canonicalized. If |S|_2 <= zero_signal_threshold the zero-signal flag is
/// set and U0 = [e_1 ... e_k].
Initialization initialize(const MeasurementSet& set0, Index k, double zero_signal_threshold);

struct LsOptions {
  double ridge = 0.0;
  LsMethod method = LsMethod::direct;
  double inner_tolerance = 1e-10;
  Index max_inner_iters = 0;
  /// Starting point for matrix_free; zero when absent.
  std::optional<Matrix> warm_start;
};

struct LsResult {
  Matrix factor;
  double gradient_norm = 0.0;
  bool rank_deficient = false;
  bool normal_equations = false;
  bool inner_converged = true;
  Index inner_iterations = 0;
};

/// argmin_V sum_i (b_i - A(U V^T)_i)^2 + ridge |V|_F^2, V is d2 x k.
LsResult ls_update_right(const Matrix& u, const MeasurementSet& set,
                         const LsOptions& options = {});
/// argmin_U sum_i (b_i - A(U V^T)_i)^2 + ridge |U|_F^2, U is d1 x k.
LsResult ls_update_left(const Matrix& v, const MeasurementSet& set,
                        const LsOptions& options = {});

/// Solves the regularized least squares for one FactorMap.
LsResult solve_factor(const FactorMap& map, const Vector& b, const LsOptions& options);

/// Alternating minimization over the measurement set. When `wstar` is given
/// the report carries dist(U_h, U*) per iteration and final errors.
RecoveryReport altmin_lrrom(const MeasurementSet& ms, const SolverConfig& config,
                            const std::optional<Matrix>& wstar = std::nullopt);

}  // namespace lrrom
