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
#include "lrrom/measurement.hpp"
#include "lrrom/report_json.hpp"
#include "lrrom/solver.hpp"
#include "lrrom/synth.hpp"

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lrrom::bench {

enum class OperatorKind { rank_one, dense };
const char* to_string(OperatorKind kind);
OperatorKind operator_kind_from_string(std::string_view name);

inline constexpr double kRecoveryThreshold = 1e-4;
inline constexpr double kPhaseThreshold = 1e-3;

struct TrialResult {
  std::size_t point = 0;
  double axis_value = 0.0;
  int trial_id = 0;
  std::uint64_t seed = 0;
  Index m = 0;
  Family family = Family::gaussian;
  std::string kind;
  double final_error_fro = std::numeric_limits<double>::quiet_NaN();
  double final_error_spectral = std::numeric_limits<double>::quiet_NaN();
  double wall_seconds_encode = 0.0;
  double wall_seconds_solve = 0.0;
  double wall_seconds_overhead = 0.0;
  int iterations = 0;
  bool success = false;
  std::optional<std::string> failure;
  /// FNV-1a of the planted W* in matrix text form.
  std::string truth_hash;
  /// Sweep-specific values, e.g. test_error or property1.
  std::vector<std::pair<std::string, double>> metrics;

  double total_seconds() const {
    return wall_seconds_encode + wall_seconds_solve + wall_seconds_overhead;
  }
  std::optional<double> metric(std::string_view name) const;
};

struct PointSummary {
  std::size_t point = 0;
  double axis_value = 0.0;
  std::string kind;
  int trials = 0;
  int failures = 0;
  /// Quantiles of the sweep's primary metric.
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double success_rate = 0.0;
  /// Median encode + solve seconds.
  double median_seconds = 0.0;
  std::vector<std::pair<std::string, double>> metric_medians;
};

struct SweepReport {
  std::string sweep;
  std::string axis;
  std::string primary_metric;
  double success_threshold = 0.0;
  Json config;
  std::vector<TrialResult> trials;
  std::vector<PointSummary> points;
  bool parallel = false;
  int threads = 1;

  /// Summary for (point, kind), or nullptr.
  const PointSummary* find(std::size_t point, std::string_view kind) const;
};

struct SweepOptions {
  /// Worker threads; > 1 runs trials concurrently.
  int threads = 1;
  /// Record wall-clock times; false writes zeros.
  bool timings = true;
  SolverConfig solver;
};

/// Linear-interpolation quantile of the finite entries (NaN if none).
double quantile(std::vector<double> values, double q);
double median(std::vector<double> values);

/// Recomputes points from trials. Trials are first sorted by
/// (point, trial_id, kind).
void summarize(SweepReport& report);

/// Per-trial seed: derive_seed(master, {point, trial}).
std::uint64_t trial_seed(std::uint64_t master, std::size_t point, int trial);

/// Paired rank-one vs dense matrix sensing over m. Both kinds share the
/// planted truth of each (m, trial).
SweepReport run_sensing_sweep(Index d1, Index d2, Index k, const Vector& spectrum,
                              const std::vector<Index>& m_list, int trials, std::uint64_t seed,
                              const std::vector<OperatorKind>& kinds, const SweepOptions& options);

inline constexpr double kMultilabelBeta = 2.0;

/// Multi-label regression over the (d, k) grid, d-major. axis_value is k;
/// the trial carries "d", "rank" (effective rank min(k, d)), "test_error"
/// (squared relative error on fresh test features) and "train_error".
SweepReport run_multilabel_sweep(Index labels, Index n1, const std::vector<Index>& d_list,
                                 const std::vector<Index>& k_list, Index observed_count,
                                 int trials, std::uint64_t seed, const SweepOptions& options,
                                 double beta = kMultilabelBeta);

/// Inductive matrix completion success rate over m.
SweepReport run_imc_sweep(Index d1, Index d2, Index n1, Index n2, Index k,
                          const std::vector<Index>& m_list, int trials, std::uint64_t seed,
                          const SweepOptions& options, double beta = 2.0);

/// Properties 1-3 over m. Probes use an independent stream per trial.
SweepReport run_property_sweep(Family family, const InstanceDims& dims, Index k, double beta,
                               const std::vector<Index>& m_list, int trials, std::uint64_t seed,
                               const SweepOptions& options);

std::string to_csv(const SweepReport& report);
Json to_json(const SweepReport& report);
/// One block per kind: axis_value median q1 q3 success_rate median_seconds.
std::string to_gnuplot(const SweepReport& report);

/// Writes <name>.csv, <name>.json and <name>.dat into `dir`.
void write_report(const std::filesystem::path& dir, const std::string& name,
                  const SweepReport& report);

}  // namespace lrrom::bench
