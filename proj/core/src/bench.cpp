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


#include "lrrom/bench.hpp"

#include "lrrom/analysis.hpp"
#include "lrrom/io.hpp"
#include "lrrom/rng.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

namespace lrrom::bench {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Runs job(i) for i in [0, count) on `threads` workers. Each job owns its
// output slot, so scheduling order never shows in the results.
void for_each_job(std::size_t count, int threads, const std::function<void(std::size_t)>& job) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

double relative_fro(const Matrix& w, const Matrix& truth) {
  const double n = truth.norm();
  return n > 0.0 ? (w - truth).norm() / n : (w - truth).norm();
}

double relative_spectral(const Matrix& w, const Matrix& truth) {
  const double n = spectral_norm(truth);
  const double e = spectral_norm(w - truth);
  return n > 0.0 ? e / n : e;
}

std::string truth_hash(const Matrix& w) { return io::fnv1a_hex(io::matrix_to_text(w)); }

void finish_timings(TrialResult& r, Clock::time_point trial_start, bool timings) {
  if (!timings) {
    r.wall_seconds_encode = r.wall_seconds_solve = r.wall_seconds_overhead = 0.0;
    return;
  }
  const double total = seconds_since(trial_start);
  r.wall_seconds_overhead = std::max(0.0, total - r.wall_seconds_encode - r.wall_seconds_solve);
}

Json index_list(const std::vector<Index>& v) {
  Json j = Json::array();
  for (Index x : v) j.push_back(x);
  return j;
}

Json vector_json(const Vector& v) {
  Json j = Json::array();
  for (Index i = 0; i < v.size(); ++i) j.push_back(json_number(v(i)));
  return j;
}

std::string csv_number(double v) { return std::isfinite(v) ? io::format_double(v) : "nan"; }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else if (c == '\n') out += ' ';
    else out += c;
  }
  return out + "\"";
}

void require_trials(int trials, const std::vector<Index>& axis, const char* name) {
  if (trials < 1) throw ValidationError(std::string(name) + ": trials must be >= 1");
  if (axis.empty()) throw ValidationError(std::string(name) + ": empty sweep axis");
}

}  // namespace

const char* to_string(OperatorKind kind) {
  return kind == OperatorKind::rank_one ? "rank_one" : "dense";
}

OperatorKind operator_kind_from_string(std::string_view name) {
  if (name == "rank_one" || name == "rank-one") return OperatorKind::rank_one;
  if (name == "dense") return OperatorKind::dense;
  throw ValidationError("unknown operator kind '" + std::string(name) + "'");
}

std::optional<double> TrialResult::metric(std::string_view name) const {
  for (const auto& [k, v] : metrics) {
    if (k == name) return v;
  }
  return std::nullopt;
}

const PointSummary* SweepReport::find(std::size_t point, std::string_view kind) const {
  for (const auto& p : points) {
    if (p.point == point && p.kind == kind) return &p;
  }
  return nullptr;
}

double quantile(std::vector<double> values, double q) {
  values.erase(std::remove_if(values.begin(), values.end(), [](double v) { return !std::isfinite(v); }),
               values.end());
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

std::uint64_t trial_seed(std::uint64_t master, std::size_t point, int trial) {
  return derive_seed(master, {static_cast<std::uint64_t>(point), static_cast<std::uint64_t>(trial)});
}

void summarize(SweepReport& report) {
  std::stable_sort(report.trials.begin(), report.trials.end(), [](const TrialResult& a, const TrialResult& b) {
    return std::tie(a.point, a.trial_id, a.kind) < std::tie(b.point, b.trial_id, b.kind);
  });
  report.points.clear();
  std::map<std::pair<std::size_t, std::string>, std::vector<const TrialResult*>> groups;
  std::vector<std::pair<std::size_t, std::string>> order;
  for (const auto& t : report.trials) {
    auto key = std::make_pair(t.point, t.kind);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&t);
  }
  std::sort(order.begin(), order.end());
  for (const auto& key : order) {
    const auto& group = groups[key];
    PointSummary p;
    p.point = key.first;
    p.kind = key.second;
    p.axis_value = group.front()->axis_value;
    p.trials = static_cast<int>(group.size());
    std::vector<double> primary, secs;
    int successes = 0;
    std::vector<std::string> metric_names;
    for (const auto* t : group) {
      if (t->failure) ++p.failures;
      if (t->success) ++successes;
      double v = t->final_error_fro;
      if (report.primary_metric == "error_spectral") v = t->final_error_spectral;
      else if (report.primary_metric != "error_fro") v = t->metric(report.primary_metric).value_or(std::nan(""));
      primary.push_back(v);
      secs.push_back(t->wall_seconds_encode + t->wall_seconds_solve);
      for (const auto& [name, value] : t->metrics) {
        if (std::find(metric_names.begin(), metric_names.end(), name) == metric_names.end()) {
          metric_names.push_back(name);
        }
      }
    }
    p.median = quantile(primary, 0.5);
    p.q1 = quantile(primary, 0.25);
    p.q3 = quantile(primary, 0.75);
    p.success_rate = static_cast<double>(successes) / static_cast<double>(group.size());
    p.median_seconds = median(secs);
    for (const auto& name : metric_names) {
      std::vector<double> vals;
      for (const auto* t : group) vals.push_back(t->metric(name).value_or(std::nan("")));
      p.metric_medians.emplace_back(name, median(vals));
    }
    report.points.push_back(std::move(p));
  }
}

SweepReport run_sensing_sweep(Index d1, Index d2, Index k, const Vector& spectrum,
                              const std::vector<Index>& m_list, int trials, std::uint64_t seed,
                              const std::vector<OperatorKind>& kinds, const SweepOptions& options) {
  require_trials(trials, m_list, "run_sensing_sweep");
  if (kinds.empty()) throw ValidationError("run_sensing_sweep: no operator kinds");
  if (spectrum.size() != k) throw ValidationError("run_sensing_sweep: spectrum must have k values");
  SolverConfig solver = options.solver;
  solver.k = k;
  solver.validate();

  SweepReport report;
  report.sweep = "sensing";
  report.axis = "m";
  report.primary_metric = "error_fro";
  report.success_threshold = kRecoveryThreshold;
  report.parallel = options.threads > 1;
  report.threads = std::max(1, options.threads);
  report.config = {{"d1", d1}, {"d2", d2}, {"k", k}, {"spectrum", vector_json(spectrum)},
                   {"m", index_list(m_list)}, {"trials", trials}, {"seed", seed},
                   {"solver", to_json(solver)}};
  Json kind_names = Json::array();
  for (auto kd : kinds) kind_names.push_back(to_string(kd));
  report.config["kinds"] = kind_names;

  const std::size_t per_point = static_cast<std::size_t>(trials) * kinds.size();
  report.trials.resize(m_list.size() * per_point);
  for_each_job(report.trials.size(), options.threads, [&](std::size_t job) {
    const std::size_t point = job / per_point;
    const int trial = static_cast<int>((job % per_point) / kinds.size());
    const OperatorKind kind = kinds[job % kinds.size()];
    const Index m = m_list[point];
    TrialResult& r = report.trials[job];
    const auto start = Clock::now();
    r.point = point;
    r.axis_value = static_cast<double>(m);
    r.trial_id = trial;
    r.seed = trial_seed(seed, point, trial);
    r.m = m;
    r.family = Family::gaussian;
    r.kind = to_string(kind);
    try {
      const PlantedTruth truth = random_low_rank(d1, d2, k, spectrum, derive_seed(r.seed, {stream::truth}));
      r.truth_hash = truth_hash(truth.w);
      const auto enc_start = Clock::now();
      std::shared_ptr<const MeasurementOperator> op;
      if (kind == OperatorKind::rank_one) {
        op = std::make_shared<RankOneOperator>(
            make_gaussian_operator(d1, d2, m, derive_seed(r.seed, {stream::operator_factors})));
      } else {
        op = std::make_shared<DenseOperator>(
            make_dense_gaussian_operator(d1, d2, m, derive_seed(r.seed, {stream::dense_operator})));
      }
      Vector b = op->apply(truth.w);
      r.wall_seconds_encode = seconds_since(enc_start);
      const MeasurementSet ms(op, std::move(b));
      const auto solve_start = Clock::now();
      const RecoveryReport rep = altmin_lrrom(ms, solver);
      r.wall_seconds_solve = seconds_since(solve_start);
      const Matrix w = rep.recovered();
      r.iterations = rep.iterations_run;
      r.final_error_fro = relative_fro(w, truth.w);
      r.final_error_spectral = relative_spectral(w, truth.w);
      r.success = r.final_error_fro <= kRecoveryThreshold;
    } catch (const Error& e) {
      r.failure = e.what();
      if (const auto* rf = dynamic_cast<const RecoveryFailure*>(&e)) r.iterations = rf->partial().iterations_run;
    }
    finish_timings(r, start, options.timings);
  });
  summarize(report);
  return report;
}

SweepReport run_multilabel_sweep(Index labels, Index n1, const std::vector<Index>& d_list,
                                 const std::vector<Index>& k_list, Index observed_count,
                                 int trials, std::uint64_t seed, const SweepOptions& options,
                                 double beta) {
  require_trials(trials, d_list, "run_multilabel_sweep");
  if (k_list.empty()) throw ValidationError("run_multilabel_sweep: empty k list");
  if (observed_count < 1 || observed_count > n1 * labels) {
    throw CapacityError("run_multilabel_sweep: observed_count must be in [1, n1 * L]");
  }
  for (Index d : d_list) {
    if (d < 1 || d > n1) throw DimensionError("run_multilabel_sweep: need 1 <= d <= n1");
  }
  SolverConfig base = options.solver;

  SweepReport report;
  report.sweep = "multilabel";
  report.axis = "k";
  report.primary_metric = "test_error";
  report.success_threshold = 0.05;
  report.parallel = options.threads > 1;
  report.threads = std::max(1, options.threads);
  report.config = {{"labels", labels}, {"n1", n1}, {"d", index_list(d_list)}, {"k", index_list(k_list)},
                   {"observed", observed_count}, {"trials", trials}, {"seed", seed},
                   {"beta", json_number(beta)}, {"solver", to_json(base)}};

  struct Point {
    Index d, k;
  };
  std::vector<Point> grid;
  for (Index d : d_list) {
    for (Index k : k_list) grid.push_back({d, k});
  }
  report.trials.resize(grid.size() * static_cast<std::size_t>(trials));
  for_each_job(report.trials.size(), options.threads, [&](std::size_t job) {
    const std::size_t point = job / static_cast<std::size_t>(trials);
    const int trial = static_cast<int>(job % static_cast<std::size_t>(trials));
    const auto [d, k] = grid[point];
    const Index rank = std::min({k, d, labels});
    TrialResult& r = report.trials[job];
    const auto start = Clock::now();
    r.point = point;
    r.axis_value = static_cast<double>(k);
    r.trial_id = trial;
    r.seed = trial_seed(seed, point, trial);
    r.m = observed_count;
    r.family = Family::multilabel;
    r.kind = "rank_one";
    r.metrics = {{"d", static_cast<double>(d)}, {"rank", static_cast<double>(rank)}};
    try {
      const auto enc_start = Clock::now();
      const ProblemInstance inst = make_instance(Family::multilabel, {d, labels, n1, 0}, rank,
                                                 default_spectrum(rank, beta), observed_count, r.seed);
      r.wall_seconds_encode = seconds_since(enc_start);
      r.truth_hash = truth_hash(inst.truth.w);
      SolverConfig solver = base;
      solver.k = rank;
      const auto solve_start = Clock::now();
      const RecoveryReport rep = altmin_lrrom(inst.measurements(), solver);
      r.wall_seconds_solve = seconds_since(solve_start);
      const Matrix w = rep.recovered();
      r.iterations = rep.iterations_run;
      r.final_error_fro = relative_fro(w, inst.truth.w);
      r.final_error_spectral = relative_spectral(w, inst.truth.w);

      const Matrix x_test = incoherent_features(d, n1, derive_seed(r.seed, {stream::test_features})).x;
      const Matrix r_test = x_test.transpose() * inst.truth.w;
      const double test_error = (r_test - x_test.transpose() * w).squaredNorm() / r_test.squaredNorm();
      const Matrix& r_train = *inst.labels;
      const double train_error =
          (r_train - inst.features_left->transpose() * w).squaredNorm() / r_train.squaredNorm();
      r.metrics.emplace_back("test_error", test_error);
      r.metrics.emplace_back("train_error", train_error);
      r.success = test_error <= report.success_threshold;
    } catch (const Error& e) {
      r.failure = e.what();
      r.metrics.emplace_back("test_error", std::nan(""));
      r.metrics.emplace_back("train_error", std::nan(""));
    }
    finish_timings(r, start, options.timings);
  });
  summarize(report);
  return report;
}

SweepReport run_imc_sweep(Index d1, Index d2, Index n1, Index n2, Index k,
                          const std::vector<Index>& m_list, int trials, std::uint64_t seed,
                          const SweepOptions& options, double beta) {
  require_trials(trials, m_list, "run_imc_sweep");
  for (Index m : m_list) {
    if (m < 1 || m > n1 * n2) throw CapacityError("run_imc_sweep: m must be in [1, n1 * n2]");
  }
  SolverConfig solver = options.solver;
  solver.k = k;
  solver.validate();
  const Vector spectrum = default_spectrum(k, beta);

  SweepReport report;
  report.sweep = "imc";
  report.axis = "m";
  report.primary_metric = "error_fro";
  report.success_threshold = kPhaseThreshold;
  report.parallel = options.threads > 1;
  report.threads = std::max(1, options.threads);
  report.config = {{"d1", d1}, {"d2", d2}, {"n1", n1}, {"n2", n2}, {"k", k}, {"beta", json_number(beta)},
                   {"m", index_list(m_list)}, {"trials", trials}, {"seed", seed},
                   {"solver", to_json(solver)}};

  report.trials.resize(m_list.size() * static_cast<std::size_t>(trials));
  for_each_job(report.trials.size(), options.threads, [&](std::size_t job) {
    const std::size_t point = job / static_cast<std::size_t>(trials);
    const int trial = static_cast<int>(job % static_cast<std::size_t>(trials));
    const Index m = m_list[point];
    TrialResult& r = report.trials[job];
    const auto start = Clock::now();
    r.point = point;
    r.axis_value = static_cast<double>(m);
    r.trial_id = trial;
    r.seed = trial_seed(seed, point, trial);
    r.m = m;
    r.family = Family::inductive;
    r.kind = "rank_one";
    try {
      const auto enc_start = Clock::now();
      const ProblemInstance inst = make_instance(Family::inductive, {d1, d2, n1, n2}, k, spectrum, m, r.seed);
      r.wall_seconds_encode = seconds_since(enc_start);
      r.truth_hash = truth_hash(inst.truth.w);
      r.metrics = {{"coherence_x", *inst.coherence_left}, {"coherence_y", *inst.coherence_right}};
      const auto solve_start = Clock::now();
      const RecoveryReport rep = altmin_lrrom(inst.measurements(), solver);
      r.wall_seconds_solve = seconds_since(solve_start);
      const Matrix w = rep.recovered();
      r.iterations = rep.iterations_run;
      r.final_error_fro = relative_fro(w, inst.truth.w);
      r.final_error_spectral = relative_spectral(w, inst.truth.w);
      r.success = r.final_error_fro <= kPhaseThreshold;
    } catch (const Error& e) {
      r.failure = e.what();
    }
    finish_timings(r, start, options.timings);
  });
  summarize(report);
  return report;
}

SweepReport run_property_sweep(Family family, const InstanceDims& dims, Index k, double beta,
                               const std::vector<Index>& m_list, int trials, std::uint64_t seed,
                               const SweepOptions& options) {
  require_trials(trials, m_list, "run_property_sweep");
  const Vector spectrum = default_spectrum(k, beta);

  SweepReport report;
  report.sweep = "properties";
  report.axis = "m";
  report.primary_metric = "property1";
  report.success_threshold = property_threshold(k, beta);
  report.parallel = options.threads > 1;
  report.threads = std::max(1, options.threads);
  report.config = {{"family", to_string(family)}, {"d1", dims.d1}, {"d2", dims.d2}, {"n1", dims.n1},
                   {"n2", dims.n2}, {"k", k}, {"beta", json_number(beta)}, {"m", index_list(m_list)},
                   {"trials", trials}, {"seed", seed}};

  report.trials.resize(m_list.size() * static_cast<std::size_t>(trials));
  for_each_job(report.trials.size(), options.threads, [&](std::size_t job) {
    const std::size_t point = job / static_cast<std::size_t>(trials);
    const int trial = static_cast<int>(job % static_cast<std::size_t>(trials));
    const Index m = m_list[point];
    TrialResult& r = report.trials[job];
    const auto start = Clock::now();
    r.point = point;
    r.axis_value = static_cast<double>(m);
    r.trial_id = trial;
    r.seed = trial_seed(seed, point, trial);
    r.m = m;
    r.family = family;
    r.kind = "rank_one";
    try {
      const auto enc_start = Clock::now();
      const ProblemInstance inst = make_instance(family, dims, k, spectrum, m, r.seed);
      r.wall_seconds_encode = seconds_since(enc_start);
      r.truth_hash = truth_hash(inst.truth.w);
      const auto check_start = Clock::now();
      const ProbeVectors probes = make_probe_vectors(inst.op->d1(), inst.op->d2(),
                                                     derive_seed(r.seed, {stream::probes}));
      const PropertyReport p1 = check_property1(inst.measurements(), inst.effective_target, k, beta);
      const PropertyReport p2 = check_property2(*inst.op, probes.u, probes.v, k, beta);
      const PropertyReport p3 =
          check_property3(*inst.op, probes.u, probes.u_perp, probes.v, probes.v_perp, k, beta);
      r.wall_seconds_solve = seconds_since(check_start);
      r.metrics = {{"property1", p1.measured_value}, {"property2", p2.measured_value},
                   {"property3", p3.measured_value}, {"threshold", p1.threshold}};
      r.success = p1.pass && p2.pass && p3.pass;
    } catch (const Error& e) {
      r.failure = e.what();
      r.metrics = {{"property1", std::nan("")}, {"property2", std::nan("")},
                   {"property3", std::nan("")}, {"threshold", report.success_threshold}};
    }
    finish_timings(r, start, options.timings);
  });
  summarize(report);
  return report;
}

std::string to_csv(const SweepReport& report) {
  std::vector<std::string> metric_names;
  for (const auto& t : report.trials) {
    for (const auto& [name, value] : t.metrics) {
      if (std::find(metric_names.begin(), metric_names.end(), name) == metric_names.end()) {
        metric_names.push_back(name);
      }
    }
  }
  std::string out = "axis_value,trial_id,seed,kind,error_fro,error_spectral,encode_s,solve_s,iters,success";
  for (const auto& name : metric_names) out += "," + name;
  out += ",overhead_s,truth_hash,failure\n";
  for (const auto& t : report.trials) {
    out += csv_number(t.axis_value) + "," + std::to_string(t.trial_id) + "," + std::to_string(t.seed) + "," +
           t.kind + "," + csv_number(t.final_error_fro) + "," + csv_number(t.final_error_spectral) + "," +
           csv_number(t.wall_seconds_encode) + "," + csv_number(t.wall_seconds_solve) + "," +
           std::to_string(t.iterations) + "," + (t.success ? "1" : "0");
    for (const auto& name : metric_names) out += "," + csv_number(t.metric(name).value_or(std::nan("")));
    out += "," + csv_number(t.wall_seconds_overhead) + "," + t.truth_hash + "," +
           csv_escape(t.failure.value_or(""));
    out += "\n";
  }
  return out;
}

Json to_json(const SweepReport& report) {
  Json j;
  j["sweep"] = report.sweep;
  j["axis"] = report.axis;
  j["primary_metric"] = report.primary_metric;
  j["success_threshold"] = json_number(report.success_threshold);
  j["config"] = report.config;
  j["parallel"] = report.parallel;
  j["threads"] = report.threads;
  Json points = Json::array();
  for (const auto& p : report.points) {
    Json pj;
    pj["point"] = p.point;
    pj["axis_value"] = json_number(p.axis_value);
    pj["kind"] = p.kind;
    pj["trials"] = p.trials;
    pj["failures"] = p.failures;
    pj["median"] = json_number(p.median);
    pj["q1"] = json_number(p.q1);
    pj["q3"] = json_number(p.q3);
    pj["success_rate"] = json_number(p.success_rate);
    pj["median_seconds"] = json_number(p.median_seconds);
    Json medians = Json::object();
    for (const auto& [name, value] : p.metric_medians) medians[name] = json_number(value);
    pj["metric_medians"] = std::move(medians);
    points.push_back(std::move(pj));
  }
  j["points"] = std::move(points);
  Json trials = Json::array();
  for (const auto& t : report.trials) {
    Json tj;
    tj["point"] = t.point;
    tj["axis_value"] = json_number(t.axis_value);
    tj["trial_id"] = t.trial_id;
    tj["seed"] = t.seed;
    tj["m"] = t.m;
    tj["family"] = to_string(t.family);
    tj["kind"] = t.kind;
    tj["error_fro"] = json_number(t.final_error_fro);
    tj["error_spectral"] = json_number(t.final_error_spectral);
    tj["encode_s"] = json_number(t.wall_seconds_encode);
    tj["solve_s"] = json_number(t.wall_seconds_solve);
    tj["overhead_s"] = json_number(t.wall_seconds_overhead);
    tj["iters"] = t.iterations;
    tj["success"] = t.success;
    Json metrics = Json::object();
    for (const auto& [name, value] : t.metrics) metrics[name] = json_number(value);
    tj["metrics"] = std::move(metrics);
    tj["truth_hash"] = t.truth_hash;
    if (t.failure) tj["failure"] = *t.failure;
    trials.push_back(std::move(tj));
  }
  j["trials"] = std::move(trials);
  return j;
}

std::string to_gnuplot(const SweepReport& report) {
  // One index block per kind, and per d for sweeps that also vary d.
  auto label = [](const PointSummary& p) {
    std::string l = "kind=" + p.kind;
    for (const auto& [name, value] : p.metric_medians) {
      if (name == "d") l += " d=" + csv_number(value);
    }
    return l;
  };
  std::vector<std::string> blocks;
  for (const auto& p : report.points) {
    const std::string l = label(p);
    if (std::find(blocks.begin(), blocks.end(), l) == blocks.end()) blocks.push_back(l);
  }
  std::string out;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (b > 0) out += "\n\n";
    out += "# " + report.sweep + " " + blocks[b] + "\n";
    out += "# " + report.axis + " median q1 q3 success_rate median_seconds\n";
    for (const auto& p : report.points) {
      if (label(p) != blocks[b]) continue;
      out += csv_number(p.axis_value) + " " + csv_number(p.median) + " " + csv_number(p.q1) + " " +
             csv_number(p.q3) + " " + csv_number(p.success_rate) + " " + csv_number(p.median_seconds) + "\n";
    }
  }
  return out;
}

void write_report(const std::filesystem::path& dir, const std::string& name, const SweepReport& report) {
  io::write_text_atomic(dir / (name + ".csv"), to_csv(report));
  io::write_text_atomic(dir / (name + ".json"), to_json(report).dump(2) + "\n");
  io::write_text_atomic(dir / (name + ".dat"), to_gnuplot(report));
}

}  // namespace lrrom::bench
