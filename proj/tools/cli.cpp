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


#include "cli.hpp"

#include "lrrom/analysis.hpp"
#include "lrrom/bench.hpp"
#include "lrrom/io.hpp"
#include "lrrom/report_json.hpp"
#include "lrrom/rng.hpp"
#include "lrrom/solver.hpp"
#include "lrrom/synth.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lrrom::cli {

namespace {

namespace fs = std::filesystem;

struct Globals {
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out;
  std::string format = "json";
  int threads = 1;
  bool no_timings = false;
};

struct GenArgs {
  std::string family = "gaussian";
  Index d1 = 0, d2 = 0, n1 = 0, n2 = 0, labels = 0, k = 0, m = 0;
  double beta = 2.0;
  std::vector<double> spectrum;
  bool with_replacement = false;
  std::string x_path, y_path;
};

struct SolveArgs {
  std::string instance;
  Index k = 0;
  int h = 100;
  double tolerance = 1e-10;
  std::string mode = "reuse";
  double ridge = 0.0;
  double zero_threshold = -1.0;
  std::string ls = "direct";
  std::string output = "last-fit";
  double inner_tolerance = 1e-10;
  Index max_inner = 0;
  std::string wstar;
};

struct VerifyArgs {
  bool rip = false;
  bool properties = false;
  std::string family = "gaussian";
  Index d1 = 0, d2 = 0, n1 = 0, n2 = 0, k = 1, m = 0;
  double beta = 1.0;
  int trials = 1;
  std::string instance;
};

struct BenchArgs {
  std::string sweep;
  std::string preset;
  int trials = 0;
  std::vector<Index> m_list;
};

Json globals_json(const Globals& g) {
  Json j;
  j["seed"] = g.seed;
  j["out"] = g.out;
  j["format"] = g.format;
  j["threads"] = g.threads;
  j["no_timings"] = g.no_timings;
  return j;
}

fs::path output_dir(const Globals& g, const char* command) {
  if (g.out.empty()) throw ValidationError(std::string(command) + ": --out <dir> is required");
  const fs::path dir(g.out);
  if (fs::exists(dir) && !fs::is_directory(dir)) {
    throw IoError(std::string(command) + ": --out " + g.out + " exists and is not a directory");
  }
  return dir;
}

void write_json(const fs::path& path, const Json& j) { io::write_text_atomic(path, j.dump(2) + "\n"); }

std::string csv_cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "nan";
  return v.dump();
}

// Prints an array of flat JSON objects in the selected format.
void print_rows(std::ostream& out, const std::string& format, const Json& rows) {
  if (format == "json") {
    out << rows.dump(2) << "\n";
    return;
  }
  if (rows.empty()) return;
  std::vector<std::string> keys;
  for (auto it = rows.front().begin(); it != rows.front().end(); ++it) {
    if (!it.value().is_structured()) keys.push_back(it.key());
  }
  for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << keys[i];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
      out << (i ? "," : "") << (row.contains(keys[i]) ? csv_cell(row[keys[i]]) : "");
    }
    out << "\n";
  }
}

// ---------------------------------------------------------------- gen

Json gen_json(const GenArgs& a) {
  Json j;
  j["family"] = a.family;
  j["d1"] = a.d1;
  j["d2"] = a.d2;
  j["n1"] = a.n1;
  j["n2"] = a.n2;
  j["labels"] = a.labels;
  j["k"] = a.k;
  j["m"] = a.m;
  j["beta"] = json_number(a.beta);
  j["spectrum"] = a.spectrum;
  j["with_replacement"] = a.with_replacement;
  j["x"] = a.x_path;
  j["y"] = a.y_path;
  return j;
}

int cmd_gen(const Globals& g, GenArgs a, std::ostream& out) {
  const fs::path dir = output_dir(g, "gen");
  const Family family = family_from_string(a.family);
  if (a.m < 1) throw ValidationError("gen: --m must be >= 1");
  if (!a.spectrum.empty()) {
    if (a.k != 0 && a.k != static_cast<Index>(a.spectrum.size())) {
      throw ValidationError("gen: --k does not match the length of --spectrum");
    }
    a.k = static_cast<Index>(a.spectrum.size());
  }
  if (a.k == 0) a.k = 1;
  const Vector spectrum = a.spectrum.empty()
                              ? default_spectrum(a.k, a.beta)
                              : Vector(Eigen::Map<const Vector>(a.spectrum.data(), a.k));

  const bool import = !a.x_path.empty() || !a.y_path.empty();
  if (import && family != Family::inductive) {
    throw ValidationError("gen: --x/--y feature import needs --family inductive");
  }

  io::Meta extra;
  extra.set("generator", std::string("lrrom gen"));
  ProblemInstance written;
  if (import) {
    std::optional<Matrix> x, y;
    if (!a.x_path.empty()) x = io::read_matrix(a.x_path);
    if (!a.y_path.empty()) y = io::read_matrix(a.y_path);
    const ReducedInstance r = make_reduced_imc_instance(x, y, {a.d1, a.d2, a.n1, a.n2}, a.k, spectrum,
                                                        a.m, g.seed, a.with_replacement);
    extra.set("reduced", std::string("true"));
    if (x) extra.set("x_import", a.x_path);
    if (y) extra.set("y_import", a.y_path);
    io::write_instance(dir, r.instance, extra);
    io::write_matrix(dir / "wstar_original.mat", r.original.w);
    if (r.left) {
      io::write_matrix(dir / "sigma_x.mat", Matrix(r.left->sigma));
      io::write_matrix(dir / "vx.mat", r.left->v);
    }
    if (r.right) {
      io::write_matrix(dir / "sigma_y.mat", Matrix(r.right->sigma));
      io::write_matrix(dir / "vy.mat", r.right->v);
    }
    written = r.instance;
  } else {
    InstanceDims dims{a.d1, a.d2, a.n1, a.n2};
    if (family == Family::multilabel) {
      if (a.labels > 0) dims.d2 = a.labels;
      if (dims.d2 < 1) throw ValidationError("gen: multilabel needs --labels (or --d2)");
    }
    if (dims.d1 < 1 || dims.d2 < 1) throw ValidationError("gen: --d1 and --d2 must be >= 1");
    written = make_instance(family, dims, a.k, spectrum, a.m, g.seed, a.with_replacement);
    io::write_instance(dir, written, extra);
  }
  write_json(dir / "gen.json", Json{{"command", "gen"}, {"global", globals_json(g)}, {"gen", gen_json(a)}});

  out << "gen: wrote " << dir.string() << " family=" << to_string(written.family)
      << " d1=" << written.op->d1() << " d2=" << written.op->d2() << " k=" << written.k
      << " m=" << written.op->rows() << " seed=" << g.seed << "\n";
  return 0;
}

// ---------------------------------------------------------------- solve

Json solve_json(const SolveArgs& a) {
  Json j;
  j["instance"] = a.instance;
  j["k"] = a.k;
  j["H"] = a.h;
  j["tolerance"] = json_number(a.tolerance);
  j["mode"] = a.mode;
  j["ridge"] = json_number(a.ridge);
  j["zero_threshold"] = a.zero_threshold >= 0.0 ? json_number(a.zero_threshold) : Json(nullptr);
  j["ls"] = a.ls;
  j["output"] = a.output;
  j["inner_tolerance"] = json_number(a.inner_tolerance);
  j["max_inner_iters"] = a.max_inner;
  j["wstar"] = a.wstar;
  return j;
}

// Applies the stored inverse feature transform, if the instance has one.
std::optional<Matrix> restore_original(const fs::path& dir, const io::Meta& meta, const Matrix& w) {
  if (meta.find("reduced").value_or("false") != "true") return std::nullopt;
  Matrix out = w;
  if (fs::exists(dir / "sigma_x.mat")) {
    const Vector sigma = io::read_vector(dir / "sigma_x.mat");
    out = io::read_matrix(dir / "vx.mat") * sigma.cwiseInverse().asDiagonal() * out;
  }
  if (fs::exists(dir / "sigma_y.mat")) {
    const Vector sigma = io::read_vector(dir / "sigma_y.mat");
    out = out * sigma.cwiseInverse().asDiagonal() * io::read_matrix(dir / "vy.mat").transpose();
  }
  return out;
}

int cmd_solve(const Globals& g, const SolveArgs& a, std::ostream& out) {
  if (a.instance.empty()) throw ValidationError("solve: an instance directory is required");
  const fs::path inst_dir(a.instance);
  if (!fs::is_directory(inst_dir)) throw IoError("solve: instance directory not found: " + a.instance);
  if (!a.wstar.empty() && !fs::is_regular_file(a.wstar)) throw IoError("solve: --wstar file not found: " + a.wstar);
  const fs::path dir = g.out.empty() ? inst_dir : output_dir(g, "solve");

  const io::LoadedInstance inst = io::read_instance(inst_dir);
  SolverConfig config;
  config.k = a.k > 0 ? a.k : inst.k.value_or(1);
  config.max_outer_iters = a.h;
  config.tolerance = a.tolerance;
  config.partition_mode = partition_mode_from_string(a.mode);
  config.ridge = a.ridge;
  if (a.zero_threshold >= 0.0) config.zero_signal_threshold = a.zero_threshold;
  config.ls_method = ls_method_from_string(a.ls);
  config.output = output_form_from_string(a.output);
  config.inner_tolerance = a.inner_tolerance;
  config.max_inner_iters = a.max_inner;
  config.validate();

  std::optional<Matrix> wstar;
  if (!a.wstar.empty()) wstar = io::read_matrix(a.wstar);

  RecoveryReport report;
  int code = 0;
  std::string failure;
  try {
    report = altmin_lrrom(inst.measurements(), config, wstar);
  } catch (const RecoveryFailure& f) {
    report = f.partial();
    code = 2;
    failure = f.what();
  }
  if (g.seed_given) {
    report.seed = g.seed;
  } else if (inst.meta.has("seed")) {
    report.seed = inst.meta.get_u64("seed");
  }
  report.threads = g.threads;
  if (g.no_timings) strip_timings(report);

  Json j = to_json(report);
  j["status"] = code == 0 ? "ok" : "numerical_failure";
  j["error"] = failure;
  j["instance"] = a.instance;
  Json seeds = Json::object();
  for (const auto& [key, value] : inst.meta.entries()) {
    if (key.rfind("seed", 0) == 0) seeds[key] = value;
  }
  j["instance_seeds"] = std::move(seeds);
  j["run"] = {{"command", "solve"}, {"global", globals_json(g)}, {"solve", solve_json(a)}};
  write_json(dir / "report.json", j);
  if (report.factors.u.size() > 0) {
    const Matrix w = report.recovered();
    io::write_matrix(dir / "what.mat", w);
    if (const auto original = restore_original(inst_dir, inst.meta, w)) {
      io::write_matrix(dir / "what_original.mat", *original);
    }
  }

  Json row;
  row["status"] = j["status"];
  row["iterations"] = report.iterations_run;
  row["converged"] = report.converged;
  row["final_error_fro"] = j["final_error_fro"];
  row["final_error_spectral"] = j["final_error_spectral"];
  row["report"] = (dir / "report.json").string();
  print_rows(out, g.format, Json::array({row}));
  return code;
}

// ---------------------------------------------------------------- verify

Json verify_json(const VerifyArgs& a) {
  Json j;
  j["rip"] = a.rip;
  j["properties"] = a.properties;
  j["family"] = a.family;
  j["d1"] = a.d1;
  j["d2"] = a.d2;
  j["n1"] = a.n1;
  j["n2"] = a.n2;
  j["k"] = a.k;
  j["m"] = a.m;
  j["beta"] = json_number(a.beta);
  j["trials"] = a.trials;
  j["instance"] = a.instance;
  return j;
}

Json property_reports(const MeasurementSet& ms, const Matrix& wstar, Index k, double beta,
                      bool beta_estimated, std::optional<std::uint64_t> operator_seed,
                      std::uint64_t probe_seed) {
  const RankOneOperator* op = ms.rank_one();
  if (op == nullptr) throw ValidationError("verify: properties 2 and 3 need a rank-one operator");
  const ProbeVectors probes = make_probe_vectors(op->d1(), op->d2(), probe_seed);
  std::vector<PropertyReport> reps = {
      check_property1(ms, wstar, k, beta),
      check_property2(*op, probes.u, probes.v, k, beta),
      check_property3(*op, probes.u, probes.u_perp, probes.v, probes.v_perp, k, beta)};
  Json arr = Json::array();
  for (auto& r : reps) {
    r.beta_estimated = beta_estimated;
    r.operator_seed = operator_seed;
    if (r.property_id != 1) r.probe_seed = probe_seed;
    arr.push_back(to_json(r));
  }
  return arr;
}

int cmd_verify(const Globals& g, VerifyArgs a, std::ostream& out) {
  if (!a.rip && !a.properties) throw ValidationError("verify: choose --rip and/or --properties");
  if (a.trials < 1) throw ValidationError("verify: --trials must be >= 1");
  std::optional<fs::path> dir;
  if (!g.out.empty()) dir = output_dir(g, "verify");
  const Json run = {{"command", "verify"}, {"global", globals_json(g)}, {"verify", verify_json(a)}};
  Json rows = Json::array();

  if (a.rip) {
    const Index d1 = a.d1 > 0 ? a.d1 : 50;
    const Index d2 = a.d2 > 0 ? a.d2 : 50;
    const Index m = a.m > 0 ? a.m : 500;
    Json reports = Json::array();
    std::vector<double> ratios;
    int at_least_10 = 0;
    for (int t = 0; t < a.trials; ++t) {
      const RipProbeReport r = rip_probe(d1, d2, m, derive_seed(g.seed, {static_cast<std::uint64_t>(t)}));
      ratios.push_back(r.ratio);
      if (r.ratio >= 10.0) ++at_least_10;
      Json rj = to_json(r);
      rj["trial"] = t;
      reports.push_back(rj);
      Json row = {{"check", "rip"}, {"trial", t}, {"ratio", json_number(r.ratio)},
                  {"energy_upper", json_number(r.energy_upper)}, {"energy_lower", json_number(r.energy_lower)},
                  {"seed", r.seed}};
      rows.push_back(row);
    }
    const Json doc = {{"run", run},
                      {"effective", {{"d1", d1}, {"d2", d2}, {"m", m}, {"trials", a.trials}}},
                      {"reports", reports},
                      {"summary", {{"median_ratio", json_number(bench::median(ratios))},
                                   {"trials_ratio_at_least_10", at_least_10},
                                   {"trials", a.trials}}}};
    if (dir) write_json(*dir / "rip.json", doc);
  }

  if (a.properties) {
    Json trials = Json::array();
    Json effective;
    if (!a.instance.empty()) {
      const fs::path inst_dir(a.instance);
      if (!fs::is_directory(inst_dir)) throw IoError("verify: instance directory not found: " + a.instance);
      const io::LoadedInstance inst = io::read_instance(inst_dir);
      if (!inst.wstar) throw ValidationError("verify: instance has no wstar.mat");
      const Index k = inst.k.value_or(a.k);
      const bool estimated = !inst.meta.has("beta");
      const double beta = estimated ? estimate_beta(*inst.wstar, k) : inst.meta.get_double("beta");
      std::optional<std::uint64_t> op_seed;
      if (inst.meta.has("seed_operator")) op_seed = inst.meta.get_u64("seed_operator");
      const std::uint64_t instance_seed = inst.meta.has("seed") ? inst.meta.get_u64("seed") : g.seed;
      effective = {{"instance", a.instance}, {"k", k}, {"beta", json_number(beta)}, {"beta_estimated", estimated}};
      trials.push_back({{"trial", 0},
                        {"reports", property_reports(inst.measurements(), *inst.wstar, k, beta, estimated,
                                                     op_seed, derive_seed(instance_seed, {stream::probes}))}});
    } else {
      if (a.m < 1) throw ValidationError("verify: --properties needs --m (or --instance)");
      const Family family = family_from_string(a.family);
      InstanceDims dims{a.d1 > 0 ? a.d1 : 20, a.d2 > 0 ? a.d2 : 20, a.n1, a.n2};
      if (family == Family::inductive) {
        if (dims.n1 == 0) dims.n1 = 10 * dims.d1;
        if (dims.n2 == 0) dims.n2 = 10 * dims.d2;
      } else if (family == Family::multilabel && dims.n1 == 0) {
        dims.n1 = 10 * dims.d1;
      }
      effective = {{"family", a.family}, {"d1", dims.d1}, {"d2", dims.d2}, {"n1", dims.n1},
                   {"n2", dims.n2},     {"k", a.k},       {"m", a.m},       {"beta", json_number(a.beta)},
                   {"trials", a.trials}};
      for (int t = 0; t < a.trials; ++t) {
        const std::uint64_t seed = derive_seed(g.seed, {static_cast<std::uint64_t>(t)});
        const ProblemInstance inst = make_instance(family, dims, a.k, default_spectrum(a.k, a.beta), a.m, seed);
        trials.push_back({{"trial", t},
                          {"seed", seed},
                          {"reports", property_reports(inst.measurements(), inst.effective_target, a.k,
                                                       a.beta, false, inst.seeds.operator_factors,
                                                       derive_seed(seed, {stream::probes}))}});
      }
    }
    for (const auto& t : trials) {
      for (const auto& r : t["reports"]) {
        rows.push_back({{"check", "property" + std::to_string(r["property_id"].get<int>())},
                        {"trial", t["trial"]},
                        {"measured_value", r["measured_value"]},
                        {"threshold", r["threshold"]},
                        {"pass", r["pass"]}});
      }
    }
    if (dir) write_json(*dir / "properties.json", Json{{"run", run}, {"effective", effective}, {"trials", trials}});
  }
  print_rows(out, g.format, rows);
  return 0;
}

// ---------------------------------------------------------------- bench

struct Preset {
  std::string name;
  std::string sweep;
  std::string description;
  std::function<bench::SweepReport(const Globals&, const BenchArgs&)> run;
};

int trials_or(const BenchArgs& a, int fallback) { return a.trials > 0 ? a.trials : fallback; }

std::vector<Index> m_or(const BenchArgs& a, std::vector<Index> fallback) {
  return a.m_list.empty() ? fallback : a.m_list;
}

bench::SweepOptions sweep_options(const Globals& g) {
  bench::SweepOptions o;
  o.threads = g.threads;
  o.timings = !g.no_timings;
  return o;
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> table = {
      {"paper-fig1ab", "sensing", "50x50 rank-5, rank-one vs dense, m in {1000,1500,2000,3000}, 5 trials",
       [](const Globals& g, const BenchArgs& a) {
         auto o = sweep_options(g);
         o.solver.ls_method = LsMethod::matrix_free;
         return bench::run_sensing_sweep(50, 50, 5, default_spectrum(5, 1.0), m_or(a, {1000, 1500, 2000, 3000}),
                                         trials_or(a, 5), g.seed,
                                         {bench::OperatorKind::rank_one, bench::OperatorKind::dense}, o);
       }},
      {"sensing-small", "sensing", "20x20 rank-2, rank-one vs dense, m in {200,400}, 2 trials",
       [](const Globals& g, const BenchArgs& a) {
         auto o = sweep_options(g);
         o.solver.ls_method = LsMethod::matrix_free;
         return bench::run_sensing_sweep(20, 20, 2, default_spectrum(2, 2.0), m_or(a, {200, 400}),
                                         trials_or(a, 2), g.seed,
                                         {bench::OperatorKind::rank_one, bench::OperatorKind::dense}, o);
       }},
      {"paper-fig1cd", "multilabel", "L=50, n1=100, 200 observations, d in {5,10,15,20}, k in {2,4,6,8}, 10 trials",
       [](const Globals& g, const BenchArgs& a) {
         auto o = sweep_options(g);
         o.solver.ridge = 1e-2;
         return bench::run_multilabel_sweep(50, 100, {5, 10, 15, 20}, {2, 4, 6, 8}, 200, trials_or(a, 10),
                                            g.seed, o);
       }},
      {"multilabel-full", "multilabel", "L=50, n1=100, every entry observed, d=5, k=2, 2 trials",
       [](const Globals& g, const BenchArgs& a) {
         auto o = sweep_options(g);
         o.solver.ridge = 1e-2;
         return bench::run_multilabel_sweep(50, 100, {5}, {2}, 5000, trials_or(a, 2), g.seed, o);
       }},
      {"imc-phase", "imc", "d=10, k=2, n=200, m in {100,200,300,500,1000,2000}, 10 trials",
       [](const Globals& g, const BenchArgs& a) {
         return bench::run_imc_sweep(10, 10, 200, 200, 2, m_or(a, {100, 200, 300, 500, 1000, 2000}),
                                     trials_or(a, 10), g.seed, sweep_options(g));
       }},
      {"properties-gaussian", "properties", "Gaussian, d=20, k=1, m in {2500,10000}, 20 trials",
       [](const Globals& g, const BenchArgs& a) {
         return bench::run_property_sweep(Family::gaussian, {20, 20, 0, 0}, 1, 1.0, m_or(a, {2500, 10000}),
                                          trials_or(a, 20), g.seed, sweep_options(g));
       }},
  };
  return table;
}

std::string preset_list() {
  std::string s;
  for (const auto& p : presets()) s += "\n  " + p.name + " (" + p.sweep + "): " + p.description;
  return s;
}

int cmd_bench(const Globals& g, const BenchArgs& a, std::ostream& out) {
  const Preset* chosen = nullptr;
  if (!a.preset.empty()) {
    for (const auto& p : presets()) {
      if (p.name == a.preset) chosen = &p;
    }
    if (chosen == nullptr) throw ValidationError("bench: unknown preset '" + a.preset + "'; available:" + preset_list());
    if (!a.sweep.empty() && a.sweep != chosen->sweep) {
      throw ValidationError("bench: preset '" + a.preset + "' belongs to the " + chosen->sweep + " sweep");
    }
  } else {
    if (a.sweep.empty()) throw ValidationError("bench: name a sweep or a --preset; available:" + preset_list());
    for (const auto& p : presets()) {
      if (p.sweep == a.sweep) {
        chosen = &p;
        break;
      }
    }
    if (chosen == nullptr) throw ValidationError("bench: unknown sweep '" + a.sweep + "'");
  }
  const fs::path dir = output_dir(g, "bench");
  const bench::SweepReport report = chosen->run(g, a);
  Json j = bench::to_json(report);
  j["preset"] = chosen->name;
  j["run"] = {{"command", "bench"},
              {"global", globals_json(g)},
              {"bench", {{"sweep", chosen->sweep}, {"preset", chosen->name}, {"trials", a.trials}, {"m", a.m_list}}}};
  io::write_text_atomic(dir / (chosen->sweep + ".csv"), bench::to_csv(report));
  write_json(dir / (chosen->sweep + ".json"), j);
  io::write_text_atomic(dir / (chosen->sweep + ".dat"), bench::to_gnuplot(report));

  Json rows = Json::array();
  for (const auto& p : report.points) {
    Json row = {{"axis_value", json_number(p.axis_value)}, {"kind", p.kind},
                {"median", json_number(p.median)},         {"q1", json_number(p.q1)},
                {"q3", json_number(p.q3)},                 {"success_rate", json_number(p.success_rate)},
                {"median_seconds", json_number(p.median_seconds)}};
    for (const auto& [name, value] : p.metric_medians) {
      if (name == "d") row["d"] = json_number(value);
    }
    rows.push_back(row);
  }
  print_rows(out, g.format, rows);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Globals g;
  GenArgs ga;
  SolveArgs sa;
  VerifyArgs va;
  BenchArgs ba;

  CLI::App app{"Low-rank matrix recovery from rank-one measurements", "lrrom"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.allow_config_extras(false);
  app.set_config("--config", "", "TOML/INI config file; flags override it");
  auto* seed_opt = app.add_option("--seed", g.seed, "Master seed (u64)");
  app.add_option("--out", g.out, "Output directory");
  app.add_option("--format", g.format, "Format of the summary on stdout")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--no-timings", g.no_timings, "Write wall-clock fields as 0");

  auto* gen = app.add_subcommand("gen", "Generate a planted problem instance");
  gen->add_option("--family", ga.family, "gaussian, inductive or multilabel")
      ->check(CLI::IsMember({"gaussian", "inductive", "multilabel"}));
  gen->add_option("--d1", ga.d1);
  gen->add_option("--d2", ga.d2);
  gen->add_option("--n1", ga.n1);
  gen->add_option("--n2", ga.n2);
  gen->add_option("--labels", ga.labels, "Number of labels L (multilabel)");
  gen->add_option("--k", ga.k, "Rank");
  gen->add_option("--m", ga.m, "Number of measurements / observations")->required();
  gen->add_option("--beta", ga.beta, "Condition number of the default linear spectrum");
  gen->add_option("--spectrum", ga.spectrum, "Explicit singular values")->delimiter(',');
  gen->add_flag("--with-replacement", ga.with_replacement, "Sample observations with replacement");
  gen->add_option("--x", ga.x_path, "Import left features (matrix file, d1 x n1)")->check(CLI::ExistingFile);
  gen->add_option("--y", ga.y_path, "Import right features (matrix file, d2 x n2)")->check(CLI::ExistingFile);

  auto* solve = app.add_subcommand("solve", "Recover W from an instance directory");
  solve->add_option("instance,--instance", sa.instance, "Instance directory");
  solve->add_option("--k", sa.k, "Rank (default: from the instance)");
  solve->add_option("--H,--max-iters", sa.h, "Outer iterations");
  solve->add_option("--tol", sa.tolerance, "Relative-change stopping tolerance");
  solve->add_option("--mode", sa.mode)->check(CLI::IsMember({"split", "reuse"}));
  solve->add_option("--ridge", sa.ridge);
  solve->add_option("--zero-threshold", sa.zero_threshold, "Zero-signal threshold on |S|_2");
  solve->add_option("--ls", sa.ls)->check(CLI::IsMember({"direct", "matrix-free"}));
  solve->add_option("--output", sa.output)->check(CLI::IsMember({"last-fit", "literal"}));
  solve->add_option("--inner-tol", sa.inner_tolerance);
  solve->add_option("--max-inner", sa.max_inner);
  solve->add_option("--wstar", sa.wstar, "Ground truth for per-iteration dist");

  auto* verify = app.add_subcommand("verify", "Check the recovery properties and probe RIP");
  verify->add_flag("--rip", va.rip);
  verify->add_flag("--properties", va.properties);
  verify->add_option("--family", va.family)->check(CLI::IsMember({"gaussian", "inductive", "multilabel"}));
  verify->add_option("--d1", va.d1);
  verify->add_option("--d2", va.d2);
  verify->add_option("--n1", va.n1);
  verify->add_option("--n2", va.n2);
  verify->add_option("--k", va.k);
  verify->add_option("--m", va.m);
  verify->add_option("--beta", va.beta);
  verify->add_option("--trials", va.trials);
  verify->add_option("--instance", va.instance, "Check an existing instance");

  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark sweep");
  bench_cmd->add_option("sweep", ba.sweep, "sensing, multilabel, imc or properties")
      ->check(CLI::IsMember({"sensing", "multilabel", "imc", "properties"}));
  bench_cmd->add_option("--preset", ba.preset, "Named configuration");
  bench_cmd->add_option("--trials", ba.trials, "Override the trial count");
  bench_cmd->add_option("--m", ba.m_list, "Override the m axis")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  g.seed_given = seed_opt->count() > 0;

  try {
    if (gen->parsed()) return cmd_gen(g, ga, out);
    if (solve->parsed()) return cmd_solve(g, sa, out);
    if (verify->parsed()) return cmd_verify(g, va, out);
    if (bench_cmd->parsed()) return cmd_bench(g, ba, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return e.is_numerical_failure() ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace lrrom::cli
