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


#include "lrrom/report_json.hpp"

#include <cmath>

namespace lrrom {

Json json_number(double value) {
  if (!std::isfinite(value)) return nullptr;
  return value;
}

namespace {

Json optional_number(const std::optional<double>& v) { return v ? json_number(*v) : Json(nullptr); }

}  // namespace

Json to_json(const SolverConfig& c) {
  Json j;
  j["k"] = c.k;
  j["H"] = c.max_outer_iters;
  j["tolerance"] = json_number(c.tolerance);
  j["mode"] = to_string(c.partition_mode);
  j["ridge"] = json_number(c.ridge);
  j["zero_signal_threshold"] = optional_number(c.zero_signal_threshold);
  j["ls_method"] = to_string(c.ls_method);
  j["output"] = to_string(c.output);
  j["inner_tolerance"] = json_number(c.inner_tolerance);
  j["max_inner_iters"] = c.max_inner_iters;
  return j;
}

Json to_json(const RecoveryReport& r) {
  Json j;
  j["config"] = to_json(r.config);
  j["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
  j["iterations"] = r.iterations_run;
  Json per_iter = Json::array();
  for (const auto& it : r.per_iter) {
    Json row;
    row["iter"] = it.iter;
    if (it.dist_to_truth) row["dist"] = json_number(*it.dist_to_truth);
    row["residual"] = json_number(it.residual_norm);
    row["seconds"] = json_number(it.elapsed_seconds);
    row["stationarity"] = json_number(it.stationarity);
    row["inner_iterations"] = it.inner_iterations;
    per_iter.push_back(std::move(row));
  }
  j["per_iter"] = std::move(per_iter);
  j["final_error_fro"] = optional_number(r.final_error_fro);
  j["final_error_spectral"] = optional_number(r.final_error_spectral);
  j["initial_dist"] = optional_number(r.initial_dist);
  j["converged"] = r.converged;
  j["zero_signal"] = r.zero_signal;
  j["warnings"] = r.warnings;
  j["threads"] = r.threads;
  return j;
}

Json to_json(const PropertyReport& r) {
  Json j;
  j["property_id"] = r.property_id;
  j["measured_value"] = json_number(r.measured_value);
  j["measured_x"] = json_number(r.measured_x);
  j["measured_y"] = json_number(r.measured_y);
  j["threshold"] = json_number(r.threshold);
  j["pass"] = r.pass;
  j["k"] = r.k;
  j["beta"] = json_number(r.beta);
  j["beta_estimated"] = r.beta_estimated;
  j["m"] = r.m;
  j["family"] = to_string(r.family);
  j["operator_seed"] = r.operator_seed ? Json(*r.operator_seed) : Json(nullptr);
  j["probe_seed"] = r.probe_seed ? Json(*r.probe_seed) : Json(nullptr);
  return j;
}

Json to_json(const RipProbeReport& r) {
  Json j;
  j["energy_upper"] = json_number(r.energy_upper);
  j["energy_lower"] = json_number(r.energy_lower);
  j["ratio"] = json_number(r.ratio);
  j["first_term"] = json_number(r.first_term);
  j["d1"] = r.d1;
  j["d2"] = r.d2;
  j["m"] = r.m;
  j["seed"] = r.seed;
  j["probe_seed"] = r.probe_seed;
  return j;
}

void strip_timings(RecoveryReport& report) {
  for (auto& it : report.per_iter) it.elapsed_seconds = 0.0;
}

}  // namespace lrrom
