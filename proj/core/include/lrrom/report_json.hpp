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

#include "lrrom/analysis.hpp"
#include "lrrom/solver.hpp"

#include <nlohmann/json.hpp>

namespace lrrom {

using Json = nlohmann::ordered_json;

/// Non-finite doubles become null.
Json json_number(double value);

Json to_json(const SolverConfig& config);
/// Keys: config, seed, iterations, per_iter[{iter, dist, residual, seconds}],
/// final_error_fro, final_error_spectral, warnings, plus bookkeeping fields.
Json to_json(const RecoveryReport& report);
Json to_json(const PropertyReport& report);
Json to_json(const RipProbeReport& report);

/// Zeroes every wall-clock field so the report is reproducible byte for byte.
void strip_timings(RecoveryReport& report);

}  // namespace lrrom
