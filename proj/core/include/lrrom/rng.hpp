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

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>

namespace lrrom {

/// Project-wide random source.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Uniforms take the top 53 bits of one draw; normals use the
/// Box-Muller transform in pairs; bounded integers use rejection sampling.
/// None of this goes through <random>'s distributions, which are
/// implementation-defined, so a seed produces the same stream with any
/// standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  /// Standard normal.
  double normal();
  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);

  /// rows x cols matrix of i.i.d. standard normals, filled column-major.
  Matrix normal_matrix(Index rows, Index cols);
  Vector normal_vector(Index n);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Child seed for a labelled sub-stream, e.g. derive_seed(master, {point, trial}).
std::uint64_t derive_seed(std::uint64_t master,
                          std::initializer_list<std::uint64_t> path);

/// Stream labels used with derive_seed so that independent pieces of an
/// experiment never share randomness.
namespace stream {
inline constexpr std::uint64_t truth = 1;
inline constexpr std::uint64_t features_left = 2;
inline constexpr std::uint64_t features_right = 3;
inline constexpr std::uint64_t omega = 4;
inline constexpr std::uint64_t operator_factors = 5;
inline constexpr std::uint64_t probes = 6;
inline constexpr std::uint64_t test_features = 7;
inline constexpr std::uint64_t dense_operator = 8;
}  // namespace stream

}  // namespace lrrom
