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

#include "lrrom/common.hpp"
#include "lrrom/rng.hpp"

#include <cmath>
#include <numbers>

namespace lrrom {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::index: return "index";
    case ErrorKind::numeric: return "numeric";
    case ErrorKind::rank: return "rank";
    case ErrorKind::validation: return "validation";
    case ErrorKind::insufficient_measurements: return "insufficient_measurements";
    case ErrorKind::rank_collapse: return "rank_collapse";
    case ErrorKind::divergence: return "divergence";
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

void require_shape(const Matrix& m, Index rows, Index cols, const char* context) {
  if (m.rows() != rows || m.cols() != cols) {
    throw DimensionError(std::string(context) + ": expected " +
                         std::to_string(rows) + "x" + std::to_string(cols) +
                         ", got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (spare_) {
    const double out = *spare_;
    spare_.reset();
    return out;
  }
  // 1 - u lies in (0, 1], so the log is finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw ValidationError("Rng::below: n must be positive");
  // Largest multiple of n representable; draws above it are rejected.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return draw % n;
}

Matrix Rng::normal_matrix(Index rows, Index cols) {
  Matrix out(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) out(i, j) = normal();
  return out;
}

Vector Rng::normal_vector(Index n) {
  Vector out(n);
  for (Index i = 0; i < n; ++i) out(i) = normal();
  return out;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master,
                          std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(master);
  for (std::uint64_t p : path) h = mix64(h ^ mix64(p + 0x632be59bd9b4e019ULL));
  return h;
}

}  // namespace lrrom
