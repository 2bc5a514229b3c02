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

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lrrom {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Broad category of a failure; the CLI maps these onto exit codes.
enum class ErrorKind {
  dimension,
  index,
  numeric,
  rank,
  validation,
  insufficient_measurements,
  rank_collapse,
  divergence,
  capacity,
  io,
};

const char* to_string(ErrorKind kind);

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for failures of the numerical procedure itself (as opposed to
  /// bad input): rank collapse, divergence, non-finite values.
  bool is_numerical_failure() const noexcept {
    return kind_ == ErrorKind::rank_collapse ||
           kind_ == ErrorKind::divergence || kind_ == ErrorKind::numeric;
  }

 private:
  ErrorKind kind_;
};

#define LRROM_DEFINE_ERROR(Name, Kind)                                  \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  }

LRROM_DEFINE_ERROR(DimensionError, dimension);
LRROM_DEFINE_ERROR(IndexError, index);
LRROM_DEFINE_ERROR(NumericError, numeric);
LRROM_DEFINE_ERROR(RankError, rank);
LRROM_DEFINE_ERROR(ValidationError, validation);
LRROM_DEFINE_ERROR(InsufficientMeasurementsError, insufficient_measurements);
LRROM_DEFINE_ERROR(RankCollapseError, rank_collapse);
LRROM_DEFINE_ERROR(DivergenceError, divergence);
LRROM_DEFINE_ERROR(CapacityError, capacity);
LRROM_DEFINE_ERROR(IoError, io);

#undef LRROM_DEFINE_ERROR

/// Throws DimensionError with `context` unless rows/cols match.
void require_shape(const Matrix& m, Index rows, Index cols, const char* context);

/// Frobenius inner product <A, B> = Tr(A^T B).
inline double frobenius_inner(const Matrix& a, const Matrix& b) {
  return (a.array() * b.array()).sum();
}

}  // namespace lrrom
