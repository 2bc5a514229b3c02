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
#include "lrrom/synth.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lrrom::io {

namespace fs = std::filesystem;

/// 17 significant digits; round-trips every finite double.
std::string format_double(double value);
/// Strict parse of a whole token; throws IoError naming `context`.
double parse_double(std::string_view token, std::string_view context);
std::uint64_t parse_u64(std::string_view token, std::string_view context);
std::int64_t parse_i64(std::string_view token, std::string_view context);

/// Writes `content` to a sibling temp file and renames it over `path`.
void write_text_atomic(const fs::path& path, std::string_view content);
std::string read_text(const fs::path& path);

// Matrix text format:
//   LRROM-MATRIX 1 <rows> <cols>
//   <cols values per line, single spaces>
std::string matrix_to_text(const Matrix& m);
Matrix matrix_from_text(std::string_view text, std::string_view context);
void write_matrix(const fs::path& path, const Matrix& m);
Matrix read_matrix(const fs::path& path);
/// Same format with one column.
void write_vector(const fs::path& path, const Vector& v);
Vector read_vector(const fs::path& path);

/// Ordered key=value lines.
class Meta {
 public:
  void set(std::string key, std::string value);
  void set(std::string key, double value) { set(std::move(key), format_double(value)); }
  void set_int(std::string key, std::int64_t value) { set(std::move(key), std::to_string(value)); }
  void set_u64(std::string key, std::uint64_t value) { set(std::move(key), std::to_string(value)); }

  bool has(std::string_view key) const;
  const std::string& get(std::string_view key) const;
  std::optional<std::string> find(std::string_view key) const;
  double get_double(std::string_view key) const;
  std::int64_t get_int(std::string_view key) const;
  std::uint64_t get_u64(std::string_view key) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  std::string to_text() const;
  static Meta from_text(std::string_view text, std::string_view context);

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

void write_meta(const fs::path& path, const Meta& meta);
Meta read_meta(const fs::path& path);

/// Observation pairs as 1-based "i,j" lines.
std::string omega_to_csv(const std::vector<IndexPair>& pairs);
std::vector<IndexPair> omega_from_csv(std::string_view text, std::string_view context);

/// Operator directory: left.mat, right.mat, meta (scale, family, and for
/// completion-style operators omega=omega.csv, n1, n2).
void write_operator(const fs::path& dir, const RankOneOperator& op);
RankOneOperator read_operator(const fs::path& dir);

/// Instance directory layout. Extra entries append to the meta file.
void write_instance(const fs::path& dir, const ProblemInstance& inst, const Meta& extra = {});

struct LoadedInstance {
  std::shared_ptr<const RankOneOperator> op;
  Vector b;
  Meta meta;
  std::optional<Matrix> wstar;
  std::optional<Index> k;

  MeasurementSet measurements() const { return MeasurementSet(op, b); }
};

/// Reads operator/ and b.vec, plus meta and wstar.mat when present.
LoadedInstance read_instance(const fs::path& dir);

/// FNV-1a 64 of a byte string, as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace lrrom::io
