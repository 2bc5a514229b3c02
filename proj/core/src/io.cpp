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


#include "lrrom/io.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace lrrom::io {

namespace {

constexpr std::string_view kMagic = "LRROM-MATRIX";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    lines.push_back(text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

[[noreturn]] void parse_fail(std::string_view context, const std::string& what) {
  throw IoError(std::string(context) + ": " + what);
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view token, std::string_view context) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    parse_fail(context, "not a number: '" + std::string(token) + "'");
  }
  return v;
}

std::uint64_t parse_u64(std::string_view token, std::string_view context) {
  token = trim(token);
  std::uint64_t v = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    parse_fail(context, "not an unsigned integer: '" + std::string(token) + "'");
  }
  return v;
}

std::int64_t parse_i64(std::string_view token, std::string_view context) {
  token = trim(token);
  std::int64_t v = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    parse_fail(context, "not an integer: '" + std::string(token) + "'");
  }
  return v;
}

void write_text_atomic(const fs::path& path, std::string_view content) {
  static std::atomic<unsigned> counter{0};
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp" + std::to_string(::getpid()) + "-" + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename into " + path.string());
  }
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string matrix_to_text(const Matrix& m) {
  std::string out;
  out.reserve(static_cast<std::size_t>(m.size()) * 24 + 64);
  out += kMagic;
  out += " 1 " + std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ' ';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

Matrix matrix_from_text(std::string_view text, std::string_view context) {
  const auto lines = split_lines(text);
  if (lines.empty()) parse_fail(context, "empty matrix file");
  const auto header = split_spaces(lines[0]);
  if (header.size() != 4 || header[0] != kMagic) parse_fail(context, "bad matrix header");
  if (header[1] != "1") parse_fail(context, "unsupported matrix format version " + std::string(header[1]));
  const std::int64_t rows = parse_i64(header[2], context);
  const std::int64_t cols = parse_i64(header[3], context);
  if (rows < 0 || cols < 0) parse_fail(context, "negative matrix dimensions");
  Matrix m(rows, cols);
  std::size_t line = 1;
  for (std::int64_t i = 0; i < rows; ++i, ++line) {
    if (line >= lines.size()) parse_fail(context, "expected " + std::to_string(rows) + " rows");
    const auto tokens = split_spaces(lines[line]);
    if (static_cast<std::int64_t>(tokens.size()) != cols) {
      parse_fail(context, "row " + std::to_string(i + 1) + " has " + std::to_string(tokens.size()) +
                              " values, expected " + std::to_string(cols));
    }
    for (std::int64_t j = 0; j < cols; ++j) m(i, j) = parse_double(tokens[j], context);
  }
  for (; line < lines.size(); ++line) {
    if (!trim(lines[line]).empty()) parse_fail(context, "trailing data after the last row");
  }
  return m;
}

void write_matrix(const fs::path& path, const Matrix& m) { write_text_atomic(path, matrix_to_text(m)); }

Matrix read_matrix(const fs::path& path) { return matrix_from_text(read_text(path), path.string()); }

void write_vector(const fs::path& path, const Vector& v) { write_matrix(path, Matrix(v)); }

Vector read_vector(const fs::path& path) {
  const Matrix m = read_matrix(path);
  if (m.cols() != 1) throw IoError(path.string() + ": expected a single column");
  return m.col(0);
}

void Meta::set(std::string key, std::string value) {
  if (key.empty() || key.find_first_of("= \t\r\n") != std::string::npos) {
    throw ValidationError("meta: invalid key '" + key + "'");
  }
  if (value.find('\n') != std::string::npos) throw ValidationError("meta: value contains a newline");
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  entries_.emplace_back(std::move(key), std::move(value));
}

bool Meta::has(std::string_view key) const { return find(key).has_value(); }

std::optional<std::string> Meta::find(std::string_view key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

const std::string& Meta::get(std::string_view key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  throw IoError("meta: missing key '" + std::string(key) + "'");
}

double Meta::get_double(std::string_view key) const { return parse_double(get(key), key); }
std::int64_t Meta::get_int(std::string_view key) const { return parse_i64(get(key), key); }
std::uint64_t Meta::get_u64(std::string_view key) const { return parse_u64(get(key), key); }

std::string Meta::to_text() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + "=" + v + "\n";
  return out;
}

Meta Meta::from_text(std::string_view text, std::string_view context) {
  Meta meta;
  int lineno = 0;
  for (auto line : split_lines(text)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      parse_fail(context, "line " + std::to_string(lineno) + " is not key=value");
    }
    meta.set(std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))));
  }
  return meta;
}

void write_meta(const fs::path& path, const Meta& meta) { write_text_atomic(path, meta.to_text()); }

Meta read_meta(const fs::path& path) { return Meta::from_text(read_text(path), path.string()); }

std::string omega_to_csv(const std::vector<IndexPair>& pairs) {
  std::string out;
  out.reserve(pairs.size() * 10);
  for (const auto& p : pairs) out += std::to_string(p.row + 1) + "," + std::to_string(p.col + 1) + "\n";
  return out;
}

std::vector<IndexPair> omega_from_csv(std::string_view text, std::string_view context) {
  std::vector<IndexPair> pairs;
  int lineno = 0;
  for (auto line : split_lines(text)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) parse_fail(context, "line " + std::to_string(lineno) + " is not i,j");
    const std::int64_t i = parse_i64(line.substr(0, comma), context);
    const std::int64_t j = parse_i64(line.substr(comma + 1), context);
    if (i < 1 || j < 1) parse_fail(context, "indices are 1-based (line " + std::to_string(lineno) + ")");
    pairs.push_back({static_cast<Index>(i - 1), static_cast<Index>(j - 1)});
  }
  return pairs;
}

void write_operator(const fs::path& dir, const RankOneOperator& op) {
  write_matrix(dir / "left.mat", op.left_factors());
  write_matrix(dir / "right.mat", op.right_factors());
  Meta meta;
  meta.set("scale", op.scale());
  meta.set("family", std::string(to_string(op.family())));
  if (const auto& map = op.index_map()) {
    write_text_atomic(dir / "omega.csv", omega_to_csv(map->pairs));
    meta.set("omega", std::string("omega.csv"));
    meta.set_int("n1", map->n1);
    meta.set_int("n2", map->n2);
  }
  write_meta(dir / "meta", meta);
}

RankOneOperator read_operator(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError("operator directory not found: " + dir.string());
  Matrix left = read_matrix(dir / "left.mat");
  Matrix right = read_matrix(dir / "right.mat");
  const Meta meta = read_meta(dir / "meta");
  const double scale = meta.get_double("scale");
  const Family family = family_from_string(meta.get("family"));
  std::optional<IndexMap> map;
  if (const auto omega = meta.find("omega")) {
    const fs::path p = fs::path(*omega).is_absolute() ? fs::path(*omega) : dir / *omega;
    IndexMap m;
    m.pairs = omega_from_csv(read_text(p), p.string());
    m.n1 = static_cast<Index>(meta.get_int("n1"));
    m.n2 = static_cast<Index>(meta.get_int("n2"));
    map = std::move(m);
  }
  return RankOneOperator(std::move(left), std::move(right), scale, family, std::move(map));
}

void write_instance(const fs::path& dir, const ProblemInstance& inst, const Meta& extra) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
  write_matrix(dir / "wstar.mat", inst.truth.w);
  write_matrix(dir / "ustar.mat", inst.truth.u);
  write_matrix(dir / "vstar.mat", inst.truth.v);
  std::string spectrum;
  for (Index j = 0; j < inst.truth.spectrum.size(); ++j) {
    spectrum += format_double(inst.truth.spectrum(j)) + "\n";
  }
  write_text_atomic(dir / "spectrum", spectrum);
  write_operator(dir / "operator", *inst.op);
  write_vector(dir / "b.vec", inst.b);
  if (inst.features_left) write_matrix(dir / "x.mat", *inst.features_left);
  if (inst.features_right) write_matrix(dir / "y.mat", *inst.features_right);
  if (inst.labels) write_matrix(dir / "labels.mat", *inst.labels);

  Meta meta;
  meta.set("family", std::string(to_string(inst.family)));
  meta.set_int("d1", inst.dims.d1);
  meta.set_int("d2", inst.dims.d2);
  if (inst.family == Family::inductive) {
    meta.set_int("n1", inst.dims.n1);
    meta.set_int("n2", inst.dims.n2);
  } else if (inst.family == Family::multilabel) {
    meta.set_int("n1", inst.dims.n1);
    meta.set_int("labels", inst.dims.d2);
  }
  meta.set_int("k", inst.k);
  meta.set_int("m", inst.op->rows());
  meta.set("beta", inst.truth.beta);
  meta.set("with_replacement", std::string(inst.with_replacement ? "true" : "false"));
  if (inst.coherence_left) meta.set("coherence_x", *inst.coherence_left);
  if (inst.coherence_right) meta.set("coherence_y", *inst.coherence_right);
  meta.set_u64("seed", inst.seeds.master);
  meta.set_u64("seed_truth", inst.seeds.truth);
  meta.set_u64("seed_features_left", inst.seeds.features_left);
  meta.set_u64("seed_features_right", inst.seeds.features_right);
  meta.set_u64("seed_omega", inst.seeds.omega);
  meta.set_u64("seed_operator", inst.seeds.operator_factors);
  for (const auto& [k, v] : extra.entries()) meta.set(k, v);
  write_meta(dir / "meta", meta);
}

LoadedInstance read_instance(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError("instance directory not found: " + dir.string());
  LoadedInstance inst;
  inst.op = std::make_shared<RankOneOperator>(read_operator(dir / "operator"));
  inst.b = read_vector(dir / "b.vec");
  if (inst.b.size() != inst.op->rows()) {
    throw IoError(dir.string() + ": b.vec length does not match the operator");
  }
  if (fs::exists(dir / "meta")) {
    inst.meta = read_meta(dir / "meta");
    if (inst.meta.has("k")) inst.k = static_cast<Index>(inst.meta.get_int("k"));
  }
  if (fs::exists(dir / "wstar.mat")) inst.wstar = read_matrix(dir / "wstar.mat");
  return inst;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace lrrom::io
