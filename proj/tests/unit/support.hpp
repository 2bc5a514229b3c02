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

// Shared helpers for the unit tests. Random inputs for property tests come
// from the standard library generators, not from lrrom::Rng, so the oracles
// stay independent of the code under test.

#include "lrrom/common.hpp"
#include "lrrom/measurement.hpp"

#include <Eigen/Dense>

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace lrrom::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  Index integer(Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(engine_); }

  Matrix matrix(Index rows, Index cols) {
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j) {
      for (Index i = 0; i < rows; ++i) m(i, j) = normal();
    }
    return m;
  }
  Vector vector(Index n) { return matrix(n, 1).col(0); }

  Matrix orthonormal(Index d, Index k) {
    Eigen::HouseholderQR<Matrix> qr(matrix(d, k));
    return qr.householderQ() * Matrix::Identity(d, k);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

/// The measurement matrices of a rank-one operator, formed explicitly.
inline std::vector<Matrix> explicit_matrices(const RankOneOperator& op) {
  std::vector<Matrix> out;
  for (Index i = 0; i < op.rows(); ++i) {
    out.push_back(op.scale() * op.left_factors().row(i).transpose() * op.right_factors().row(i));
  }
  return out;
}

/// b_i = Tr(A_i^T W) by explicit summation.
inline Vector naive_apply(const std::vector<Matrix>& a, const Matrix& w) {
  Vector b(static_cast<Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    double s = 0.0;
    for (Index r = 0; r < w.rows(); ++r) {
      for (Index c = 0; c < w.cols(); ++c) s += a[i](r, c) * w(r, c);
    }
    b(static_cast<Index>(i)) = s;
  }
  return b;
}

inline double svd_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
}

inline double rel_diff(const Matrix& a, const Matrix& b) {
  const double den = std::max(1e-300, b.norm());
  return (a - b).norm() / den;
}

/// Vectorized least squares: vec(W) minimizing |b - A(W)|, via a full SVD of
/// the explicitly formed m x (d1 d2) design.
inline Matrix vectorized_least_squares(const std::vector<Matrix>& a, const Vector& b, Index d1, Index d2) {
  Matrix design(static_cast<Index>(a.size()), d1 * d2);
  for (std::size_t i = 0; i < a.size(); ++i) {
    design.row(static_cast<Index>(i)) = Eigen::Map<const Vector>(a[i].data(), d1 * d2).transpose();
  }
  const Vector x = design.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
  return Eigen::Map<const Matrix>(x.data(), d1, d2);
}

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("lrrom-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace lrrom::testing
