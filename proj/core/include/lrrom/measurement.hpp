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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lrrom {

enum class Family { gaussian, inductive, multilabel, custom };

const char* to_string(Family family);
/// Throws ValidationError for an unknown name.
Family family_from_string(std::string_view name);

/// 0-based (row, column) source index of one observed entry.
struct IndexPair {
  Index row = 0;
  Index col = 0;

  friend bool operator==(const IndexPair&, const IndexPair&) = default;
  friend auto operator<=>(const IndexPair&, const IndexPair&) = default;
};

/// The observation multiset of a completion-style operator, with the
/// bounds [n1] x [n2] its pairs live in.
struct IndexMap {
  std::vector<IndexPair> pairs;
  Index n1 = 0;
  Index n2 = 0;
};

/// The operator restricted to one factor while the other is held fixed:
/// F -> A(G F^T) or F -> A(F G^T). The alternating least-squares steps only
/// ever see the operator through one of these.
///
/// The free factor F is (free_rows x rank); its column-major vectorization
/// (index a * free_rows + c for F(c, a)) is the column order of design().
class FactorMap {
 public:
  virtual ~FactorMap() = default;

  virtual Index rows() const = 0;
  virtual Index free_rows() const = 0;
  virtual Index rank() const = 0;
  Index unknowns() const { return free_rows() * rank(); }

  virtual Vector forward(const Matrix& free) const = 0;
  /// Gradient-side map: sum_i r_i * dA(F)_i / dF, shape free_rows x rank.
  virtual Matrix adjoint(const Vector& residual) const = 0;
  /// Explicit m x unknowns() design matrix.
  virtual Matrix design() const = 0;
};

/// A linear measurement ensemble {A_1, ..., A_m}, A_i in R^{d1 x d2},
/// acting by A(W)_i = <A_i, W>.
class MeasurementOperator {
 public:
  virtual ~MeasurementOperator() = default;

  virtual Index rows() const = 0;
  virtual Index d1() const = 0;
  virtual Index d2() const = 0;

  /// A(W); W must be d1 x d2.
  virtual Vector apply(const Matrix& w) const = 0;
  /// A(left * right^T) without forming the product when the structure allows.
  virtual Vector apply_factored(const Matrix& left, const Matrix& right) const = 0;
  /// sum_i r_i A_i (no 1/m).
  virtual Matrix adjoint(const Vector& r) const = 0;

  /// Map of V (d2 x k) given U: V -> A(U V^T).
  virtual std::unique_ptr<FactorMap> right_map(const Matrix& u) const = 0;
  /// Map of U (d1 x k) given V: U -> A(U V^T).
  virtual std::unique_ptr<FactorMap> left_map(const Matrix& v) const = 0;

  /// Contiguous sub-ensemble of measurements [offset, offset + count).
  virtual std::shared_ptr<const MeasurementOperator> slice(Index offset,
                                                           Index count) const = 0;

  /// Number of doubles held to represent the ensemble.
  virtual std::size_t stored_numbers() const = 0;
  virtual std::string kind() const = 0;
};

/// Rank-one ensemble A_i = scale * x_i y_i^T, stored as the two factor
/// matrices. The d1 x d2 matrices A_i are never formed.
class RankOneOperator final : public MeasurementOperator {
 public:
  /// left is m x d1 (row i = x_i^T), right is m x d2 (row i = y_i^T).
  RankOneOperator(Matrix left, Matrix right, double scale, Family family,
                  std::optional<IndexMap> index_map = std::nullopt);

  Index rows() const override { return left_.rows(); }
  Index d1() const override { return left_.cols(); }
  Index d2() const override { return right_.cols(); }

  const Matrix& left_factors() const { return left_; }
  const Matrix& right_factors() const { return right_; }
  double scale() const { return scale_; }
  Family family() const { return family_; }
  const std::optional<IndexMap>& index_map() const { return index_map_; }

  Vector apply(const Matrix& w) const override;
  Vector apply_factored(const Matrix& left, const Matrix& right) const override;
  Matrix adjoint(const Vector& r) const override;
  std::unique_ptr<FactorMap> right_map(const Matrix& u) const override;
  std::unique_ptr<FactorMap> left_map(const Matrix& v) const override;
  std::shared_ptr<const MeasurementOperator> slice(Index offset,
                                                   Index count) const override;
  std::size_t stored_numbers() const override;
  std::string kind() const override { return "rank_one"; }

  /// Ensemble of A_i^T: swaps the factors (and the index pairs).
  RankOneOperator transposed() const;

 private:
  Matrix left_;
  Matrix right_;
  double scale_;
  Family family_;
  std::optional<IndexMap> index_map_;
};

/// Baseline ensemble of full d1 x d2 measurement matrices.
class DenseOperator final : public MeasurementOperator {
 public:
  /// Column i of `vectorized` is vec(A_i) (column-major), so the matrix is
  /// (d1 * d2) x m.
  DenseOperator(Index d1, Index d2, Matrix vectorized, double entry_stddev);

  Index rows() const override { return vectorized_.cols(); }
  Index d1() const override { return d1_; }
  Index d2() const override { return d2_; }
  double entry_stddev() const { return entry_stddev_; }

  /// A_i as a d1 x d2 view.
  Eigen::Map<const Matrix> matrix(Index i) const;

  Vector apply(const Matrix& w) const override;
  Vector apply_factored(const Matrix& left, const Matrix& right) const override;
  Matrix adjoint(const Vector& r) const override;
  std::unique_ptr<FactorMap> right_map(const Matrix& u) const override;
  std::unique_ptr<FactorMap> left_map(const Matrix& v) const override;
  std::shared_ptr<const MeasurementOperator> slice(Index offset,
                                                   Index count) const override;
  std::size_t stored_numbers() const override;
  std::string kind() const override { return "dense"; }

 private:
  Index d1_;
  Index d2_;
  Matrix vectorized_;
  double entry_stddev_;
};

/// An operator together with its measurement vector b.
struct MeasurementSet {
  MeasurementSet(std::shared_ptr<const MeasurementOperator> op, Vector b);

  std::shared_ptr<const MeasurementOperator> op;
  Vector b;

  Index size() const { return b.size(); }
  /// Rank-one view of op, or nullptr for other operator kinds.
  const RankOneOperator* rank_one() const;
};

/// dense apply: b_i = Tr(A_i^T W).
Vector apply_dense(const DenseOperator& op, const Matrix& w);

/// S = (1/m) sum_i b_i A_i, so that <A(W), b> = m <W, S>.
Matrix adjoint_weighted_sum(const MeasurementOperator& op, const Vector& b);

/// x_i, y_i ~ N(0, I) i.i.d., scale 1. Measurement i draws x_i then y_i, so
/// an ensemble with fewer rows is a prefix of one with more.
RankOneOperator make_gaussian_operator(Index d1, Index d2, Index m,
                                       std::uint64_t seed);

/// Inductive matrix completion: A_t = sqrt(n1 n2) x_{i_t} y_{j_t}^T for the
/// columns of X (d1 x n1) and Y (d2 x n2). Omega is kept as given.
RankOneOperator make_imc_operator(const Matrix& x, const Matrix& y,
                                  std::vector<IndexPair> omega);

/// Multi-label regression: A_t = sqrt(n1 L) x_{i_t} e_{j_t}^T, e_j in R^L.
RankOneOperator make_multilabel_operator(const Matrix& x, Index labels,
                                         std::vector<IndexPair> omega);

/// m dense matrices with i.i.d. N(0, 1/m) entries, so E|A(W)|^2 = |W|_F^2.
DenseOperator make_dense_gaussian_operator(Index d1, Index d2, Index m,
                                           std::uint64_t seed);

}  // namespace lrrom
