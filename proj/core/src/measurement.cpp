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

#include "lrrom/measurement.hpp"

#include "lrrom/rng.hpp"

#include <cmath>
#include <utility>

namespace lrrom {

const char* to_string(Family family) {
  switch (family) {
    case Family::gaussian: return "gaussian";
    case Family::inductive: return "inductive";
    case Family::multilabel: return "multilabel";
    case Family::custom: return "custom";
  }
  return "custom";
}

Family family_from_string(std::string_view name) {
  if (name == "gaussian") return Family::gaussian;
  if (name == "inductive") return Family::inductive;
  if (name == "multilabel") return Family::multilabel;
  if (name == "custom") return Family::custom;
  throw ValidationError("unknown family '" + std::string(name) + "'");
}

namespace {

void check_finite_measurements(const Vector& b, const char* context) {
  for (Index i = 0; i < b.size(); ++i) {
    if (!std::isfinite(b(i))) {
      throw NumericError(std::string(context) + ": non-finite measurement at index " +
                         std::to_string(i));
    }
  }
}

// Shared by both rank-one maps: the fixed factor is folded into `fixed_`
// (m x k, already scaled), the free factor pairs with `free_side_` (m x d).
class RankOneFactorMap final : public FactorMap {
 public:
  RankOneFactorMap(Matrix fixed, const Matrix& free_side)
      : fixed_(std::move(fixed)), free_side_(free_side) {}

  Index rows() const override { return fixed_.rows(); }
  Index free_rows() const override { return free_side_.cols(); }
  Index rank() const override { return fixed_.cols(); }

  Vector forward(const Matrix& free) const override {
    require_shape(free, free_rows(), rank(), "rank-one factor map");
    return (fixed_.array() * (free_side_ * free).array()).rowwise().sum();
  }

  Matrix adjoint(const Vector& residual) const override {
    return free_side_.transpose() * (residual.asDiagonal() * fixed_);
  }

  Matrix design() const override {
    const Index d = free_rows();
    Matrix out(rows(), unknowns());
    for (Index a = 0; a < rank(); ++a) {
      out.middleCols(a * d, d) = fixed_.col(a).asDiagonal() * free_side_;
    }
    return out;
  }

 private:
  Matrix fixed_;
  const Matrix& free_side_;
};

}  // namespace

RankOneOperator::RankOneOperator(Matrix left, Matrix right, double scale,
                                 Family family, std::optional<IndexMap> index_map)
    : left_(std::move(left)),
      right_(std::move(right)),
      scale_(scale),
      family_(family),
      index_map_(std::move(index_map)) {
  if (left_.rows() < 1) throw ValidationError("rank-one operator needs m >= 1 measurements");
  if (left_.rows() != right_.rows()) {
    throw DimensionError("rank-one operator: left has " + std::to_string(left_.rows()) +
                         " rows, right has " + std::to_string(right_.rows()));
  }
  if (!(scale_ > 0.0) || !std::isfinite(scale_)) {
    throw ValidationError("rank-one operator: scale must be positive and finite");
  }
  if (!left_.allFinite() || !right_.allFinite()) {
    throw NumericError("rank-one operator: non-finite factor entry");
  }
  if (index_map_) {
    if (static_cast<Index>(index_map_->pairs.size()) != left_.rows()) {
      throw DimensionError("rank-one operator: index map length differs from m");
    }
    for (const IndexPair& p : index_map_->pairs) {
      if (p.row < 0 || p.row >= index_map_->n1 || p.col < 0 || p.col >= index_map_->n2) {
        throw IndexError("rank-one operator: index pair (" + std::to_string(p.row) + "," +
                         std::to_string(p.col) + ") outside bounds");
      }
    }
  }
}

Vector RankOneOperator::apply(const Matrix& w) const {
  require_shape(w, d1(), d2(), "apply");
  Vector b = scale_ * ((left_ * w).array() * right_.array()).rowwise().sum();
  check_finite_measurements(b, "apply");
  return b;
}

Vector RankOneOperator::apply_factored(const Matrix& left, const Matrix& right) const {
  if (left.rows() != d1() || right.rows() != d2() || left.cols() != right.cols()) {
    throw DimensionError("apply_factored: factor shapes do not match the operator");
  }
  Vector b = scale_ * ((left_ * left).array() * (right_ * right).array()).rowwise().sum();
  check_finite_measurements(b, "apply_factored");
  return b;
}

Matrix RankOneOperator::adjoint(const Vector& r) const {
  if (r.size() != rows()) throw DimensionError("adjoint: vector length differs from m");
  return scale_ * (left_.transpose() * (r.asDiagonal() * right_));
}

std::unique_ptr<FactorMap> RankOneOperator::right_map(const Matrix& u) const {
  if (u.rows() != d1()) throw DimensionError("right_map: U must have d1 rows");
  return std::make_unique<RankOneFactorMap>(scale_ * (left_ * u), right_);
}

std::unique_ptr<FactorMap> RankOneOperator::left_map(const Matrix& v) const {
  if (v.rows() != d2()) throw DimensionError("left_map: V must have d2 rows");
  return std::make_unique<RankOneFactorMap>(scale_ * (right_ * v), left_);
}

std::shared_ptr<const MeasurementOperator> RankOneOperator::slice(Index offset,
                                                                  Index count) const {
  if (offset < 0 || count < 1 || offset + count > rows()) {
    throw IndexError("slice: range outside the ensemble");
  }
  std::optional<IndexMap> sub;
  if (index_map_) {
    sub = IndexMap{{index_map_->pairs.begin() + offset,
                    index_map_->pairs.begin() + offset + count},
                   index_map_->n1,
                   index_map_->n2};
  }
  return std::make_shared<RankOneOperator>(left_.middleRows(offset, count),
                                           right_.middleRows(offset, count), scale_,
                                           family_, std::move(sub));
}

std::size_t RankOneOperator::stored_numbers() const {
  return static_cast<std::size_t>(left_.size() + right_.size());
}

RankOneOperator RankOneOperator::transposed() const {
  std::optional<IndexMap> swapped;
  if (index_map_) {
    swapped = IndexMap{{}, index_map_->n2, index_map_->n1};
    swapped->pairs.reserve(index_map_->pairs.size());
    for (const IndexPair& p : index_map_->pairs) swapped->pairs.push_back({p.col, p.row});
  }
  return RankOneOperator(right_, left_, scale_, family_, std::move(swapped));
}

// ---------------------------------------------------------------------------

namespace {

class DenseRightMap final : public FactorMap {
 public:
  DenseRightMap(const DenseOperator& op, Matrix u) : op_(op), u_(std::move(u)) {}

  Index rows() const override { return op_.rows(); }
  Index free_rows() const override { return op_.d2(); }
  Index rank() const override { return u_.cols(); }

  Vector forward(const Matrix& free) const override {
    require_shape(free, free_rows(), rank(), "dense right map");
    return op_.apply(u_ * free.transpose());
  }

  Matrix adjoint(const Vector& residual) const override {
    return op_.adjoint(residual).transpose() * u_;
  }

  Matrix design() const override {
    const Index m = rows(), d2 = op_.d2(), d1 = op_.d1(), k = rank();
    // All A_i^T U at once: the stacked [A_1 ... A_m] is d1 x (m d2).
    Eigen::Map<const Matrix> stacked(op_.matrix(0).data(), d1, m * d2);
    const Matrix products = stacked.transpose() * u_;
    Matrix out(m, d2 * k);
    for (Index i = 0; i < m; ++i)
      for (Index a = 0; a < k; ++a)
        out.row(i).segment(a * d2, d2) = products.col(a).segment(i * d2, d2).transpose();
    return out;
  }

 private:
  const DenseOperator& op_;
  Matrix u_;
};

class DenseLeftMap final : public FactorMap {
 public:
  DenseLeftMap(const DenseOperator& op, Matrix v) : op_(op), v_(std::move(v)) {}

  Index rows() const override { return op_.rows(); }
  Index free_rows() const override { return op_.d1(); }
  Index rank() const override { return v_.cols(); }

  Vector forward(const Matrix& free) const override {
    require_shape(free, free_rows(), rank(), "dense left map");
    return op_.apply(free * v_.transpose());
  }

  Matrix adjoint(const Vector& residual) const override {
    return op_.adjoint(residual) * v_;
  }

  Matrix design() const override {
    const Index m = rows(), d1 = op_.d1(), k = rank();
    Matrix out(m, d1 * k);
    Matrix product(d1, k);
    for (Index i = 0; i < m; ++i) {
      product.noalias() = op_.matrix(i) * v_;
      out.row(i) = Eigen::Map<const Eigen::RowVectorXd>(product.data(), d1 * k);
    }
    return out;
  }

 private:
  const DenseOperator& op_;
  Matrix v_;
};

}  // namespace

DenseOperator::DenseOperator(Index d1, Index d2, Matrix vectorized, double entry_stddev)
    : d1_(d1), d2_(d2), vectorized_(std::move(vectorized)), entry_stddev_(entry_stddev) {
  if (d1_ < 1 || d2_ < 1) throw ValidationError("dense operator: dimensions must be >= 1");
  if (vectorized_.cols() < 1) throw ValidationError("dense operator needs m >= 1 measurements");
  if (vectorized_.rows() != d1_ * d2_) {
    throw DimensionError("dense operator: every matrix must be d1 x d2");
  }
  if (!vectorized_.allFinite()) throw NumericError("dense operator: non-finite entry");
  if (!(entry_stddev_ > 0.0)) throw ValidationError("dense operator: entry_stddev must be positive");
}

Eigen::Map<const Matrix> DenseOperator::matrix(Index i) const {
  return Eigen::Map<const Matrix>(vectorized_.col(i).data(), d1_, d2_);
}

Vector DenseOperator::apply(const Matrix& w) const {
  require_shape(w, d1_, d2_, "apply_dense");
  Vector b = vectorized_.transpose() * Eigen::Map<const Vector>(w.data(), w.size());
  check_finite_measurements(b, "apply_dense");
  return b;
}

Vector DenseOperator::apply_factored(const Matrix& left, const Matrix& right) const {
  return apply(left * right.transpose());
}

Matrix DenseOperator::adjoint(const Vector& r) const {
  if (r.size() != rows()) throw DimensionError("adjoint: vector length differs from m");
  const Vector flat = vectorized_ * r;
  return Eigen::Map<const Matrix>(flat.data(), d1_, d2_);
}

std::unique_ptr<FactorMap> DenseOperator::right_map(const Matrix& u) const {
  if (u.rows() != d1_) throw DimensionError("right_map: U must have d1 rows");
  return std::make_unique<DenseRightMap>(*this, u);
}

std::unique_ptr<FactorMap> DenseOperator::left_map(const Matrix& v) const {
  if (v.rows() != d2_) throw DimensionError("left_map: V must have d2 rows");
  return std::make_unique<DenseLeftMap>(*this, v);
}

std::shared_ptr<const MeasurementOperator> DenseOperator::slice(Index offset,
                                                                Index count) const {
  if (offset < 0 || count < 1 || offset + count > rows()) {
    throw IndexError("slice: range outside the ensemble");
  }
  return std::make_shared<DenseOperator>(d1_, d2_, vectorized_.middleCols(offset, count),
                                         entry_stddev_);
}

std::size_t DenseOperator::stored_numbers() const {
  return static_cast<std::size_t>(vectorized_.size());
}

// ---------------------------------------------------------------------------

MeasurementSet::MeasurementSet(std::shared_ptr<const MeasurementOperator> op_in, Vector b_in)
    : op(std::move(op_in)), b(std::move(b_in)) {
  if (!op) throw ValidationError("measurement set without an operator");
  if (b.size() != op->rows()) {
    throw DimensionError("measurement set: b has length " + std::to_string(b.size()) +
                         " but the operator has " + std::to_string(op->rows()) + " rows");
  }
  check_finite_measurements(b, "measurement set");
}

const RankOneOperator* MeasurementSet::rank_one() const {
  return dynamic_cast<const RankOneOperator*>(op.get());
}

Vector apply_dense(const DenseOperator& op, const Matrix& w) { return op.apply(w); }

Matrix adjoint_weighted_sum(const MeasurementOperator& op, const Vector& b) {
  if (b.size() != op.rows()) {
    throw DimensionError("adjoint_weighted_sum: b has length " + std::to_string(b.size()) +
                         ", expected " + std::to_string(op.rows()));
  }
  return op.adjoint(b) / static_cast<double>(op.rows());
}

RankOneOperator make_gaussian_operator(Index d1, Index d2, Index m, std::uint64_t seed) {
  if (d1 < 1 || d2 < 1 || m < 1) {
    throw ValidationError("make_gaussian_operator: d1, d2, m must be >= 1");
  }
  Rng rng(seed);
  Matrix left(m, d1), right(m, d2);
  for (Index i = 0; i < m; ++i) {
    for (Index c = 0; c < d1; ++c) left(i, c) = rng.normal();
    for (Index c = 0; c < d2; ++c) right(i, c) = rng.normal();
  }
  return RankOneOperator(std::move(left), std::move(right), 1.0, Family::gaussian);
}

namespace {

void check_omega(const std::vector<IndexPair>& omega, Index n1, Index n2, const char* ctx) {
  if (omega.empty()) throw ValidationError(std::string(ctx) + ": empty observation set");
  for (const IndexPair& p : omega) {
    if (p.row < 0 || p.row >= n1 || p.col < 0 || p.col >= n2) {
      throw IndexError(std::string(ctx) + ": index (" + std::to_string(p.row) + "," +
                       std::to_string(p.col) + ") outside [" + std::to_string(n1) + "]x[" +
                       std::to_string(n2) + "]");
    }
  }
}

}  // namespace

RankOneOperator make_imc_operator(const Matrix& x, const Matrix& y,
                                  std::vector<IndexPair> omega) {
  const Index n1 = x.cols(), n2 = y.cols();
  check_omega(omega, n1, n2, "make_imc_operator");
  if (!x.allFinite() || !y.allFinite()) throw NumericError("make_imc_operator: non-finite features");
  const auto m = static_cast<Index>(omega.size());
  Matrix left(m, x.rows()), right(m, y.rows());
  for (Index t = 0; t < m; ++t) {
    left.row(t) = x.col(omega[t].row).transpose();
    right.row(t) = y.col(omega[t].col).transpose();
  }
  const double scale = std::sqrt(static_cast<double>(n1) * static_cast<double>(n2));
  return RankOneOperator(std::move(left), std::move(right), scale, Family::inductive,
                         IndexMap{std::move(omega), n1, n2});
}

RankOneOperator make_multilabel_operator(const Matrix& x, Index labels,
                                         std::vector<IndexPair> omega) {
  const Index n1 = x.cols();
  if (labels < 1) throw ValidationError("make_multilabel_operator: need at least one label");
  check_omega(omega, n1, labels, "make_multilabel_operator");
  if (!x.allFinite()) throw NumericError("make_multilabel_operator: non-finite features");
  const auto m = static_cast<Index>(omega.size());
  Matrix left(m, x.rows());
  Matrix right = Matrix::Zero(m, labels);
  for (Index t = 0; t < m; ++t) {
    left.row(t) = x.col(omega[t].row).transpose();
    right(t, omega[t].col) = 1.0;
  }
  const double scale = std::sqrt(static_cast<double>(n1) * static_cast<double>(labels));
  return RankOneOperator(std::move(left), std::move(right), scale, Family::multilabel,
                         IndexMap{std::move(omega), n1, labels});
}

DenseOperator make_dense_gaussian_operator(Index d1, Index d2, Index m, std::uint64_t seed) {
  if (d1 < 1 || d2 < 1 || m < 1) {
    throw ValidationError("make_dense_gaussian_operator: d1, d2, m must be >= 1");
  }
  const double stddev = 1.0 / std::sqrt(static_cast<double>(m));
  Rng rng(seed);
  Matrix vectorized(d1 * d2, m);
  for (Index i = 0; i < m; ++i)
    for (Index e = 0; e < d1 * d2; ++e) vectorized(e, i) = stddev * rng.normal();
  return DenseOperator(d1, d2, std::move(vectorized), stddev);
}

}  // namespace lrrom
