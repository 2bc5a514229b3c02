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
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace lrrom {
namespace {

using testing::Gen;

RankOneOperator random_gaussian(Gen& g, Index d1, Index d2, Index m) {
  return RankOneOperator(g.matrix(m, d1), g.matrix(m, d2), 1.0, Family::gaussian);
}

RankOneOperator random_imc(Gen& g, Index d1, Index d2, Index m) {
  const Index n1 = d1 + 3, n2 = d2 + 2;
  std::vector<IndexPair> omega;
  for (Index t = 0; t < m; ++t) omega.push_back({g.integer(0, n1 - 1), g.integer(0, n2 - 1)});
  return make_imc_operator(g.orthonormal(n1, d1).transpose(), g.orthonormal(n2, d2).transpose(), omega);
}

RankOneOperator random_multilabel(Gen& g, Index d1, Index labels, Index m) {
  const Index n1 = d1 + 4;
  std::vector<IndexPair> omega;
  for (Index t = 0; t < m; ++t) omega.push_back({g.integer(0, n1 - 1), g.integer(0, labels - 1)});
  return make_multilabel_operator(g.orthonormal(n1, d1).transpose(), labels, omega);
}

DenseOperator random_dense(Gen& g, Index d1, Index d2, Index m) {
  return DenseOperator(d1, d2, g.matrix(d1 * d2, m), 1.0);
}

TEST(ApplyDense, ZeroMatrixGivesZero) {
  Gen g(1);
  const DenseOperator op = random_dense(g, 3, 4, 5);
  EXPECT_EQ(apply_dense(op, Matrix::Zero(3, 4)), Vector::Zero(5));
}

TEST(ApplyDense, ElementaryMatrixReadsOneEntry) {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 1) = 1.0;  // e1 e2^T
  const DenseOperator op(2, 2, Eigen::Map<const Vector>(a.data(), 4), 1.0);
  Matrix w(2, 2);
  w << 1.5, -2.25, 3.0, 4.0;
  const Vector b = apply_dense(op, w);
  ASSERT_EQ(b.size(), 1);
  EXPECT_EQ(b(0), -2.25);
}

TEST(ApplyDense, IdentityTrace) {
  const Matrix a = Matrix::Identity(2, 2);
  const DenseOperator op(2, 2, Eigen::Map<const Vector>(a.data(), 4), 1.0);
  Matrix w(2, 2);
  w << 2, 0, 0, 3;
  EXPECT_DOUBLE_EQ(apply_dense(op, w)(0), 5.0);
}

TEST(ApplyDense, ShapeMismatchIsDimensionError) {
  Gen g(2);
  const DenseOperator op = random_dense(g, 3, 4, 5);
  EXPECT_THROW(apply_dense(op, Matrix::Zero(4, 3)), DimensionError);
}

TEST(RankOneApply, MatchesExplicitTraceOracle) {
  Gen g(3);
  for (int rep = 0; rep < 20; ++rep) {
    const Index d1 = g.integer(1, 6), d2 = g.integer(1, 6), m = g.integer(1, 30);
    const RankOneOperator op = random_gaussian(g, d1, d2, m);
    const Matrix w = g.matrix(d1, d2);
    EXPECT_LT((op.apply(w) - testing::naive_apply(testing::explicit_matrices(op), w)).norm(),
              1e-12 * (1.0 + w.norm() * std::sqrt(static_cast<double>(m)) * 10));
  }
}

TEST(RankOneApply, FactoredMatchesDense) {
  Gen g(4);
  const RankOneOperator op = random_gaussian(g, 7, 5, 40);
  const Matrix l = g.matrix(7, 2), r = g.matrix(5, 2);
  EXPECT_LT(testing::rel_diff(op.apply_factored(l, r), op.apply(l * r.transpose())), 1e-12);
}

TEST(RankOneApply, ShapeMismatchIsDimensionError) {
  Gen g(5);
  const RankOneOperator op = random_gaussian(g, 3, 4, 5);
  EXPECT_THROW(op.apply(Matrix::Zero(4, 3)), DimensionError);
  EXPECT_THROW(adjoint_weighted_sum(op, Vector::Zero(4)), DimensionError);
}

TEST(AdjointWeightedSum, ZeroVectorGivesZero) {
  Gen g(6);
  const RankOneOperator op = random_gaussian(g, 3, 4, 5);
  EXPECT_EQ(adjoint_weighted_sum(op, Vector::Zero(5)), Matrix::Zero(3, 4));
}

TEST(AdjointWeightedSum, SingleOuterProduct) {
  Matrix x = Matrix::Zero(1, 3), y = Matrix::Zero(1, 2);
  x(0, 0) = 1.0;
  y(0, 0) = 1.0;
  const RankOneOperator op(x, y, 1.0, Family::custom);
  Matrix expected = Matrix::Zero(3, 2);
  expected(0, 0) = 1.0;
  EXPECT_EQ(adjoint_weighted_sum(op, Vector::Ones(1)), expected);
}

TEST(AdjointWeightedSum, MatchesExplicitSum) {
  Gen g(7);
  const RankOneOperator op = random_imc(g, 3, 4, 25);
  const Vector b = g.vector(25);
  const auto a = testing::explicit_matrices(op);
  Matrix s = Matrix::Zero(3, 4);
  for (Index i = 0; i < 25; ++i) s += b(i) * a[static_cast<std::size_t>(i)];
  s /= 25.0;
  EXPECT_LT(testing::rel_diff(adjoint_weighted_sum(op, b), s), 1e-12);
}

TEST(AdjointWeightedSum, GaussianMonteCarloApproximatesTruth) {
  Gen g(8);
  const Matrix u = g.orthonormal(5, 1), v = g.orthonormal(5, 1);
  const Matrix wstar = 2.0 * u * v.transpose();
  const RankOneOperator op = make_gaussian_operator(5, 5, 100000, 99);
  const Matrix s = adjoint_weighted_sum(op, op.apply(wstar));
  EXPECT_LE(testing::svd_norm(s - wstar) / testing::svd_norm(wstar), 0.15);
}

// Property: linearity and adjoint consistency for every operator family.
void check_algebra(const MeasurementOperator& op, Gen& g) {
  const Matrix w1 = g.matrix(op.d1(), op.d2()), w2 = g.matrix(op.d1(), op.d2());
  const double alpha = g.uniform(-3.0, 3.0);
  const Vector lhs = op.apply(alpha * w1 + w2);
  const Vector rhs = alpha * op.apply(w1) + op.apply(w2);
  EXPECT_LE((lhs - rhs).norm(), 1e-12 * std::max(1.0, rhs.norm()));

  const Vector b = g.vector(op.rows());
  const double m = static_cast<double>(op.rows());
  const double left = op.apply(w1).dot(b);
  const double right = m * frobenius_inner(w1, adjoint_weighted_sum(op, b));
  EXPECT_LE(std::abs(left - right), 1e-10 * std::max(1.0, std::abs(left)));
  EXPECT_LE(std::abs(left - frobenius_inner(w1, op.adjoint(b))), 1e-10 * std::max(1.0, std::abs(left)));
}

TEST(OperatorAlgebra, LinearityAndAdjointAllFamilies) {
  Gen g(9);
  for (int rep = 0; rep < 25; ++rep) {
    const Index d1 = g.integer(1, 7), d2 = g.integer(1, 7), m = g.integer(1, 40);
    check_algebra(random_gaussian(g, d1, d2, m), g);
    check_algebra(random_imc(g, d1, d2, m), g);
    check_algebra(random_multilabel(g, d1, d2, m), g);
    check_algebra(random_dense(g, d1, d2, m), g);
  }
}

TEST(OperatorAlgebra, DenseMatchesExplicitTraces) {
  Gen g(10);
  const DenseOperator op = random_dense(g, 3, 5, 12);
  const Matrix w = g.matrix(3, 5);
  std::vector<Matrix> a;
  for (Index i = 0; i < 12; ++i) a.push_back(op.matrix(i));
  EXPECT_LT(testing::rel_diff(op.apply(w), testing::naive_apply(a, w)), 1e-12);
}

// Property: both factor maps agree with the operator, their adjoints are
// consistent, and design() columns are forward images of unit vectors.
void check_maps(const MeasurementOperator& op, Gen& g, Index k) {
  const Matrix u = g.matrix(op.d1(), k), v = g.matrix(op.d2(), k);
  const auto right = op.right_map(u);
  const auto left = op.left_map(v);
  const Matrix fr = g.matrix(op.d2(), k), fl = g.matrix(op.d1(), k);
  EXPECT_LT(testing::rel_diff(right->forward(fr), op.apply(u * fr.transpose())), 1e-11);
  EXPECT_LT(testing::rel_diff(left->forward(fl), op.apply(fl * v.transpose())), 1e-11);

  const Vector r = g.vector(op.rows());
  EXPECT_NEAR(right->forward(fr).dot(r), frobenius_inner(fr, right->adjoint(r)),
              1e-10 * (1.0 + std::abs(right->forward(fr).dot(r))));
  EXPECT_NEAR(left->forward(fl).dot(r), frobenius_inner(fl, left->adjoint(r)),
              1e-10 * (1.0 + std::abs(left->forward(fl).dot(r))));

  for (const FactorMap* map : {right.get(), left.get()}) {
    const Matrix design = map->design();
    ASSERT_EQ(design.rows(), op.rows());
    ASSERT_EQ(design.cols(), map->unknowns());
    for (Index a = 0; a < map->rank(); ++a) {
      for (Index c = 0; c < map->free_rows(); ++c) {
        Matrix e = Matrix::Zero(map->free_rows(), map->rank());
        e(c, a) = 1.0;
        EXPECT_LT((design.col(a * map->free_rows() + c) - map->forward(e)).norm(),
                  1e-11 * (1.0 + design.col(a * map->free_rows() + c).norm()));
      }
    }
  }
}

TEST(FactorMaps, ConsistentWithOperator) {
  Gen g(11);
  for (int rep = 0; rep < 10; ++rep) {
    const Index d1 = g.integer(1, 5), d2 = g.integer(1, 5), m = g.integer(1, 30);
    const Index k = g.integer(1, 3);
    check_maps(random_gaussian(g, d1, d2, m), g, k);
    check_maps(random_imc(g, d1, d2, m), g, k);
    check_maps(random_dense(g, d1, d2, m), g, k);
  }
}

TEST(Slicing, MatchesSubsetOfMeasurements) {
  Gen g(12);
  const RankOneOperator op = random_imc(g, 3, 3, 20);
  const DenseOperator dense = random_dense(g, 3, 3, 20);
  const Matrix w = g.matrix(3, 3);
  EXPECT_EQ(op.slice(5, 7)->apply(w), op.apply(w).segment(5, 7));
  EXPECT_EQ(dense.slice(5, 7)->apply(w), dense.apply(w).segment(5, 7));
  EXPECT_THROW(op.slice(15, 10), IndexError);
}

TEST(Transposed, SwapsRolesOfFactors) {
  Gen g(13);
  const RankOneOperator op = random_imc(g, 3, 4, 15);
  const RankOneOperator t = op.transposed();
  const Matrix w = g.matrix(3, 4);
  EXPECT_LT(testing::rel_diff(t.apply(w.transpose()), op.apply(w)), 1e-13);
}

TEST(GaussianOperator, DeterministicGivenSeed) {
  const RankOneOperator a = make_gaussian_operator(2, 2, 3, 7);
  const RankOneOperator b = make_gaussian_operator(2, 2, 3, 7);
  EXPECT_EQ(a.left_factors(), b.left_factors());
  EXPECT_EQ(a.right_factors(), b.right_factors());
  EXPECT_EQ(a.scale(), 1.0);
  EXPECT_EQ(a.family(), Family::gaussian);
  EXPECT_FALSE(a.index_map().has_value());
  const RankOneOperator c = make_gaussian_operator(2, 2, 3, 8);
  EXPECT_NE(a.left_factors(), c.left_factors());
}

TEST(GaussianOperator, SmallerEnsembleIsPrefix) {
  const RankOneOperator small = make_gaussian_operator(3, 4, 10, 5);
  const RankOneOperator big = make_gaussian_operator(3, 4, 25, 5);
  EXPECT_EQ(small.left_factors(), big.left_factors().topRows(10));
  EXPECT_EQ(small.right_factors(), big.right_factors().topRows(10));
}

TEST(GaussianOperator, FactorMomentsAtLargeM) {
  const RankOneOperator op = make_gaussian_operator(4, 3, 100000, 21);
  for (const Matrix* f : {&op.left_factors(), &op.right_factors()}) {
    for (Index j = 0; j < f->cols(); ++j) {
      const double mean = f->col(j).mean();
      const double var = (f->col(j).array() - mean).square().mean();
      EXPECT_LE(std::abs(mean), 0.02);
      EXPECT_LE(std::abs(var - 1.0), 0.03);
    }
  }
}

TEST(GaussianOperator, RejectsEmptyDimensions) {
  EXPECT_THROW(make_gaussian_operator(0, 2, 3, 1), ValidationError);
  EXPECT_THROW(make_gaussian_operator(2, 2, 0, 1), ValidationError);
}

TEST(ImcOperator, IdentityFeaturesReduceToScaledCompletion) {
  const Index d1 = 3, d2 = 4;
  const RankOneOperator op =
      make_imc_operator(Matrix::Identity(d1, d1), Matrix::Identity(d2, d2), {{0, 1}});
  Gen g(14);
  const Matrix w = g.matrix(d1, d2);
  EXPECT_NEAR(op.apply(w)(0), std::sqrt(static_cast<double>(d1 * d2)) * w(0, 1), 1e-13);
  EXPECT_EQ(op.family(), Family::inductive);
  ASSERT_TRUE(op.index_map().has_value());
  EXPECT_EQ(op.index_map()->pairs.size(), 1u);
}

TEST(ImcOperator, FullObservationAdjointIsIdentity) {
  Gen g(15);
  const Matrix x = g.orthonormal(5, 3).transpose(), y = g.orthonormal(5, 3).transpose();
  std::vector<IndexPair> omega;
  for (Index i = 0; i < 5; ++i) {
    for (Index j = 0; j < 5; ++j) omega.push_back({i, j});
  }
  const RankOneOperator op = make_imc_operator(x, y, omega);
  const Matrix w = g.matrix(3, 3);
  EXPECT_LT(testing::rel_diff(adjoint_weighted_sum(op, op.apply(w)), w), 1e-12);
}

TEST(ImcOperator, Errors) {
  const Matrix x = Matrix::Identity(2, 2);
  EXPECT_THROW(make_imc_operator(x, x, {}), ValidationError);
  EXPECT_THROW(make_imc_operator(x, x, {{2, 0}}), IndexError);
  EXPECT_THROW(make_imc_operator(x, x, {{0, -1}}), IndexError);
}

TEST(ImcOperator, DuplicatesKept) {
  const Matrix x = Matrix::Identity(2, 2);
  const RankOneOperator op = make_imc_operator(x, x, {{0, 0}, {0, 0}});
  EXPECT_EQ(op.rows(), 2);
}

TEST(MultilabelOperator, CanonicalBasisReadsEntry) {
  const Index n1 = 3, labels = 4;
  const RankOneOperator op = make_multilabel_operator(Matrix::Identity(n1, n1), labels, {{1, 2}});
  Gen g(16);
  const Matrix w = g.matrix(n1, labels);
  EXPECT_NEAR(op.apply(w)(0), std::sqrt(static_cast<double>(n1 * labels)) * w(1, 2), 1e-13);
  EXPECT_EQ(op.family(), Family::multilabel);
}

TEST(MultilabelOperator, RightFactorsAreBasisVectors) {
  Gen g(17);
  const RankOneOperator op = random_multilabel(g, 3, 5, 30);
  for (Index i = 0; i < op.rows(); ++i) {
    int nonzero = 0;
    for (Index j = 0; j < 5; ++j) {
      if (op.right_factors()(i, j) != 0.0) {
        ++nonzero;
        EXPECT_EQ(op.right_factors()(i, j), 1.0);
      }
    }
    EXPECT_EQ(nonzero, 1);
  }
}

TEST(MultilabelOperator, FullObservationRecoversLabels) {
  Gen g(18);
  const Index d1 = 3, n1 = 4, labels = 2;
  const Matrix x = g.orthonormal(n1, d1).transpose();
  std::vector<IndexPair> omega;
  for (Index i = 0; i < n1; ++i) {
    for (Index j = 0; j < labels; ++j) omega.push_back({i, j});
  }
  const RankOneOperator op = make_multilabel_operator(x, labels, omega);
  const Matrix w = g.matrix(d1, labels);
  const Matrix r = x.transpose() * w;
  const Vector b = op.apply(w) / op.scale();
  for (std::size_t t = 0; t < omega.size(); ++t) {
    EXPECT_NEAR(b(static_cast<Index>(t)), r(omega[t].row, omega[t].col), 1e-13);
  }
  EXPECT_THROW(make_multilabel_operator(x, labels, {{0, 2}}), IndexError);
}

TEST(DenseOperator, DeterministicAndCalibrated) {
  const DenseOperator a = make_dense_gaussian_operator(10, 10, 2000, 3);
  const DenseOperator b = make_dense_gaussian_operator(10, 10, 2000, 3);
  Gen g(19);
  const Matrix w = g.matrix(10, 10);
  EXPECT_EQ(a.apply(w), b.apply(w));
  const double ratio = a.apply(w).squaredNorm() / w.squaredNorm();
  EXPECT_GE(ratio, 0.8);
  EXPECT_LE(ratio, 1.2);
  EXPECT_DOUBLE_EQ(a.entry_stddev(), 1.0 / std::sqrt(2000.0));
}

TEST(StorageAccounting, DenseVersusRankOne) {
  const DenseOperator dense = make_dense_gaussian_operator(6, 7, 11, 1);
  const RankOneOperator r1 = make_gaussian_operator(6, 7, 11, 1);
  EXPECT_EQ(dense.stored_numbers(), 11u * 6u * 7u);
  EXPECT_EQ(r1.stored_numbers(), 11u * (6u + 7u));
}

TEST(MeasurementSet, ValidatesLength) {
  auto op = std::make_shared<RankOneOperator>(make_gaussian_operator(2, 2, 3, 1));
  EXPECT_THROW(MeasurementSet(op, Vector::Zero(2)), DimensionError);
  const MeasurementSet ms(op, Vector::Zero(3));
  EXPECT_NE(ms.rank_one(), nullptr);
  auto dense = std::make_shared<DenseOperator>(make_dense_gaussian_operator(2, 2, 3, 1));
  EXPECT_EQ(MeasurementSet(dense, Vector::Zero(3)).rank_one(), nullptr);
}

TEST(RankOneOperator, RejectsInvalidConstruction) {
  EXPECT_THROW(RankOneOperator(Matrix::Zero(3, 2), Matrix::Zero(2, 2), 1.0, Family::custom), DimensionError);
  EXPECT_THROW(RankOneOperator(Matrix::Zero(3, 2), Matrix::Zero(3, 2), 0.0, Family::custom), ValidationError);
  Matrix bad = Matrix::Zero(3, 2);
  bad(0, 0) = std::nan("");
  EXPECT_THROW(RankOneOperator(bad, Matrix::Zero(3, 2), 1.0, Family::custom), NumericError);
}

TEST(Families, StringRoundTrip) {
  for (Family f : {Family::gaussian, Family::inductive, Family::multilabel, Family::custom}) {
    EXPECT_EQ(family_from_string(to_string(f)), f);
  }
  EXPECT_THROW(family_from_string("poisson"), ValidationError);
}

}  // namespace
}  // namespace lrrom
