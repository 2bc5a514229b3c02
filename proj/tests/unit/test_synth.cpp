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


#include "lrrom/rng.hpp"
#include "lrrom/synth.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

namespace lrrom {
namespace {

using testing::Gen;

// Tight coherence computed from a full SVD of X.
double svd_coherence(const Matrix& x) {
  Eigen::JacobiSVD<Matrix> svd(x.transpose(), Eigen::ComputeThinU);
  const Matrix& u = svd.matrixU();
  double best = 0.0;
  for (Index i = 0; i < u.rows(); ++i) best = std::max(best, u.row(i).norm());
  return best * std::sqrt(static_cast<double>(x.cols()) / static_cast<double>(x.rows()));
}

TEST(DefaultSpectrum, LinearFromBetaToOne) {
  const Vector s = default_spectrum(3, 3.0);
  EXPECT_DOUBLE_EQ(s(0), 3.0);
  EXPECT_DOUBLE_EQ(s(1), 2.0);
  EXPECT_DOUBLE_EQ(s(2), 1.0);
  EXPECT_DOUBLE_EQ(default_spectrum(1, 4.0)(0), 4.0);
  EXPECT_THROW(default_spectrum(2, 0.5), ValidationError);
}

TEST(RandomLowRank, RankOneNorms) {
  Vector s(1);
  s << 5.0;
  const PlantedTruth t = random_low_rank(6, 4, 1, s, 1);
  EXPECT_EQ(t.rank(), 1);
  EXPECT_NEAR(testing::svd_norm(t.w), 5.0, 1e-12);
  EXPECT_NEAR(t.w.norm(), 5.0, 1e-12);
  Eigen::JacobiSVD<Matrix> svd(t.w);
  EXPECT_LE(svd.singularValues()(1), 1e-12);
}

TEST(RandomLowRank, BetaAndSpectrumExact) {
  Vector s(3);
  s << 3, 2, 1;
  const PlantedTruth t = random_low_rank(10, 8, 3, s, 2);
  EXPECT_DOUBLE_EQ(t.beta, 3.0);
  Eigen::JacobiSVD<Matrix> svd(t.w);
  EXPECT_LE((svd.singularValues().head(3) - s).norm(), 1e-10);
  EXPECT_LE((t.u * s.asDiagonal() * t.v.transpose() - t.w).norm(), 1e-10);
  EXPECT_LE((t.u.transpose() * t.u - Matrix::Identity(3, 3)).norm(), 1e-12);
  EXPECT_LE((t.v.transpose() * t.v - Matrix::Identity(3, 3)).norm(), 1e-12);
}

TEST(RandomLowRank, InvalidSpectrum) {
  Vector inc(2);
  inc << 1, 2;
  EXPECT_THROW(random_low_rank(4, 4, 2, inc, 1), ValidationError);
  Vector neg(2);
  neg << 1, -1;
  EXPECT_THROW(random_low_rank(4, 4, 2, neg, 1), ValidationError);
  EXPECT_THROW(random_low_rank(4, 4, 3, inc, 1), ValidationError);
  EXPECT_THROW(random_low_rank(2, 4, 3, default_spectrum(3, 2.0), 1), RankError);
}

TEST(RandomLowRank, BitExactRegeneration) {
  const PlantedTruth a = random_low_rank(7, 5, 2, default_spectrum(2, 2.0), 99);
  const PlantedTruth b = random_low_rank(7, 5, 2, default_spectrum(2, 2.0), 99);
  EXPECT_EQ(a.w, b.w);
  EXPECT_EQ(a.u, b.u);
}

TEST(Coherence, ConstructedCases) {
  const Index d = 3, n = 12;
  Matrix spike = Matrix::Zero(d, n);
  spike.leftCols(d) = Matrix::Identity(d, d);
  EXPECT_NEAR(coherence(spike), std::sqrt(static_cast<double>(n) / d), 1e-12);

  // Rows of a normalized 4 x 4 Hadamard matrix: every column has norm sqrt(d/n).
  Matrix h(4, 4);
  h << 1, 1, 1, 1, 1, -1, 1, -1, 1, 1, -1, -1, 1, -1, -1, 1;
  const Matrix x = h.topRows(2) / 2.0;
  EXPECT_NEAR(coherence(x), 1.0, 1e-12);
}

TEST(Coherence, MatchesSvdOracle) {
  Gen g(3);
  for (int rep = 0; rep < 20; ++rep) {
    const Index d = g.integer(1, 6), n = g.integer(d, 20);
    const Matrix x = g.matrix(d, n);
    EXPECT_NEAR(coherence(x), svd_coherence(x), 1e-10);
  }
}

TEST(IncoherentFeatures, BoundsAndOrthonormalRows) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const FeatureMatrix f = incoherent_features(10, 100, s);
    EXPECT_GE(f.coherence, 1.0);
    EXPECT_LE(f.coherence, 2.5);
    EXPECT_LE(f.coherence, std::sqrt(10.0));
    EXPECT_LE((f.x * f.x.transpose() - Matrix::Identity(10, 10)).norm(), 1e-12);
  }
  EXPECT_THROW(incoherent_features(5, 4, 1), DimensionError);
}

TEST(SampleOmega, FullSampleIsEveryPairOnce) {
  const auto omega = sample_omega(4, 5, 20, 1);
  std::set<IndexPair> s(omega.begin(), omega.end());
  EXPECT_EQ(s.size(), 20u);
  EXPECT_TRUE(std::is_sorted(omega.begin(), omega.end()));
  EXPECT_THROW(sample_omega(4, 5, 21, 1), CapacityError);
  EXPECT_EQ(sample_omega(4, 5, 21, 1, true).size(), 21u);
}

TEST(SampleOmega, DeterministicAndDistinct) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto a = sample_omega(30, 17, 200, s);
    EXPECT_EQ(a, sample_omega(30, 17, 200, s));
    std::set<IndexPair> uniq(a.begin(), a.end());
    EXPECT_EQ(uniq.size(), a.size());
    for (const auto& p : a) {
      EXPECT_GE(p.row, 0);
      EXPECT_LT(p.row, 30);
      EXPECT_LT(p.col, 17);
    }
  }
}

TEST(SampleOmega, MarginalsAreUniform) {
  const Index n = 20, m = 200;
  const int reps = 10000;
  std::vector<int> counts(n * n, 0);
  for (int r = 0; r < reps; ++r) {
    for (const auto& p : sample_omega(n, n, m, static_cast<std::uint64_t>(r) + 1)) ++counts[p.row * n + p.col];
  }
  const double p = static_cast<double>(m) / (n * n);
  const double mean = reps * p;
  const double se = std::sqrt(reps * p * (1.0 - p));
  for (int c : counts) EXPECT_LE(std::abs(c - mean), 5.0 * se);
}

TEST(ReduceFeatures, RoundTrip) {
  Gen g(4);
  const Matrix x = g.matrix(3, 9), y = g.matrix(2, 7);
  const FeatureReduction fx = reduce_features(x), fy = reduce_features(y);
  EXPECT_LE((fx.orthonormal * fx.orthonormal.transpose() - Matrix::Identity(3, 3)).norm(), 1e-12);
  EXPECT_LE((fx.v * fx.sigma.asDiagonal() * fx.orthonormal - x).norm(), 1e-10);
  const Matrix w = g.matrix(3, 2);
  EXPECT_LE(testing::rel_diff(restore_target(reduce_target(w, fx, fy), fx, fy), w), 1e-10);
  // X^T W Y equals U_X^T-side bilinear form of the reduced target.
  const Matrix lhs = x.transpose() * w * y;
  const Matrix rhs = fx.orthonormal.transpose() * reduce_target(w, fx, fy) * fy.orthonormal;
  EXPECT_LE(testing::rel_diff(rhs, lhs), 1e-10);
  EXPECT_THROW(reduce_features(Matrix::Ones(2, 5)), RankError);
}

TEST(MakeInstance, GaussianFamily) {
  const ProblemInstance inst = make_instance(Family::gaussian, {6, 5, 0, 0}, 2, default_spectrum(2, 2.0), 40, 7);
  EXPECT_FALSE(inst.op->index_map().has_value());
  EXPECT_EQ(inst.op->scale(), 1.0);
  EXPECT_EQ(inst.b, inst.op->apply(inst.truth.w));
  EXPECT_EQ(inst.seeds.master, 7u);
  EXPECT_EQ(inst.seeds.truth, derive_seed(7, {stream::truth}));
}

TEST(MakeInstance, InductiveIdentityFeaturesReadEntries) {
  // n1 = d1, n2 = d2: orthonormal features are orthogonal matrices, so use
  // the generic path and compare with X^T W* Y directly.
  const ProblemInstance inst =
      make_instance(Family::inductive, {4, 3, 10, 8}, 2, default_spectrum(2, 2.0), 30, 8);
  ASSERT_TRUE(inst.features_left && inst.features_right);
  const Matrix r = inst.features_left->transpose() * inst.truth.w * *inst.features_right;
  const Vector scaled = inst.b / inst.op->scale();
  const auto& pairs = inst.op->index_map()->pairs;
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    EXPECT_NEAR(scaled(static_cast<Index>(t)), r(pairs[t].row, pairs[t].col), 1e-12);
  }
  EXPECT_GE(*inst.coherence_left, 1.0);
}

TEST(MakeInstance, MultilabelFullObservationMatchesLabels) {
  const ProblemInstance inst =
      make_instance(Family::multilabel, {3, 2, 4, 0}, 1, default_spectrum(1, 1.0), 8, 9);
  ASSERT_TRUE(inst.labels.has_value());
  const Vector scaled = inst.b / inst.op->scale();
  const auto& pairs = inst.op->index_map()->pairs;
  ASSERT_EQ(pairs.size(), 8u);
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    EXPECT_NEAR(scaled(static_cast<Index>(t)), (*inst.labels)(pairs[t].row, pairs[t].col), 1e-12);
  }
  EXPECT_LE((*inst.labels - inst.features_left->transpose() * inst.truth.w).norm(), 1e-12);
}

TEST(MakeInstance, Deterministic) {
  const auto a = make_instance(Family::inductive, {4, 3, 10, 8}, 2, default_spectrum(2, 2.0), 30, 10);
  const auto b = make_instance(Family::inductive, {4, 3, 10, 8}, 2, default_spectrum(2, 2.0), 30, 10);
  EXPECT_EQ(a.b, b.b);
  EXPECT_EQ(a.op->left_factors(), b.op->left_factors());
  EXPECT_THROW(make_instance(Family::inductive, {4, 3, 3, 8}, 2, default_spectrum(2, 2.0), 10, 1),
               DimensionError);
}

TEST(PlantedFromMatrix, RecoversFactors) {
  const PlantedTruth t = random_low_rank(6, 6, 2, default_spectrum(2, 3.0), 11);
  const PlantedTruth p = planted_from_matrix(t.w, 2);
  EXPECT_LE((p.spectrum - t.spectrum).norm(), 1e-10);
  EXPECT_NEAR(p.beta, 3.0, 1e-10);
  EXPECT_THROW(planted_from_matrix(t.w, 3), RankError);
}

TEST(ReducedInstance, RestoreMapsBack) {
  Gen g(12);
  const Matrix x = g.matrix(3, 15);
  const ReducedInstance ri = make_reduced_imc_instance(x, std::nullopt, {3, 2, 15, 10}, 1,
                                                       default_spectrum(1, 1.0), 60, 13);
  ASSERT_TRUE(ri.left.has_value());
  EXPECT_FALSE(ri.right.has_value());
  EXPECT_LE(testing::rel_diff(ri.restore(ri.instance.truth.w), ri.original.w), 1e-10);
  // The operator reproduces X^T W Y on observed entries.
  const Matrix r = x.transpose() * ri.original.w * *ri.instance.features_right;
  const auto& pairs = ri.instance.op->index_map()->pairs;
  const Vector scaled = ri.instance.b / ri.instance.op->scale();
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    EXPECT_NEAR(scaled(static_cast<Index>(t)), r(pairs[t].row, pairs[t].col), 1e-10);
  }
}

}  // namespace
}  // namespace lrrom
