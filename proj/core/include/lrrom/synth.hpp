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

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace lrrom {

/// W* = U* diag(spectrum) V*^T with orthonormal U*, V*.
struct PlantedTruth {
  Matrix w;
  Matrix u;
  Vector spectrum;
  Matrix v;
  double beta = 1.0;

  Index rank() const { return spectrum.size(); }
};

/// Spectrum decreasing linearly from beta to 1 (k = 1 gives {beta}).
Vector default_spectrum(Index k, double beta);

/// U*, V* from the sign-fixed QR of seeded Gaussian d1 x k and d2 x k
/// matrices; the spectrum is used exactly, so beta is exact.
PlantedTruth random_low_rank(Index d1, Index d2, Index k, const Vector& spectrum,
                             std::uint64_t seed);

/// d x n feature matrix with orthonormal rows and its measured coherence.
struct FeatureMatrix {
  Matrix x;
  double coherence = 1.0;
};

/// Rows of a seeded d x n Gaussian matrix, orthonormalized.
FeatureMatrix incoherent_features(Index d, Index n, std::uint64_t seed);

/// Tight incoherence constant: max_i |row_i(U_X)|_2 sqrt(n / d), where U_X
/// is the n x d orthonormal factor of X^T. Lies in [1, sqrt(n/d)].
double coherence(const Matrix& x);

/// m index pairs of [n1] x [n2], uniform, sorted lexicographically.
/// Without replacement this is a seeded partial Fisher-Yates shuffle of the
/// flattened index space.
std::vector<IndexPair> sample_omega(Index n1, Index n2, Index m, std::uint64_t seed,
                                    bool with_replacement = false);

/// X^T = U_X Sigma_X V_X^T. `orthonormal` is U_X^T (d x n, orthonormal rows).
struct FeatureReduction {
  Matrix orthonormal;
  Vector sigma;
  Matrix v;
};

/// Thin SVD of X^T with sign-canonicalized V_X. Throws RankError when X is
/// not of full row rank.
FeatureReduction reduce_features(const Matrix& x);

/// Target in reduced coordinates: Sigma_X V_X^T W V_Y Sigma_Y.
Matrix reduce_target(const Matrix& w, const FeatureReduction& left,
                     const FeatureReduction& right);
/// Inverse map: V_X Sigma_X^{-1} W Sigma_Y^{-1} V_Y^T.
Matrix restore_target(const Matrix& w_reduced, const FeatureReduction& left,
                      const FeatureReduction& right);

/// Dimensions of an instance. gaussian: d1, d2. inductive: d1, d2, n1, n2.
/// multilabel: d1, d2 = L (labels), n1 points; n2 is ignored.
struct InstanceDims {
  Index d1 = 0;
  Index d2 = 0;
  Index n1 = 0;
  Index n2 = 0;
};

struct InstanceSeeds {
  std::uint64_t master = 0;
  std::uint64_t truth = 0;
  std::uint64_t features_left = 0;
  std::uint64_t features_right = 0;
  std::uint64_t omega = 0;
  std::uint64_t operator_factors = 0;
};

struct ProblemInstance {
  Family family = Family::gaussian;
  InstanceDims dims;
  Index k = 1;
  PlantedTruth truth;
  std::shared_ptr<const RankOneOperator> op;
  Vector b;
  InstanceSeeds seeds;
  bool with_replacement = false;

  /// inductive: X (d1 x n1), Y (d2 x n2). multilabel: X only.
  std::optional<Matrix> features_left;
  std::optional<Matrix> features_right;
  std::optional<double> coherence_left;
  std::optional<double> coherence_right;
  /// multilabel: R = X^T W* (n1 x L).
  std::optional<Matrix> labels;
  /// Target the operator measures. Equals truth.w unless the instance was
  /// built from reduced (non-orthonormal) features.
  Matrix effective_target;

  MeasurementSet measurements() const { return MeasurementSet(op, b); }
};

/// Builds truth, features, observation set and operator, and measures
/// b = A(W*). Each piece draws from its own sub-stream of `seed`.
ProblemInstance make_instance(Family family, const InstanceDims& dims, Index k,
                              const Vector& spectrum, Index m, std::uint64_t seed,
                              bool with_replacement = false);

/// Inductive instance over user-supplied feature matrices. A supplied X
/// (d1 x n1, any full-row-rank matrix) is replaced by U_X^T from its
/// reduction; a missing side is generated orthonormal. W* is planted in the
/// original coordinates and the operator measures the reduced target
/// Sigma_X V_X^T W* V_Y Sigma_Y, which the instance's truth describes.
struct ReducedInstance {
  ProblemInstance instance;
  PlantedTruth original;
  std::optional<FeatureReduction> left;
  std::optional<FeatureReduction> right;

  /// Maps a recovered reduced-coordinate W back to original coordinates.
  Matrix restore(const Matrix& w_reduced) const;
};

ReducedInstance make_reduced_imc_instance(const std::optional<Matrix>& x,
                                          const std::optional<Matrix>& y,
                                          const InstanceDims& dims, Index k,
                                          const Vector& spectrum, Index m, std::uint64_t seed,
                                          bool with_replacement = false);

/// Planted form (SVD) of an exactly rank-k matrix.
PlantedTruth planted_from_matrix(const Matrix& w, Index k);

}  // namespace lrrom
