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
#include <optional>

namespace lrrom {

struct SpectralNormEstimate {
  double value = 0.0;
  bool converged = true;
  int iterations = 0;
};

/// Largest singular value. Matrices smaller than 64 x 64 go through a full
/// SVD; larger ones use power iteration on the smaller Gram matrix (relative
/// tolerance 1e-10, at most 10 (rows + cols) iterations, seeded start), and
/// report non-convergence instead of throwing.
SpectralNormEstimate spectral_norm_estimate(const Matrix& m);
double spectral_norm(const Matrix& m);

/// dist(U1, U2) = |(I - U1 U1^T) U2|_2, the sine of the largest principal
/// angle. Both inputs must have orthonormal columns (to 1e-8) and equal shape.
double subspace_dist(const Matrix& u1, const Matrix& u2);

/// Reference concentration level delta = 1 / (100 k^{3/2} beta).
double property_threshold(Index k, double beta);

/// sigma_1 / sigma_k of the top-k singular values of `s`.
double estimate_beta(const Matrix& s, Index k);

struct PropertyReport {
  int property_id = 0;
  double measured_value = 0.0;
  /// Property 1: same as measured_value. Properties 2/3: the x-side and
  /// y-side operator norms whose max is measured_value.
  double measured_x = 0.0;
  double measured_y = 0.0;
  double threshold = 0.0;
  bool pass = false;

  Index k = 1;
  double beta = 1.0;
  bool beta_estimated = false;
  Index m = 0;
  Family family = Family::custom;
  std::optional<std::uint64_t> operator_seed;
  std::optional<std::uint64_t> probe_seed;
};

/// Unit probe vectors drawn from their own stream: u, v Gaussian directions,
/// u_perp / v_perp Gaussian directions orthogonalized against u / v.
struct ProbeVectors {
  Vector u, u_perp, v, v_perp;
};
ProbeVectors make_probe_vectors(Index d1, Index d2, std::uint64_t seed);

/// |(1/m) sum_i b_i A_i - W*|_2 / |W*|_2. Requires b = A(W*) to 1e-8.
PropertyReport check_property1(const MeasurementSet& ms, const Matrix& wstar, Index k,
                               double beta);

/// max(|B_x - I|_2, |B_y - I|_2) with
///   B_x = (s^2/m) sum_i (y_i^T v)^2 x_i x_i^T,
///   B_y = (s^2/m) sum_i (x_i^T u)^2 y_i y_i^T,
/// s the operator scale (1 for Gaussian, sqrt(n1 n2) for completion).
PropertyReport check_property2(const RankOneOperator& op, const Vector& u, const Vector& v,
                               Index k, double beta);

/// max(|G_x|_2, |G_y|_2) with
///   G_x = (s^2/m) sum_i (y_i^T v)(y_i^T v_perp) x_i x_i^T,
///   G_y = (s^2/m) sum_i (x_i^T u)(x_i^T u_perp) y_i y_i^T.
PropertyReport check_property3(const RankOneOperator& op, const Vector& u,
                               const Vector& u_perp, const Vector& v, const Vector& v_perp,
                               Index k, double beta);

struct RipProbeReport {
  double energy_upper = 0.0;  // |A(Z_U / |Z_U|_F)|^2, Z_U = x_1 y_1^T
  double energy_lower = 0.0;  // |A(Z_L / |Z_L|_F)|^2, Z_L = u v^T independent
  double ratio = 0.0;         // upper / lower
  double first_term = 0.0;    // <A_1, Z_U>^2 / |Z_U|_F^2 = |x_1|^2 |y_1|^2
  Index d1 = 0, d2 = 0, m = 0;
  std::uint64_t seed = 0;
  std::uint64_t probe_seed = 0;
};

/// Builds a Gaussian rank-one ensemble from `seed` and measures how unequal
/// its energies are on two unit-Frobenius rank-one matrices.
RipProbeReport rip_probe(Index d1, Index d2, Index m, std::uint64_t seed);

}  // namespace lrrom
