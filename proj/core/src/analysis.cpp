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

#include "lrrom/analysis.hpp"

#include "lrrom/linalg.hpp"
#include "lrrom/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lrrom {

namespace {

constexpr Index kSvdCutoff = 64;
constexpr std::uint64_t kPowerIterationSeed = 0x9e3779b97f4a7c15ULL;

void require_unit(const Vector& x, const char* name) {
  if (std::abs(x.norm() - 1.0) > 1e-10) {
    throw ValidationError(std::string("probe vector ") + name + " is not unit norm");
  }
}

// (s^2/m) sum_i w_i f_i f_i^T for the rows f_i of `factors`.
Matrix weighted_gram(const Matrix& factors, const Vector& weights, double scale) {
  const double c = scale * scale / static_cast<double>(factors.rows());
  return c * (factors.transpose() * (weights.asDiagonal() * factors));
}

}  // namespace

SpectralNormEstimate spectral_norm_estimate(const Matrix& m) {
  if (!m.allFinite()) throw NumericError("spectral_norm: non-finite entry");
  SpectralNormEstimate out;
  if (m.size() == 0) return out;
  if (m.rows() < kSvdCutoff && m.cols() < kSvdCutoff) {
    Eigen::JacobiSVD<Matrix> svd(m);
    out.value = svd.singularValues()(0);
    return out;
  }

  // Power iteration on the smaller Gram matrix.
  const bool tall = m.rows() >= m.cols();
  const Index n = tall ? m.cols() : m.rows();
  Rng rng(kPowerIterationSeed);
  Vector x = rng.normal_vector(n);
  x.normalize();
  const int max_iters = static_cast<int>(10 * (m.rows() + m.cols()));
  double estimate = 0.0;
  out.converged = false;
  for (int it = 1; it <= max_iters; ++it) {
    Vector y = tall ? Vector(m.transpose() * (m * x)) : Vector(m * (m.transpose() * x));
    const double lambda = y.norm();
    out.iterations = it;
    if (lambda == 0.0) {
      estimate = 0.0;
      out.converged = true;
      break;
    }
    x = y / lambda;
    const double next = std::sqrt(lambda);
    if (std::abs(next - estimate) <= 1e-10 * next) {
      estimate = next;
      out.converged = true;
      break;
    }
    estimate = next;
  }
  out.value = estimate;
  return out;
}

double spectral_norm(const Matrix& m) { return spectral_norm_estimate(m).value; }

double subspace_dist(const Matrix& u1, const Matrix& u2) {
  require_shape(u2, u1.rows(), u1.cols(), "subspace_dist");
  if (orthonormality_defect(u1) > 1e-8 || orthonormality_defect(u2) > 1e-8) {
    throw ValidationError("subspace_dist: inputs must have orthonormal columns");
  }
  const Matrix residual = u2 - u1 * (u1.transpose() * u2);
  Eigen::JacobiSVD<Matrix> svd(residual);
  const double d = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
  return std::clamp(d, 0.0, 1.0);
}

double property_threshold(Index k, double beta) {
  if (k < 1) throw ValidationError("property threshold: k must be >= 1");
  if (!(beta >= 1.0)) throw ValidationError("property threshold: beta must be >= 1");
  return 1.0 / (100.0 * std::pow(static_cast<double>(k), 1.5) * beta);
}

double estimate_beta(const Matrix& s, Index k) {
  if (k < 1 || k > std::min(s.rows(), s.cols())) throw RankError("estimate_beta: invalid k");
  Eigen::JacobiSVD<Matrix> svd(s);
  const Vector& sv = svd.singularValues();
  if (!(sv(k - 1) > 0.0)) return std::numeric_limits<double>::infinity();
  return sv(0) / sv(k - 1);
}

ProbeVectors make_probe_vectors(Index d1, Index d2, std::uint64_t seed) {
  if (d1 < 2 || d2 < 2) throw ValidationError("probe vectors need d1, d2 >= 2");
  Rng rng(seed);
  auto unit = [&](Index d) {
    Vector x = rng.normal_vector(d);
    return Vector(x / x.norm());
  };
  auto orthogonal_to = [&](const Vector& base) {
    Vector x = rng.normal_vector(base.size());
    x -= base.dot(x) * base;
    x -= base.dot(x) * base;
    return Vector(x / x.norm());
  };
  ProbeVectors p;
  p.u = unit(d1);
  p.u_perp = orthogonal_to(p.u);
  p.v = unit(d2);
  p.v_perp = orthogonal_to(p.v);
  return p;
}

PropertyReport check_property1(const MeasurementSet& ms, const Matrix& wstar, Index k,
                               double beta) {
  const MeasurementOperator& op = *ms.op;
  require_shape(wstar, op.d1(), op.d2(), "check_property1");
  const double truth_norm = spectral_norm(wstar);
  if (!(truth_norm > 0.0)) throw ValidationError("check_property1: W* = 0 makes the ratio undefined");
  const Vector expected = op.apply(wstar);
  if ((expected - ms.b).norm() > 1e-8 * std::max(1.0, ms.b.norm())) {
    throw ValidationError("check_property1: b is not A(W*)");
  }

  PropertyReport r;
  r.property_id = 1;
  r.measured_value = spectral_norm(adjoint_weighted_sum(op, ms.b) - wstar) / truth_norm;
  r.measured_x = r.measured_y = r.measured_value;
  r.threshold = property_threshold(k, beta);
  r.pass = r.measured_value <= r.threshold;
  r.k = k;
  r.beta = beta;
  r.m = op.rows();
  if (const RankOneOperator* r1 = ms.rank_one()) r.family = r1->family();
  return r;
}

PropertyReport check_property2(const RankOneOperator& op, const Vector& u, const Vector& v,
                               Index k, double beta) {
  if (u.size() != op.d1() || v.size() != op.d2()) {
    throw DimensionError("check_property2: probe dimensions do not match the operator");
  }
  require_unit(u, "u");
  require_unit(v, "v");
  const Vector yv = op.right_factors() * v;
  const Vector xu = op.left_factors() * u;
  const Matrix bx = weighted_gram(op.left_factors(), yv.array().square().matrix(), op.scale());
  const Matrix by = weighted_gram(op.right_factors(), xu.array().square().matrix(), op.scale());

  PropertyReport r;
  r.property_id = 2;
  r.measured_x = spectral_norm(bx - Matrix::Identity(op.d1(), op.d1()));
  r.measured_y = spectral_norm(by - Matrix::Identity(op.d2(), op.d2()));
  r.measured_value = std::max(r.measured_x, r.measured_y);
  r.threshold = property_threshold(k, beta);
  r.pass = r.measured_value <= r.threshold;
  r.k = k;
  r.beta = beta;
  r.m = op.rows();
  r.family = op.family();
  return r;
}

PropertyReport check_property3(const RankOneOperator& op, const Vector& u,
                               const Vector& u_perp, const Vector& v, const Vector& v_perp,
                               Index k, double beta) {
  if (u.size() != op.d1() || u_perp.size() != op.d1() || v.size() != op.d2() ||
      v_perp.size() != op.d2()) {
    throw DimensionError("check_property3: probe dimensions do not match the operator");
  }
  require_unit(u, "u");
  require_unit(u_perp, "u_perp");
  require_unit(v, "v");
  require_unit(v_perp, "v_perp");
  if (std::abs(u.dot(u_perp)) > 1e-10 || std::abs(v.dot(v_perp)) > 1e-10) {
    throw ValidationError("check_property3: u_perp / v_perp must be orthogonal to u / v");
  }
  const Vector yv = op.right_factors() * v;
  const Vector yv_perp = op.right_factors() * v_perp;
  const Vector xu = op.left_factors() * u;
  const Vector xu_perp = op.left_factors() * u_perp;
  const Matrix gx = weighted_gram(op.left_factors(), yv.cwiseProduct(yv_perp), op.scale());
  const Matrix gy = weighted_gram(op.right_factors(), xu.cwiseProduct(xu_perp), op.scale());

  PropertyReport r;
  r.property_id = 3;
  r.measured_x = spectral_norm(gx);
  r.measured_y = spectral_norm(gy);
  r.measured_value = std::max(r.measured_x, r.measured_y);
  r.threshold = property_threshold(k, beta);
  r.pass = r.measured_value <= r.threshold;
  r.k = k;
  r.beta = beta;
  r.m = op.rows();
  r.family = op.family();
  return r;
}

RipProbeReport rip_probe(Index d1, Index d2, Index m, std::uint64_t seed) {
  if (m < 2) throw ValidationError("rip_probe: m must be >= 2");
  const RankOneOperator op = make_gaussian_operator(d1, d2, m, seed);
  RipProbeReport r;
  r.d1 = d1;
  r.d2 = d2;
  r.m = m;
  r.seed = seed;
  r.probe_seed = derive_seed(seed, {stream::probes});

  const Vector x1 = op.left_factors().row(0).transpose();
  const Vector y1 = op.right_factors().row(0).transpose();
  Rng rng(r.probe_seed);
  const Vector u = rng.normal_vector(d1);
  const Vector v = rng.normal_vector(d2);

  // A(a b^T / (|a| |b|)) through the factored path.
  auto energy = [&](const Vector& a, const Vector& b) {
    const Vector meas = op.apply_factored(a / a.norm(), b / b.norm());
    return meas.squaredNorm();
  };
  r.energy_upper = energy(x1, y1);
  r.energy_lower = energy(u, v);
  r.ratio = r.energy_lower > 0.0 ? r.energy_upper / r.energy_lower
                                 : std::numeric_limits<double>::infinity();
  r.first_term = x1.squaredNorm() * y1.squaredNorm();
  return r;
}

}  // namespace lrrom
