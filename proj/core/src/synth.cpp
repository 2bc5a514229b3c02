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

#include "lrrom/synth.hpp"

#include "lrrom/linalg.hpp"
#include "lrrom/rng.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace lrrom {

Vector default_spectrum(Index k, double beta) {
  if (k < 1) throw ValidationError("default_spectrum: k must be >= 1");
  if (!(beta >= 1.0) || !std::isfinite(beta)) {
    throw ValidationError("default_spectrum: beta must be finite and >= 1");
  }
  Vector s(k);
  if (k == 1) {
    s(0) = beta;
    return s;
  }
  for (Index j = 0; j < k; ++j) {
    s(j) = beta - (beta - 1.0) * static_cast<double>(j) / static_cast<double>(k - 1);
  }
  return s;
}

PlantedTruth random_low_rank(Index d1, Index d2, Index k, const Vector& spectrum,
                             std::uint64_t seed) {
  if (k < 1 || k > std::min(d1, d2)) {
    throw RankError("random_low_rank: need 1 <= k <= min(d1, d2)");
  }
  if (spectrum.size() != k) throw ValidationError("random_low_rank: spectrum must have k values");
  for (Index j = 0; j < k; ++j) {
    if (!(spectrum(j) > 0.0) || !std::isfinite(spectrum(j))) {
      throw ValidationError("random_low_rank: spectrum must be positive and finite");
    }
    if (j > 0 && spectrum(j) > spectrum(j - 1)) {
      throw ValidationError("random_low_rank: spectrum must be nonincreasing");
    }
  }
  Rng rng(seed);
  const Matrix gu = rng.normal_matrix(d1, k);
  const Matrix gv = rng.normal_matrix(d2, k);
  PlantedTruth t;
  t.u = orthonormalize(gu).q;
  t.v = orthonormalize(gv).q;
  t.spectrum = spectrum;
  t.w = t.u * spectrum.asDiagonal() * t.v.transpose();
  t.beta = spectrum(0) / spectrum(k - 1);
  return t;
}

double coherence(const Matrix& x) {
  const Index d = x.rows(), n = x.cols();
  if (d < 1 || d > n) throw DimensionError("coherence: X must be d x n with 1 <= d <= n");
  Eigen::HouseholderQR<Matrix> qr(x.transpose());
  const Matrix r = qr.matrixQR().topRows(d).triangularView<Eigen::Upper>();
  const double largest = r.diagonal().cwiseAbs().maxCoeff();
  if (!(r.diagonal().cwiseAbs().minCoeff() > 1e-12 * largest)) {
    throw RankError("coherence: X does not have full row rank");
  }
  const Matrix q = qr.householderQ() * Matrix::Identity(n, d);
  const double max_row = q.rowwise().norm().maxCoeff();
  const double mu = max_row * std::sqrt(static_cast<double>(n) / static_cast<double>(d));
  return std::clamp(mu, 1.0, std::sqrt(static_cast<double>(n) / static_cast<double>(d)));
}

FeatureMatrix incoherent_features(Index d, Index n, std::uint64_t seed) {
  if (d < 1 || d > n) throw DimensionError("incoherent_features: need 1 <= d <= n");
  Rng rng(seed);
  const Matrix g = rng.normal_matrix(d, n);
  FeatureMatrix f;
  f.x = orthonormalize(g.transpose()).q.transpose();
  f.coherence = coherence(f.x);
  return f;
}

std::vector<IndexPair> sample_omega(Index n1, Index n2, Index m, std::uint64_t seed,
                                    bool with_replacement) {
  if (n1 < 1 || n2 < 1) throw ValidationError("sample_omega: n1, n2 must be >= 1");
  if (m < 1) throw ValidationError("sample_omega: m must be >= 1");
  const auto cells = static_cast<std::uint64_t>(n1) * static_cast<std::uint64_t>(n2);
  if (!with_replacement && static_cast<std::uint64_t>(m) > cells) {
    throw CapacityError("sample_omega: cannot draw " + std::to_string(m) +
                        " distinct pairs from " + std::to_string(cells) + " cells");
  }
  Rng rng(seed);
  std::vector<std::uint64_t> flat;
  flat.reserve(static_cast<std::size_t>(m));
  if (with_replacement) {
    for (Index t = 0; t < m; ++t) flat.push_back(rng.below(cells));
  } else {
    // Sparse Fisher-Yates: only displaced positions are stored.
    std::unordered_map<std::uint64_t, std::uint64_t> displaced;
    auto at = [&](std::uint64_t pos) {
      const auto it = displaced.find(pos);
      return it == displaced.end() ? pos : it->second;
    };
    for (std::uint64_t t = 0; t < static_cast<std::uint64_t>(m); ++t) {
      const std::uint64_t j = t + rng.below(cells - t);
      const std::uint64_t picked = at(j);
      displaced[j] = at(t);
      flat.push_back(picked);
    }
  }
  std::sort(flat.begin(), flat.end());
  std::vector<IndexPair> out;
  out.reserve(flat.size());
  for (std::uint64_t f : flat) {
    out.push_back({static_cast<Index>(f / static_cast<std::uint64_t>(n2)),
                   static_cast<Index>(f % static_cast<std::uint64_t>(n2))});
  }
  return out;
}

FeatureReduction reduce_features(const Matrix& x) {
  const Index d = x.rows(), n = x.cols();
  if (d < 1 || d > n) throw DimensionError("reduce_features: X must be d x n with d <= n");
  Eigen::JacobiSVD<Matrix> svd(x.transpose(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sigma = svd.singularValues();
  if (!(sigma(d - 1) > 1e-12 * sigma(0))) {
    throw RankError("reduce_features: X does not have full row rank");
  }
  Matrix u = svd.matrixU();
  Matrix v = svd.matrixV();
  // Fix the sign of each singular pair by V's columns.
  Matrix v_fixed = v;
  canonicalize_signs(v_fixed);
  for (Index j = 0; j < d; ++j) {
    if (v_fixed.col(j).dot(v.col(j)) < 0.0) u.col(j) *= -1.0;
  }
  return FeatureReduction{u.transpose(), sigma, v_fixed};
}

Matrix reduce_target(const Matrix& w, const FeatureReduction& left,
                     const FeatureReduction& right) {
  return left.sigma.asDiagonal() * left.v.transpose() * w * right.v *
         right.sigma.asDiagonal();
}

Matrix restore_target(const Matrix& w_reduced, const FeatureReduction& left,
                      const FeatureReduction& right) {
  return left.v * left.sigma.cwiseInverse().asDiagonal() * w_reduced *
         right.sigma.cwiseInverse().asDiagonal() * right.v.transpose();
}

ProblemInstance make_instance(Family family, const InstanceDims& dims, Index k,
                              const Vector& spectrum, Index m, std::uint64_t seed,
                              bool with_replacement) {
  if (m < 1) throw ValidationError("make_instance: m must be >= 1");
  ProblemInstance inst;
  inst.family = family;
  inst.dims = dims;
  inst.k = k;
  inst.with_replacement = with_replacement;
  inst.seeds.master = seed;
  inst.seeds.truth = derive_seed(seed, {stream::truth});
  inst.seeds.features_left = derive_seed(seed, {stream::features_left});
  inst.seeds.features_right = derive_seed(seed, {stream::features_right});
  inst.seeds.omega = derive_seed(seed, {stream::omega});
  inst.seeds.operator_factors = derive_seed(seed, {stream::operator_factors});

  inst.truth = random_low_rank(dims.d1, dims.d2, k, spectrum, inst.seeds.truth);
  inst.effective_target = inst.truth.w;

  switch (family) {
    case Family::gaussian: {
      inst.op = std::make_shared<RankOneOperator>(
          make_gaussian_operator(dims.d1, dims.d2, m, inst.seeds.operator_factors));
      break;
    }
    case Family::inductive: {
      if (dims.n1 < dims.d1 || dims.n2 < dims.d2) {
        throw DimensionError("make_instance: inductive family needs n1 >= d1 and n2 >= d2");
      }
      FeatureMatrix fx = incoherent_features(dims.d1, dims.n1, inst.seeds.features_left);
      FeatureMatrix fy = incoherent_features(dims.d2, dims.n2, inst.seeds.features_right);
      auto omega = sample_omega(dims.n1, dims.n2, m, inst.seeds.omega, with_replacement);
      inst.op = std::make_shared<RankOneOperator>(make_imc_operator(fx.x, fy.x, std::move(omega)));
      inst.coherence_left = fx.coherence;
      inst.coherence_right = fy.coherence;
      inst.features_left = std::move(fx.x);
      inst.features_right = std::move(fy.x);
      break;
    }
    case Family::multilabel: {
      if (dims.n1 < dims.d1) throw DimensionError("make_instance: multilabel family needs n1 >= d1");
      FeatureMatrix fx = incoherent_features(dims.d1, dims.n1, inst.seeds.features_left);
      auto omega = sample_omega(dims.n1, dims.d2, m, inst.seeds.omega, with_replacement);
      inst.op = std::make_shared<RankOneOperator>(
          make_multilabel_operator(fx.x, dims.d2, std::move(omega)));
      inst.coherence_left = fx.coherence;
      inst.labels = fx.x.transpose() * inst.truth.w;
      inst.features_left = std::move(fx.x);
      break;
    }
    case Family::custom:
      throw ValidationError("make_instance: the custom family has no generator");
  }
  inst.b = inst.op->apply(inst.effective_target);
  return inst;
}

PlantedTruth planted_from_matrix(const Matrix& w, Index k) {
  if (k < 1 || k > std::min(w.rows(), w.cols())) throw RankError("planted_from_matrix: invalid k");
  Eigen::JacobiSVD<Matrix> svd(w, Eigen::ComputeThinU | Eigen::ComputeThinV);
  PlantedTruth t;
  t.w = w;
  t.u = svd.matrixU().leftCols(k);
  t.v = svd.matrixV().leftCols(k);
  t.spectrum = svd.singularValues().head(k);
  const double floor = 1e-12 * svd.singularValues()(0);
  if (!(t.spectrum(k - 1) > floor)) throw RankError("planted_from_matrix: matrix has rank < k");
  // Sign convention of the solver, carried to V through the pairing.
  Matrix u_fixed = t.u;
  canonicalize_signs(u_fixed);
  for (Index j = 0; j < k; ++j) {
    if (u_fixed.col(j).dot(t.u.col(j)) < 0.0) t.v.col(j) *= -1.0;
  }
  t.u = std::move(u_fixed);
  t.beta = t.spectrum(0) / t.spectrum(k - 1);
  return t;
}

Matrix ReducedInstance::restore(const Matrix& w_reduced) const {
  Matrix w = w_reduced;
  if (left) w = left->v * left->sigma.cwiseInverse().asDiagonal() * w;
  if (right) w = w * right->sigma.cwiseInverse().asDiagonal() * right->v.transpose();
  return w;
}

ReducedInstance make_reduced_imc_instance(const std::optional<Matrix>& x,
                                          const std::optional<Matrix>& y,
                                          const InstanceDims& dims, Index k,
                                          const Vector& spectrum, Index m, std::uint64_t seed,
                                          bool with_replacement) {
  if (m < 1) throw ValidationError("make_reduced_imc_instance: m must be >= 1");
  InstanceDims d = dims;
  if (x) {
    d.d1 = x->rows();
    d.n1 = x->cols();
  }
  if (y) {
    d.d2 = y->rows();
    d.n2 = y->cols();
  }
  if (d.n1 < d.d1 || d.n2 < d.d2 || d.d1 < 1 || d.d2 < 1) {
    throw DimensionError("make_reduced_imc_instance: need 1 <= d1 <= n1 and 1 <= d2 <= n2");
  }

  ReducedInstance out;
  ProblemInstance& inst = out.instance;
  inst.family = Family::inductive;
  inst.dims = d;
  inst.k = k;
  inst.with_replacement = with_replacement;
  inst.seeds.master = seed;
  inst.seeds.truth = derive_seed(seed, {stream::truth});
  inst.seeds.features_left = derive_seed(seed, {stream::features_left});
  inst.seeds.features_right = derive_seed(seed, {stream::features_right});
  inst.seeds.omega = derive_seed(seed, {stream::omega});
  inst.seeds.operator_factors = derive_seed(seed, {stream::operator_factors});

  out.original = random_low_rank(d.d1, d.d2, k, spectrum, inst.seeds.truth);

  Matrix ux, uy;
  if (x) {
    out.left = reduce_features(*x);
    ux = out.left->orthonormal;
  } else {
    ux = incoherent_features(d.d1, d.n1, inst.seeds.features_left).x;
  }
  if (y) {
    out.right = reduce_features(*y);
    uy = out.right->orthonormal;
  } else {
    uy = incoherent_features(d.d2, d.n2, inst.seeds.features_right).x;
  }
  inst.coherence_left = coherence(ux);
  inst.coherence_right = coherence(uy);

  Matrix target = out.original.w;
  if (out.left) target = out.left->sigma.asDiagonal() * out.left->v.transpose() * target;
  if (out.right) target = target * out.right->v * out.right->sigma.asDiagonal();
  inst.truth = planted_from_matrix(target, k);
  inst.effective_target = target;

  auto omega = sample_omega(d.n1, d.n2, m, inst.seeds.omega, with_replacement);
  inst.op = std::make_shared<RankOneOperator>(make_imc_operator(ux, uy, std::move(omega)));
  inst.features_left = std::move(ux);
  inst.features_right = std::move(uy);
  inst.b = inst.op->apply(inst.effective_target);
  return out;
}

}  // namespace lrrom
