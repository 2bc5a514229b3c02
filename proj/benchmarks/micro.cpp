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
#include "lrrom/measurement.hpp"
#include "lrrom/rng.hpp"
#include "lrrom/solver.hpp"
#include "lrrom/synth.hpp"

#include <benchmark/benchmark.h>

#include <memory>

namespace {

using namespace lrrom;

// args: d, m
void BM_ApplyRankOne(benchmark::State& state) {
  const Index d = state.range(0), m = state.range(1);
  const RankOneOperator op = make_gaussian_operator(d, d, m, 1);
  const Matrix w = Rng(2).normal_matrix(d, d);
  for (auto _ : state) benchmark::DoNotOptimize(op.apply(w));
  state.SetItemsProcessed(state.iterations() * m);
}
BENCHMARK(BM_ApplyRankOne)->Args({50, 1000})->Args({50, 3000})->Args({100, 3000});

void BM_ApplyDense(benchmark::State& state) {
  const Index d = state.range(0), m = state.range(1);
  const DenseOperator op = make_dense_gaussian_operator(d, d, m, 1);
  const Matrix w = Rng(2).normal_matrix(d, d);
  for (auto _ : state) benchmark::DoNotOptimize(op.apply(w));
  state.SetItemsProcessed(state.iterations() * m);
}
BENCHMARK(BM_ApplyDense)->Args({50, 1000})->Args({50, 3000})->Args({100, 3000});

void BM_ApplyFactored(benchmark::State& state) {
  const Index d = state.range(0), m = state.range(1), k = 5;
  const RankOneOperator op = make_gaussian_operator(d, d, m, 1);
  Rng rng(3);
  const Matrix u = rng.normal_matrix(d, k), v = rng.normal_matrix(d, k);
  for (auto _ : state) benchmark::DoNotOptimize(op.apply_factored(u, v));
}
BENCHMARK(BM_ApplyFactored)->Args({50, 3000})->Args({100, 3000});

void BM_AdjointWeightedSum(benchmark::State& state) {
  const Index d = state.range(0), m = state.range(1);
  const RankOneOperator op = make_gaussian_operator(d, d, m, 1);
  const Vector b = Rng(4).normal_vector(m);
  for (auto _ : state) benchmark::DoNotOptimize(adjoint_weighted_sum(op, b));
}
BENCHMARK(BM_AdjointWeightedSum)->Args({50, 3000});

// args: d, m, method (0 direct, 1 matrix_free)
void BM_LsUpdateRight(benchmark::State& state) {
  const Index d = state.range(0), m = state.range(1), k = 5;
  const PlantedTruth t = random_low_rank(d, d, k, default_spectrum(k, 2.0), 5);
  auto op = std::make_shared<RankOneOperator>(make_gaussian_operator(d, d, m, 6));
  const MeasurementSet ms(op, op->apply(t.w));
  LsOptions o;
  o.method = state.range(2) == 0 ? LsMethod::direct : LsMethod::matrix_free;
  for (auto _ : state) benchmark::DoNotOptimize(ls_update_right(t.u, ms, o));
}
BENCHMARK(BM_LsUpdateRight)->Args({50, 2000, 0})->Args({50, 2000, 1})->Unit(benchmark::kMillisecond);

// args: d, m, kind (0 rank-one, 1 dense); full AltMin solve, matrix-free LS.
void BM_AltminSolve(benchmark::State& state) {
  const Index d = state.range(0), m = state.range(1), k = 5;
  const PlantedTruth t = random_low_rank(d, d, k, default_spectrum(k, 1.0), 7);
  std::shared_ptr<const MeasurementOperator> op;
  if (state.range(2) == 0) {
    op = std::make_shared<RankOneOperator>(make_gaussian_operator(d, d, m, 8));
  } else {
    op = std::make_shared<DenseOperator>(make_dense_gaussian_operator(d, d, m, 8));
  }
  const MeasurementSet ms(op, op->apply(t.w));
  SolverConfig c;
  c.k = k;
  c.ls_method = LsMethod::matrix_free;
  for (auto _ : state) benchmark::DoNotOptimize(altmin_lrrom(ms, c));
}
BENCHMARK(BM_AltminSolve)->Args({50, 1500, 0})->Args({50, 1500, 1})->Unit(benchmark::kMillisecond);

void BM_SpectralNormPower(benchmark::State& state) {
  const Matrix m = Rng(9).normal_matrix(state.range(0), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(spectral_norm(m));
}
BENCHMARK(BM_SpectralNormPower)->Arg(50)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
