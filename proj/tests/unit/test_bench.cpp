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


#include "lrrom/bench.hpp"
#include "lrrom/rng.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace lrrom {
namespace {

using testing::TempDir;

TEST(Quantile, LinearInterpolation) {
  EXPECT_DOUBLE_EQ(bench::quantile({1, 2, 3, 4}, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(bench::quantile({4, 1, 3, 2}, 0.25), 1.75);
  EXPECT_DOUBLE_EQ(bench::median({5}), 5.0);
  EXPECT_DOUBLE_EQ(bench::median({1, std::nan(""), 3}), 2.0);
  EXPECT_TRUE(std::isnan(bench::median({})));
}

TEST(TrialSeed, DerivedFromPointAndTrial) {
  EXPECT_EQ(bench::trial_seed(3, 1, 2), derive_seed(3, {1, 2}));
  EXPECT_NE(bench::trial_seed(3, 1, 2), bench::trial_seed(3, 2, 1));
}

bench::SweepOptions quiet(int threads) {
  bench::SweepOptions o;
  o.threads = threads;
  o.timings = false;
  return o;
}

TEST(SensingSweep, PairedKindsShareTruth) {
  auto o = quiet(1);
  o.solver.k = 2;
  o.solver.ls_method = LsMethod::matrix_free;
  const bench::SweepReport r = bench::run_sensing_sweep(
      10, 10, 2, default_spectrum(2, 2.0), {120, 200}, 2, 7,
      {bench::OperatorKind::rank_one, bench::OperatorKind::dense}, o);
  ASSERT_EQ(r.trials.size(), 8u);
  ASSERT_EQ(r.points.size(), 4u);
  for (std::size_t i = 0; i + 1 < r.trials.size(); i += 2) {
    EXPECT_EQ(r.trials[i].point, r.trials[i + 1].point);
    EXPECT_EQ(r.trials[i].trial_id, r.trials[i + 1].trial_id);
    EXPECT_EQ(r.trials[i].truth_hash, r.trials[i + 1].truth_hash);
    EXPECT_NE(r.trials[i].kind, r.trials[i + 1].kind);
  }
  const bench::PointSummary* p = r.find(1, "rank_one");
  ASSERT_NE(p, nullptr);
  EXPECT_EQ(p->trials, 2);
  EXPECT_EQ(p->success_rate, 1.0);
}

TEST(SensingSweep, ThreadCountDoesNotChangeResults) {
  auto run = [](int threads) {
    auto o = quiet(threads);
    o.solver.k = 1;
    return bench::to_csv(bench::run_sensing_sweep(8, 8, 1, default_spectrum(1, 1.0), {60, 90, 120}, 3, 11,
                                                  {bench::OperatorKind::rank_one, bench::OperatorKind::dense}, o));
  };
  const std::string serial = run(1);
  EXPECT_EQ(serial, run(4));
  EXPECT_EQ(serial, run(1));
}

TEST(ImcSweep, RecordsCoherence) {
  const bench::SweepReport r = bench::run_imc_sweep(4, 4, 30, 30, 1, {200}, 2, 3, quiet(1));
  ASSERT_EQ(r.trials.size(), 2u);
  EXPECT_TRUE(r.trials[0].metric("coherence_x").has_value());
  EXPECT_EQ(r.success_threshold, bench::kPhaseThreshold);
}

TEST(MultilabelSweep, GridAndMetrics) {
  auto o = quiet(2);
  o.solver.ridge = 1e-2;
  const bench::SweepReport r = bench::run_multilabel_sweep(6, 20, {3, 4}, {1, 2}, 60, 2, 5, o);
  EXPECT_EQ(r.trials.size(), 8u);
  EXPECT_EQ(r.points.size(), 4u);
  for (const auto& t : r.trials) {
    ASSERT_TRUE(t.metric("test_error").has_value());
    EXPECT_GE(*t.metric("test_error"), 0.0);
    EXPECT_TRUE(t.metric("d").has_value());
  }
}

TEST(PropertySweep, ValuesShrinkWithM) {
  const bench::SweepReport r =
      bench::run_property_sweep(Family::gaussian, {10, 10, 0, 0}, 1, 1.0, {500, 8000}, 5, 2, quiet(1));
  ASSERT_EQ(r.points.size(), 2u);
  EXPECT_GT(r.points[0].median, r.points[1].median);
  EXPECT_EQ(r.primary_metric, "property1");
}

TEST(Reports, WritersProduceAllFormats) {
  TempDir dir;
  auto o = quiet(1);
  const bench::SweepReport r = bench::run_imc_sweep(3, 3, 20, 20, 1, {80}, 1, 1, o);
  bench::write_report(dir.path(), "imc", r);
  for (const char* f : {"imc.csv", "imc.json", "imc.dat"}) EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  const std::string csv = bench::to_csv(r);
  EXPECT_EQ(csv.rfind("axis_value,trial_id,seed,kind,error_fro", 0), 0u);
  const Json j = bench::to_json(r);
  EXPECT_TRUE(j.contains("points"));
  EXPECT_TRUE(j.contains("trials"));
}

TEST(OperatorKind, StringRoundTrip) {
  for (auto k : {bench::OperatorKind::rank_one, bench::OperatorKind::dense}) {
    EXPECT_EQ(bench::operator_kind_from_string(bench::to_string(k)), k);
  }
  EXPECT_THROW(bench::operator_kind_from_string("sparse"), ValidationError);
}

}  // namespace
}  // namespace lrrom
