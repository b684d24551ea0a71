// Copyright 2026 The HarvestLab Authors
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

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "harvestlab/scenarios.hpp"

using namespace harvestlab;

namespace {

std::vector<double> n_bars(const std::vector<Scenario>& scenarios) {
  std::vector<double> out;
  for (const auto& r : run_all(scenarios)) out.push_back(r.metrics.n_bar);
  return out;
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("harvestlab_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

Scenario find(const std::vector<Scenario>& v, const std::string& label) {
  return *std::find_if(v.begin(), v.end(), [&](const Scenario& s) { return s.label == label; });
}

}  // namespace

TEST(Presets, Names) {
  EXPECT_EQ(preset_names(),
            (std::vector<std::string>{"fig2", "fig3", "fig4", "fig5", "fig6-static", "fig7-adaptive"}));
  try {
    preset("fig9");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "name");
  }
}

TEST(Presets, KernelComparison) {
  const auto s = preset("fig2");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].growth.beta, 0.0);
  EXPECT_EQ(s[0].growth.gamma, 1.0);
  EXPECT_EQ(s[1].growth.beta, 0.2);
  EXPECT_EQ(s[1].growth.gamma, 5.0);
  EXPECT_EQ(s[2].growth.beta, 4.0);
  EXPECT_EQ(s[2].growth.gamma, 0.5);
}

TEST(Presets, CapacityAndRateSweeps) {
  const auto f3 = preset("fig3"), f4 = preset("fig4"), f5 = preset("fig5");
  const double ak[] = {0.1, 0.5, 0.7}, ar[] = {0.1, 0.5, 0.9};
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(f3[i].forcing.k_spec().amplitude, ak[i]);
    EXPECT_EQ(f5[i].forcing.k_spec().amplitude, ak[i]);
    EXPECT_EQ(f4[i].forcing.r_spec().amplitude, ar[i]);
    EXPECT_EQ(f4[i].forcing.k_spec().amplitude, 0.0);
    // half-period shift between the r and K waves
    EXPECT_EQ(f5[i].forcing.r_spec().phase - f5[i].forcing.k_spec().phase, 0.5 * f5[i].forcing.r_spec().period);
    EXPECT_EQ(f3[i].forcing.r_spec().phase - f3[i].forcing.k_spec().phase, 0.0);
    EXPECT_EQ(f3[i].policy.mode(), HarvestMode::Effort);
  }
}

TEST(Presets, QuotaSchedules) {
  const auto st = preset("fig6-static"), ad = preset("fig7-adaptive");
  ASSERT_EQ(st.size(), 3u);
  ASSERT_EQ(ad.size(), 2u);
  auto seg = [](const Scenario& s) { return s.policy.segments()[0]; };
  // annual totals: 12 t each
  for (const auto& s : st) {
    EXPECT_EQ(s.policy.mode(), HarvestMode::Quota);
    EXPECT_NEAR(seg(s).rate * (seg(s).end - seg(s).start), 12.0, 1e-12);
  }
  EXPECT_NEAR(seg(st[0]).start, 0.0, 1e-15);
  EXPECT_NEAR(seg(st[0]).end, 1.0, 1e-15);
  EXPECT_NEAR(seg(st[1]).start, 5 * kMonth, 1e-15);  // June
  EXPECT_NEAR(seg(st[1]).rate, 24.0, 1e-12);          // 2 t per month
  EXPECT_NEAR(seg(st[2]).start, 8 * kMonth, 1e-15);  // September
  EXPECT_NEAR(seg(st[2]).rate, 48.0, 1e-12);
  EXPECT_NEAR(seg(ad[0]).start, 2 * kMonth, 1e-15);  // March
  EXPECT_NEAR(seg(ad[0]).end, 8 * kMonth, 1e-15);
  EXPECT_NEAR(seg(ad[1]).start, 2 * kMonth, 1e-15);
  EXPECT_NEAR(seg(ad[1]).end, 5 * kMonth, 1e-15);
  EXPECT_NEAR(seg(ad[1]).rate, 48.0, 1e-12);
}

TEST(RunScenario, UnharvestedAtCapacity) {
  Scenario s;
  s.policy = HarvestPolicy::none();
  s.n0 = 100.0;
  s.horizon = 2.0;
  const auto res = run_scenario(s);
  EXPECT_DOUBLE_EQ(res.metrics.n_bar, 100.0);
  EXPECT_DOUBLE_EQ(res.metrics.k_bar, 100.0);
  EXPECT_EQ(res.metrics.total_catch, 0.0);
  EXPECT_FALSE(res.metrics.depleted);
}

TEST(Metrics, ConstantTrajectoryAverage) {
  Trajectory traj;
  for (int i = 0; i <= 730; ++i) traj.samples.push_back(Sample{i / 365.0, 42.0, 80.0, 1.0, 0.0, 0.0, 0.0});
  traj.steps = traj.samples;
  const auto m = compute_metrics(traj, 1.0);
  EXPECT_NEAR(m.n_bar, 42.0, 1e-12);
  EXPECT_NEAR(m.k_bar, 80.0, 1e-12);
  EXPECT_EQ(m.min_stock, 42.0);
  EXPECT_EQ(m.final_stock, 42.0);
}

TEST(Metrics, AveragesOnlyTheLastPeriod) {
  Trajectory traj;
  for (int i = 0; i <= 730; ++i) traj.samples.push_back(Sample{i / 365.0, i < 365 ? 10.0 : 30.0, 50.0, 1, 0, 0, 0});
  traj.steps = traj.samples;
  EXPECT_NEAR(compute_metrics(traj, 1.0).n_bar, 30.0, 1e-12);
  EXPECT_EQ(compute_metrics(traj, 1.0).min_stock, 10.0);
}

TEST(Sweeps, CapacityAmplitudeLowersMeanStock) {
  const auto s = preset("fig3");
  const auto results = run_all(s);
  EXPECT_GT(results[0].metrics.n_bar, results[1].metrics.n_bar);
  EXPECT_GT(results[1].metrics.n_bar, results[2].metrics.n_bar);
  for (const auto& r : results) EXPECT_LE(r.metrics.n_bar, r.metrics.k_bar);
}

TEST(Sweeps, RateAmplitudeBarelyMatters) {
  const auto nb = n_bars(preset("fig4"));
  const auto [lo, hi] = std::minmax_element(nb.begin(), nb.end());
  const double mean = (nb[0] + nb[1] + nb[2]) / 3.0;
  EXPECT_LT((*hi - *lo) / mean, 0.05);
}

TEST(Sweeps, ParallelMatchesSerial) {
  const auto s = preset("fig3");
  const auto serial = run_all(s, {}, 1);
  const auto parallel = run_all(s, {}, 3);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(serial[i].metrics, parallel[i].metrics);
}

TEST(Sweeps, ErrorsPropagate) {
  auto s = preset("fig3");
  IntegratorConfig cfg;
  cfg.tol = 1e-300;
  cfg.max_halvings = 1;
  EXPECT_THROW(run_all(s, cfg, 2), StepUnderflow);
}

TEST(Sweeps, ThreadCountFromEnvironment) {
  ::setenv("HARVESTLAB_THREADS", "3", 1);
  EXPECT_EQ(sweep_threads(), 3u);
  ::setenv("HARVESTLAB_THREADS", "junk", 1);
  EXPECT_GE(sweep_threads(), 1u);
  ::unsetenv("HARVESTLAB_THREADS");
}

TEST(Compare, IdenticalScenariosGiveIdenticalRows) {
  const auto s = preset("fig6-static")[0];
  const auto rows = compare_strategies({s, s});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].metrics, rows[1].metrics);
}

TEST(Compare, RankedByFinalStock) {
  auto scenarios = preset("fig6-static");
  Scenario none = scenarios[0];
  none.policy = HarvestPolicy(HarvestMode::Quota, {}, 1.0);
  none.label = "none";
  scenarios.push_back(none);
  const auto rows = compare_strategies(scenarios);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].label, "none");
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GE(rows[i - 1].metrics.final_stock, rows[i].metrics.final_stock);
  const auto year_round = *std::find_if(rows.begin(), rows.end(), [](auto& r) { return r.label == "fig6-N1"; });
  EXPECT_GT(rows[0].metrics.final_stock, year_round.metrics.final_stock);
}

TEST(Compare, TiesBrokenByCatch) {
  Scenario a;
  a.policy = HarvestPolicy::none();
  a.n0 = 100.0;
  a.horizon = 1.0;
  a.label = "a";
  Scenario b = a;
  b.label = "b";
  const auto rows = compare_strategies({a, b});
  EXPECT_EQ(rows[0].label, "a");  // stable for full ties
}

TEST(Compare, MarchStartBeatsSeptemberStart) {
  const auto march = find(preset("fig7-adaptive"), "fig7-N3");
  const auto sept = find(preset("fig6-static"), "fig6-N3");
  const auto rows = compare_strategies({sept, march});
  EXPECT_EQ(rows[0].label, "fig7-N3");
  EXPECT_GE(rows[0].metrics.final_stock, rows[1].metrics.final_stock);
}

TEST(Compare, RejectsMismatchedSettings) {
  const auto f3 = preset("fig3");
  EXPECT_THROW(compare_strategies({f3[0], f3[1]}), ValidationError);
  EXPECT_THROW(compare_strategies({f3[0]}), ValidationError);
  auto other = f3[0];
  other.growth.beta = 1.0;
  try {
    compare_strategies({f3[0], other});
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "scenarios");
  }
}

TEST(Csv, EmptyTrajectoryIsHeaderOnly) {
  const auto dir = scratch_dir("empty");
  emit_csv(Trajectory{}, StrategyMetrics{}, dir / "out.csv");
  std::ifstream is(dir / "out.csv");
  std::stringstream ss;
  ss << is.rdbuf();
  EXPECT_EQ(ss.str(), std::string(kCsvHeader) + "\n");
  EXPECT_TRUE(std::filesystem::exists(dir / "out.csv.metrics.json"));
  EXPECT_FALSE(std::filesystem::exists(dir / "out.csv.tmp"));
}

TEST(Csv, RowCountAndRoundTrip) {
  auto s = preset("fig6-static")[1];
  s.horizon = 2.0;
  const auto res = run_scenario(s);
  std::stringstream ss;
  write_csv(ss, res.trajectory);
  const auto parsed = read_csv(ss);
  ASSERT_EQ(parsed.size(), 2u * 365u + 1u);
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    const auto& a = res.trajectory.samples[i];
    const auto& b = parsed[i];
    ASSERT_EQ(format_number(a.t), format_number(b.t));
    ASSERT_EQ(format_number(a.n), format_number(b.n));
    ASSERT_EQ(format_number(a.k), format_number(b.k));
    ASSERT_EQ(format_number(a.r), format_number(b.r));
    ASSERT_EQ(format_number(a.effort), format_number(b.effort));
    ASSERT_EQ(format_number(a.harvest_rate), format_number(b.harvest_rate));
  }
  // re-emitting the parsed samples is byte-identical
  Trajectory again;
  again.samples = parsed;
  std::stringstream first, second;
  write_csv(first, res.trajectory);
  write_csv(second, again);
  EXPECT_EQ(first.str(), second.str());
}

TEST(Csv, MetricsSidecar) {
  const auto dir = scratch_dir("metrics");
  const auto res = run_scenario(preset("fig6-static")[0]);
  emit_csv(res.trajectory, res.metrics, dir / "run.csv");
  std::ifstream is(dir / "run.csv.metrics.json");
  const auto doc = nlohmann::json::parse(is);
  for (const char* key : {"n_bar", "k_bar", "min_stock", "final_stock", "total_catch", "depleted"})
    EXPECT_TRUE(doc.contains(key)) << key;
  EXPECT_NEAR(doc["total_catch"].get<double>(), 12.0, 1e-9);
}

TEST(Csv, ReadErrors) {
  std::stringstream bad_header("t,N\n1,2\n");
  EXPECT_THROW(read_csv(bad_header), IoError);
  std::stringstream bad_cell(std::string(kCsvHeader) + "\n1,2,x,4,5,6\n");
  EXPECT_THROW(read_csv(bad_cell), IoError);
  EXPECT_THROW(emit_csv(Trajectory{}, StrategyMetrics{}, "/nonexistent-dir/x/out.csv"), IoError);
}

TEST(Scenario, Validation) {
  Scenario s;
  s.n0 = 0.0;
  EXPECT_THROW(s.validate(), ValidationError);
  s = Scenario{};
  s.horizon = -1.0;
  EXPECT_THROW(s.validate(), ValidationError);
  s = Scenario{};
  s.policy = HarvestPolicy::constant_effort(0.3, 2.0);
  EXPECT_THROW(s.validate(), ValidationError);
}
