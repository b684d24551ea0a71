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

#include "harvestlab/scenarios.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "harvestlab/scenario_json.hpp"

namespace harvestlab {

namespace pd = preset_defaults;

void Scenario::validate() const {
  growth.validate();
  if (!(n0 > 0.0) || !std::isfinite(n0)) throw ValidationError("n0", "must be a finite value > 0");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ValidationError("horizon", "must be a finite value > 0");
  if (std::abs(policy.cycle() - forcing.system_period()) > 1e-9 * forcing.system_period())
    throw ValidationError("policy", "schedule cycle must equal the system period");
}

namespace {

Scenario base_scenario(std::string label) {
  Scenario s;
  s.growth = GrowthParams{pd::kR0, pd::kBeta, pd::kGamma, 0.0};
  s.forcing = Forcing::constant(pd::kR0, pd::kK0, pd::kPeriod);
  s.policy = HarvestPolicy::constant_effort(pd::kEffort, pd::kPeriod);
  s.n0 = pd::kN0;
  s.horizon = pd::kHorizon;
  s.label = std::move(label);
  return s;
}

SinusoidSpec r_wave(double amplitude, double phase = 0.0) { return {pd::kR0, amplitude, phase, pd::kPeriod}; }
SinusoidSpec k_wave(double amplitude, double phase = 0.0) { return {pd::kK0, amplitude, phase, pd::kPeriod}; }

std::vector<Scenario> amplitude_k_sweep(const std::string& prefix, double r_phase) {
  std::vector<Scenario> out;
  const double amplitudes[] = {0.1, 0.5, 0.7};
  for (int i = 0; i < 3; ++i) {
    Scenario s = base_scenario(prefix + "-N" + std::to_string(i + 1));
    s.forcing = Forcing(r_wave(0.5, r_phase), k_wave(amplitudes[i]));
    out.push_back(std::move(s));
  }
  return out;
}

// Seasonal forcing of the quota experiments: K peaks at the turn of the year
// so the unfished stock peaks in March.
Forcing quota_forcing() { return Forcing(r_wave(0.0), k_wave(0.3, -0.25 * pd::kPeriod)); }

Scenario quota_scenario(std::string label, double first_month, double months, double tons_per_month) {
  Scenario s = base_scenario(std::move(label));
  s.forcing = quota_forcing();
  s.policy = HarvestPolicy(HarvestMode::Quota,
                           {HarvestSegment{first_month * kMonth, (first_month + months) * kMonth, tons_per_month * 12.0}},
                           pd::kPeriod);
  s.horizon = 1.0;
  return s;
}

}  // namespace

std::vector<std::string> preset_names() { return {"fig2", "fig3", "fig4", "fig5", "fig6-static", "fig7-adaptive"}; }

std::vector<Scenario> preset(std::string_view name) {
  std::vector<Scenario> out;
  if (name == "fig2") {
    const double kernels[3][2] = {{0.0, 1.0}, {0.2, 5.0}, {4.0, 0.5}};
    for (int i = 0; i < 3; ++i) {
      Scenario s = base_scenario("fig2-N" + std::to_string(i + 1));
      s.growth.beta = kernels[i][0];
      s.growth.gamma = kernels[i][1];
      s.forcing = Forcing(r_wave(0.0), k_wave(0.04));
      out.push_back(std::move(s));
    }
  } else if (name == "fig3") {
    out = amplitude_k_sweep("fig3", 0.0);
  } else if (name == "fig4") {
    const double amplitudes[] = {0.1, 0.5, 0.9};
    for (int i = 0; i < 3; ++i) {
      Scenario s = base_scenario("fig4-N" + std::to_string(i + 1));
      s.forcing = Forcing(r_wave(amplitudes[i]), k_wave(0.0));
      out.push_back(std::move(s));
    }
  } else if (name == "fig5") {
    out = amplitude_k_sweep("fig5", 0.5 * pd::kPeriod);
  } else if (name == "fig6-static") {
    out.push_back(quota_scenario("fig6-N1", 0.0, 12.0, 1.0));  // 12 t/yr, all year
    out.push_back(quota_scenario("fig6-N2", 5.0, 6.0, 2.0));   // June-November
    out.push_back(quota_scenario("fig6-N3", 8.0, 3.0, 4.0));   // September-November
  } else if (name == "fig7-adaptive") {
    out.push_back(quota_scenario("fig7-N2", 2.0, 6.0, 2.0));   // March-August
    out.push_back(quota_scenario("fig7-N3", 2.0, 3.0, 4.0));   // March-May
  } else {
    throw ValidationError("name", "unknown preset '" + std::string(name) + "'");
  }
  return out;
}

StrategyMetrics compute_metrics(const Trajectory& traj, double system_period) {
  StrategyMetrics m;
  const auto& xs = traj.samples;
  if (xs.empty()) return m;
  const double t_end = xs.back().t;
  const double t_start = xs.front().t;
  const double window_start = t_end - system_period >= t_start - 1e-9 ? t_end - system_period : t_start;

  double n_int = 0.0, k_int = 0.0, span = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i - 1].t < window_start - 1e-9) continue;
    const double dt = xs[i].t - xs[i - 1].t;
    n_int += 0.5 * (xs[i].n + xs[i - 1].n) * dt;
    k_int += 0.5 * (xs[i].k + xs[i - 1].k) * dt;
    span += dt;
  }
  if (span > 0.0) {
    m.n_bar = n_int / span;
    m.k_bar = k_int / span;
  } else {
    m.n_bar = xs.back().n;
    m.k_bar = xs.back().k;
  }
  m.min_stock = xs.front().n;
  for (const auto& s : traj.steps) m.min_stock = std::min(m.min_stock, s.n);
  for (const auto& s : xs) m.min_stock = std::min(m.min_stock, s.n);
  m.final_stock = xs.back().n;
  m.total_catch = traj.total_catch;
  m.depleted = traj.depleted();
  return m;
}

ScenarioResult run_scenario(const Scenario& s, const IntegratorConfig& cfg) {
  s.validate();
  ScenarioResult res;
  res.trajectory = integrate(ModelState{0.0, s.n0}, s.horizon, s.model(), cfg);
  res.metrics = compute_metrics(res.trajectory, s.forcing.system_period());
  return res;
}

unsigned sweep_threads() {
  if (const char* env = std::getenv("HARVESTLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<ScenarioResult> run_all(const std::vector<Scenario>& scenarios, const IntegratorConfig& cfg,
                                    unsigned threads) {
  std::vector<ScenarioResult> results(scenarios.size());
  std::vector<std::exception_ptr> errors(scenarios.size());
  if (threads == 0) threads = sweep_threads();
  threads = std::min<unsigned>(threads, static_cast<unsigned>(scenarios.size()));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < scenarios.size(); i = next++) {
      try {
        results[i] = run_scenario(scenarios[i], cfg);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

namespace {

bool same_wave(const SinusoidSpec& a, const SinusoidSpec& b) {
  return a.baseline == b.baseline && a.amplitude == b.amplitude && a.phase == b.phase && a.period == b.period;
}

bool same_setting(const Scenario& a, const Scenario& b) {
  return a.growth.r == b.growth.r && a.growth.beta == b.growth.beta && a.growth.gamma == b.growth.gamma &&
         same_wave(a.forcing.r_spec(), b.forcing.r_spec()) && same_wave(a.forcing.k_spec(), b.forcing.k_spec()) &&
         a.forcing.system_period() == b.forcing.system_period();
}

}  // namespace

std::vector<RankedRow> compare_strategies(const std::vector<Scenario>& scenarios, const IntegratorConfig& cfg) {
  if (scenarios.size() < 2) throw ValidationError("scenarios", "compare needs at least two scenarios");
  for (std::size_t i = 1; i < scenarios.size(); ++i)
    if (!same_setting(scenarios[0], scenarios[i]))
      throw ValidationError("scenarios", "'" + scenarios[i].label + "' differs from '" + scenarios[0].label +
                                             "' in growth parameters or forcing");
  const auto results = run_all(scenarios, cfg);
  std::vector<RankedRow> rows;
  for (std::size_t i = 0; i < scenarios.size(); ++i) rows.push_back({scenarios[i].label, results[i].metrics});
  std::stable_sort(rows.begin(), rows.end(), [](const RankedRow& a, const RankedRow& b) {
    if (a.metrics.final_stock != b.metrics.final_stock) return a.metrics.final_stock > b.metrics.final_stock;
    return a.metrics.total_catch > b.metrics.total_catch;
  });
  return rows;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(std::ostream& os, const Trajectory& traj) {
  os << kCsvHeader << '\n';
  for (const auto& s : traj.samples) {
    os << format_number(s.t) << ',' << format_number(s.n) << ',' << format_number(s.k) << ',' << format_number(s.r)
       << ',' << format_number(s.effort) << ',' << format_number(s.harvest_rate) << '\n';
  }
}

std::vector<Sample> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) throw IoError("CSV header mismatch");
  std::vector<Sample> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    double v[6];
    for (int i = 0; i < 6; ++i) {
      if (!std::getline(row, cell, ',')) throw IoError("CSV row has fewer than 6 columns: " + line);
      char* end = nullptr;
      v[i] = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') throw IoError("CSV cell is not a number: " + cell);
    }
    Sample s;
    s.t = v[0];
    s.n = v[1];
    s.k = v[2];
    s.r = v[3];
    s.effort = v[4];
    s.harvest_rate = v[5];
    out.push_back(s);
  }
  return out;
}

namespace {

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + tmp.string() + " for writing");
    os << content;
    if (!os.flush()) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at " + path.string());
  }
}

}  // namespace

void emit_csv(const Trajectory& traj, const StrategyMetrics& metrics, const std::filesystem::path& path) {
  std::ostringstream csv;
  write_csv(csv, traj);
  auto metrics_path = path;
  metrics_path += ".metrics.json";
  write_atomically(path, csv.str());
  write_atomically(metrics_path, to_json(metrics).dump(2) + "\n");
}

}  // namespace harvestlab
