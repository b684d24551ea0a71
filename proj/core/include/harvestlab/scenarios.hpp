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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "harvestlab/integrator.hpp"
#include "harvestlab/model.hpp"

namespace harvestlab {

/// Constants shared by the named presets.
namespace preset_defaults {
inline constexpr double kK0 = 100.0;      // tons
inline constexpr double kR0 = 1.0;        // 1/year
inline constexpr double kN0 = 50.0;       // tons
inline constexpr double kPeriod = 1.0;    // years
inline constexpr double kBeta = 0.2;
inline constexpr double kGamma = 5.0;
inline constexpr double kEffort = 0.3;    // fig2..fig5, 1/year
inline constexpr double kHorizon = 10.0;  // fig2..fig5, years
}  // namespace preset_defaults

struct Scenario {
  GrowthParams growth;  ///< effort unused; harvesting comes from `policy`
  Forcing forcing = Forcing::constant(preset_defaults::kR0, preset_defaults::kK0);
  HarvestPolicy policy;
  double n0 = preset_defaults::kN0;
  double horizon = preset_defaults::kHorizon;
  std::string label = "scenario";

  void validate() const;
  HarvestModel model() const { return HarvestModel{growth, forcing, policy}; }
};

struct StrategyMetrics {
  double n_bar = 0.0;  ///< time-averaged stock over the last full period, tons
  double k_bar = 0.0;  ///< same average of K(t), tons
  double min_stock = 0.0;
  double final_stock = 0.0;
  double total_catch = 0.0;
  bool depleted = false;

  friend bool operator==(const StrategyMetrics&, const StrategyMetrics&) = default;
};

struct ScenarioResult {
  Trajectory trajectory;
  StrategyMetrics metrics;
};

std::vector<std::string> preset_names();

/// Named reproductions of the seasonal-forcing and harvest-timing
/// experiments: fig2, fig3, fig4, fig5, fig6-static, fig7-adaptive.
/// Throws ValidationError("name", ...) for an unknown name.
std::vector<Scenario> preset(std::string_view name);

/// Trapezoidal averages over the last full system period of the output grid
/// (the whole run if it is shorter than one period).
StrategyMetrics compute_metrics(const Trajectory& traj, double system_period);

ScenarioResult run_scenario(const Scenario& s, const IntegratorConfig& cfg = {});

/// Worker count for sweeps: HARVESTLAB_THREADS if set to a positive integer,
/// otherwise the hardware concurrency.
unsigned sweep_threads();

/// Runs scenarios concurrently; results keep the input order.
std::vector<ScenarioResult> run_all(const std::vector<Scenario>& scenarios, const IntegratorConfig& cfg = {},
                                    unsigned threads = 0);

struct RankedRow {
  std::string label;
  StrategyMetrics metrics;
};

/// Sorted by final stock, then total catch, both descending. All scenarios
/// must share growth parameters and forcing.
std::vector<RankedRow> compare_strategies(const std::vector<Scenario>& scenarios, const IntegratorConfig& cfg = {});

inline constexpr std::string_view kCsvHeader = "t,N,K,r,effort,harvest_rate";

/// %.12g formatting used by the CSV and JSON writers.
std::string format_number(double v);

void write_csv(std::ostream& os, const Trajectory& traj);
std::vector<Sample> read_csv(std::istream& is);

/// Writes the trajectory CSV to `path` and the metrics to `<path>.metrics.json`.
/// Both files are written to temporaries first and renamed into place.
void emit_csv(const Trajectory& traj, const StrategyMetrics& metrics, const std::filesystem::path& path);

}  // namespace harvestlab
