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

#include <optional>
#include <vector>

#include "harvestlab/integrator.hpp"
#include "harvestlab/model.hpp"

namespace harvestlab {

/// Log-ratio bracket (b0, 0) for the periodic solution of the v-equation.
struct Bracket {
  double b0 = 0.0;
  double upper = 0.0;
  int grid_points = 0;
  double grid_min = 0.0;  ///< (1/gamma) min_t ln[(r - E1)/(r + beta E1)]
  double argmin_t = 0.0;
};

/// Margin subtracted from the grid minimum to obtain b0.
inline constexpr double kBracketMargin = 0.01;
/// Upper bisection endpoint is -kUpperOffset instead of 0.
inline constexpr double kUpperOffset = 1e-12;

/// Lower end b0 of the bracket from the minimum over one period of
/// (1/gamma) ln[(r - E1)/(r + beta E1)], sampled on `grid` points and refined
/// by golden section around the grid argmin. Effort-mode policies only.
/// Throws HypothesisViolated if r(t) - E1(t) <= 0 or E1(t) <= 0 anywhere.
Bracket compute_b0(const HarvestModel& model, int grid = 10000);

/// v(T) for v(0) = v0, T the system period.
double poincare_map(double v0, const HarvestModel& model, const IntegratorConfig& cfg = {});

struct PeriodicCertificate {
  double v0_star = 0.0;
  double n0_of_0 = 0.0;     ///< K(0) e^{v0_star}, tons
  double residual = 0.0;    ///< |P(v0*) - v0*|
  double gas_decay = 0.0;   ///< |v1 - v2| at 5T over |v1 - v2| at 0, starts at the bracket ends
  double closure = 0.0;     ///< |N0(T) - N0(0)| by re-integration in N-coordinates, tons
  double amplitude = 0.0;   ///< max_t N0 - min_t N0 over one period, tons
  double period = 0.0;
  int iterations = 0;
  Bracket bracket;
};

struct SearchInterval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Bisection on g(v0) = P(v0) - v0. Without `search` the interval is
/// (b0, -kUpperOffset); throws NoSignChange if g does not change sign on it.
PeriodicCertificate find_periodic(const HarvestModel& model, const IntegratorConfig& cfg = {},
                                  std::optional<SearchInterval> search = std::nullopt);

/// One period of the certified orbit sampled on the configured output grid.
Trajectory periodic_orbit(const HarvestModel& model, const PeriodicCertificate& cert, const IntegratorConfig& cfg = {});

struct GasEntry {
  double n_start = 0.0;
  double gap0 = 0.0;
  double gap_final = 0.0;
  double ratio = 0.0;
  std::vector<double> period_gaps;  ///< |N(kT) - N0(kT)|, k = 0..periods
  bool monotone = true;
  bool passed = false;
};

struct GasReport {
  int periods = 5;
  std::vector<GasEntry> entries;
  bool all_passed() const noexcept;
};

/// Gap |N(t) - N0(t)| to the periodic orbit at each period boundary for every
/// start. A start passes when the gap at `periods` T is at most 0.1 of the
/// initial gap (a zero initial gap passes trivially).
GasReport certify_gas(const HarvestModel& model, const PeriodicCertificate& cert, const std::vector<double>& starts,
                      const IntegratorConfig& cfg = {}, int periods = 5);

}  // namespace harvestlab
