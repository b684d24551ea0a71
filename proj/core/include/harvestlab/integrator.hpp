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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "harvestlab/errors.hpp"
#include "harvestlab/model.hpp"

namespace harvestlab {

struct IntegratorConfig {
  double h = 1.0 / 1200.0;       ///< base step, years
  double tol = 1e-10;            ///< |y_h - y_{h/2}| <= tol * max(1, |y|)
  int max_halvings = 20;
  double sample_dt = kDay;       ///< output grid spacing, years

  void validate() const;
};

enum class EventKind { Depletion, SegmentStart, SegmentEnd };

const char* to_string(EventKind kind) noexcept;

struct TrajectoryEvent {
  double t = 0.0;
  EventKind kind = EventKind::SegmentStart;
};

struct Sample {
  double t = 0.0;
  double n = 0.0;
  double k = 0.0;
  double r = 0.0;
  double effort = 0.0;        ///< effective per-capita effort, 1/year
  double harvest_rate = 0.0;  ///< tons/year
  double dn_dt = 0.0;         ///< slope used for Hermite resampling
};

struct Trajectory {
  std::vector<Sample> samples;  ///< output grid
  std::vector<Sample> steps;    ///< every accepted step, including segment boundaries
  std::vector<TrajectoryEvent> events;
  double total_catch = 0.0;     ///< tons

  bool depleted() const noexcept;
};

namespace ode {

template <class F>
double rk4_step(const F& f, double t, double y, double h) {
  const double k1 = f(t, y);
  const double k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
  const double k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
  const double k4 = f(t + h, y + h * k3);
  return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

namespace detail {

template <class F>
double advance_halving(const F& f, double t, double y, double span, const IntegratorConfig& cfg, int depth) {
  const double full = rk4_step(f, t, y, span);
  const double half = 0.5 * span;
  const double mid = rk4_step(f, t, y, half);
  const double two_halves = rk4_step(f, t + half, mid, half);
  const double err = std::abs(full - two_halves);
  if (err <= cfg.tol * std::max(1.0, std::abs(two_halves))) return two_halves;
  if (depth >= cfg.max_halvings || !std::isfinite(err))
    throw StepUnderflow("step-halving budget exhausted near t=" + std::to_string(t), t);
  const double left = advance_halving(f, t, y, half, cfg, depth + 1);
  return advance_halving(f, t + half, left, half, cfg, depth + 1);
}

}  // namespace detail

/// Advances y' = f(t, y) from t over exactly `span`, halving the step until
/// the step-doubling error estimate passes. The result is the two-half-step
/// value, so the scheme stays fourth order.
template <class F>
double controlled_advance(const F& f, double t, double y, double span, const IntegratorConfig& cfg) {
  if (span == 0.0) return y;
  return detail::advance_halving(f, t, y, span, cfg, 0);
}

/// Steps from t0 to t1 with base step cfg.h, landing exactly on t1 and on
/// every breakpoint reported by `next_break(t)`. `make_rhs(t_mid)` returns the
/// right-hand side valid on the step containing t_mid.
template <class MakeRhs, class NextBreak>
double advance(const MakeRhs& make_rhs, const NextBreak& next_break, double t0, double y0, double t1,
               const IntegratorConfig& cfg) {
  double t = t0, y = y0;
  while (t < t1) {
    double target = std::min({t + cfg.h, static_cast<double>(next_break(t)), t1});
    if (t1 - target <= 1e-12 * std::max(1.0, std::abs(t1))) target = t1;
    const auto f = make_rhs(0.5 * (t + target));
    y = controlled_advance(f, t, y, target - t, cfg);
    t = target;
  }
  return y;
}

}  // namespace ode

/// Integrates the forced harvested model in N-coordinates from `state0` to
/// `t_end`. Steps are clipped to policy breakpoints and output sample times;
/// in Quota mode a crossing of the depletion floor is located by bisection
/// and harvesting is suspended until the next breakpoint.
Trajectory integrate(const ModelState& state0, double t_end, const HarvestModel& model,
                     const IntegratorConfig& cfg = {});

/// One flow of the v = ln(N/K) equation from (t0, v0) to t1.
double flow_v(double v0, double t0, double t1, const HarvestModel& model, const IntegratorConfig& cfg = {});

/// One flow of the N equation from (t0, n0) to t1 without recording samples.
double flow_n(double n0, double t0, double t1, const HarvestModel& model, const IntegratorConfig& cfg = {});

/// Cubic Hermite interpolation of the accepted steps at the given times.
std::vector<Sample> resample(const Trajectory& traj, const std::vector<double>& times, const HarvestModel& model);

struct EnvelopeReport {
  bool holds = true;             ///< 0 < N(t) < K(t) at every sample and step
  bool hypotheses_met = true;    ///< E1(t) > 0 throughout and N(0) < K(0)
  double first_violation = NAN;  ///< time of the first envelope violation
  std::string note;
};

/// Checks the envelope 0 < N < K along a trajectory. E1 is reconstructed from
/// the recorded effective effort and the forcing.
EnvelopeReport check_envelope(const Trajectory& traj, const Forcing& f);

}  // namespace harvestlab
