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
#include <span>
#include <string>
#include <vector>

#include "harvestlab/errors.hpp"

namespace harvestlab {

/// Units are tons and years throughout; a month is exactly 1/12 year.
inline constexpr double kMonth = 1.0 / 12.0;
inline constexpr double kDay = 1.0 / 365.0;

/// Below this stock (tons) quota harvesting is suspended.
inline constexpr double kDepletionFloor = 1e-9;

/// Autonomous kernel parameters. `effort` is only read by the autonomous
/// analysis; forced runs take their effort from a HarvestPolicy.
struct GrowthParams {
  double r = 1.0;
  double beta = 0.0;
  double gamma = 1.0;
  double effort = 0.0;

  /// Throws ValidationError unless r > 0, gamma > 0, beta >= 0, effort >= 0.
  void validate() const;

  double effort_ratio() const noexcept { return effort / r; }
  bool has_equilibrium() const noexcept { return effort > 0.0 && effort < r; }

  GrowthParams with_effort(double e) const {
    GrowthParams p = *this;
    p.effort = e;
    return p;
  }
  GrowthParams with_rate(double rate) const {
    GrowthParams p = *this;
    p.r = rate;
    return p;
  }
};

/// baseline * (1 + amplitude * sin(2*pi*(t - phase)/period))
struct SinusoidSpec {
  double baseline = 1.0;
  double amplitude = 0.0;
  double phase = 0.0;
  double period = 1.0;

  void validate(const std::string& field) const;
  double value(double t) const noexcept;
  double derivative(double t) const noexcept;
};

/// Least common multiple of two periods after rationalizing their ratio with
/// denominators up to 1000 (relative 1e-9). Empty when no such fraction fits.
std::optional<double> common_period(double a, double b);

/// Seasonal forcing of r(t) and K(t) with the system period T.
class Forcing {
 public:
  /// Without an explicit period the LCM of the two sinusoid periods is used;
  /// an explicit period must be a common multiple of both (relative 1e-9).
  Forcing(SinusoidSpec r_spec, SinusoidSpec k_spec, std::optional<double> system_period = std::nullopt);

  static Forcing constant(double r0, double k0, double period = 1.0);

  const SinusoidSpec& r_spec() const noexcept { return r_spec_; }
  const SinusoidSpec& k_spec() const noexcept { return k_spec_; }
  double system_period() const noexcept { return period_; }

  double r(double t) const noexcept { return r_spec_.value(t); }
  double k(double t) const noexcept { return k_spec_.value(t); }
  double dk_dt(double t) const noexcept { return k_spec_.derivative(t); }

 private:
  SinusoidSpec r_spec_;
  SinusoidSpec k_spec_;
  double period_;
};

enum class HarvestMode { Effort, Quota };

const char* to_string(HarvestMode mode) noexcept;

/// Rate is 1/year in Effort mode and tons/year in Quota mode.
struct HarvestSegment {
  double start = 0.0;
  double end = 0.0;
  double rate = 0.0;

  friend bool operator==(const HarvestSegment&, const HarvestSegment&) = default;
};

/// Piecewise-constant harvest schedule over one cycle, repeated with that
/// cycle. Outside every segment the rate is zero.
class HarvestPolicy {
 public:
  HarvestPolicy() = default;
  HarvestPolicy(HarvestMode mode, std::vector<HarvestSegment> segments, double cycle);

  static HarvestPolicy none(double cycle = 1.0) { return HarvestPolicy(HarvestMode::Effort, {}, cycle); }
  static HarvestPolicy constant_effort(double effort, double cycle = 1.0);

  HarvestMode mode() const noexcept { return mode_; }
  std::span<const HarvestSegment> segments() const noexcept { return segments_; }
  double cycle() const noexcept { return cycle_; }

  /// Right-continuous rate at time t.
  double rate_at(double t) const noexcept;

  /// First segment boundary strictly after t (infinity for an empty schedule).
  double next_boundary(double t) const noexcept;

  /// Whether t sits on a segment start (SegmentStart) or end (SegmentEnd).
  bool starts_at(double t) const noexcept;
  bool ends_at(double t) const noexcept;

  bool is_zero() const noexcept;

  friend bool operator==(const HarvestPolicy&, const HarvestPolicy&) = default;

 private:
  HarvestMode mode_ = HarvestMode::Effort;
  std::vector<HarvestSegment> segments_;
  double cycle_ = 1.0;
};

struct ModelState {
  double t = 0.0;
  double n = 1.0;
};

/// G(x) = r (1 - x^gamma) / (1 + beta x^gamma).
double growth_kernel(double x, const GrowthParams& p);

/// G1(x) = x (1 - x^gamma) / (1 + beta x^gamma), i.e. x G(x) / r.
double g1(double x, const GrowthParams& p);

/// Golden-section maximizer of g1 on (0, 1).
double g1_argmax(const GrowthParams& p, double tol = 1e-12);

double r_of_t(double t, const Forcing& f) noexcept;
double k_of_t(double t, const Forcing& f) noexcept;
double dk_dt(double t, const Forcing& f) noexcept;

/// E1 = effective effort + K'/K. In Quota mode the effective effort is q/N;
/// throws DepletedStock when N is at or below the depletion floor.
double e1_of_t(double t, const HarvestPolicy& policy, const Forcing& f, double n);

/// dN/dt of the forced harvested model; growth.effort is ignored.
double rhs_n(double t, double n, const GrowthParams& growth, const HarvestPolicy& policy, const Forcing& f);

/// dv/dt for v = ln(N/K).
double rhs_v(double t, double v, const GrowthParams& growth, const HarvestPolicy& policy, const Forcing& f);

/// The assembled forced model. Rate arguments are the policy rate already
/// resolved for the current step, so a step never straddles a discontinuity.
struct HarvestModel {
  GrowthParams growth;
  Forcing forcing = Forcing::constant(1.0, 1.0);
  HarvestPolicy policy;

  double per_capita_growth(double t, double n) const;
  double effective_effort(double n, double rate) const;
  /// Tons/year removed. Quota harvest is zero at or below the depletion floor.
  double harvest_flux(double n, double rate) const;

  double rhs_n(double t, double n, double rate) const;
  double rhs_v(double t, double v, double rate) const;
  double e1(double t, double n, double rate) const;
};

}  // namespace harvestlab
