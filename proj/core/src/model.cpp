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

#include "harvestlab/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace harvestlab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_finite(double v) { return std::isfinite(v); }

// Is `multiple` an integer multiple of `base` to relative 1e-9?
bool is_multiple_of(double multiple, double base) {
  const double ratio = multiple / base;
  const double nearest = std::round(ratio);
  return nearest >= 1.0 && std::abs(ratio - nearest) <= 1e-9 * nearest;
}

double kernel_unchecked(double x, double r, double beta, double gamma) {
  const double y = std::pow(x, gamma);
  return r * (1.0 - y) / (1.0 + beta * y);
}

}  // namespace

void GrowthParams::validate() const {
  if (!(r > 0.0) || !is_finite(r)) throw ValidationError("growth.r0", "must be a finite value > 0");
  if (!(gamma > 0.0) || !is_finite(gamma)) throw ValidationError("growth.gamma", "must be a finite value > 0");
  if (!(beta >= 0.0) || !is_finite(beta)) throw ValidationError("growth.beta", "must be a finite value >= 0");
  if (!(effort >= 0.0) || !is_finite(effort)) throw ValidationError("effort", "must be a finite value >= 0");
}

void SinusoidSpec::validate(const std::string& field) const {
  if (!(baseline > 0.0) || !is_finite(baseline))
    throw ValidationError(field + ".baseline", "must be a finite value > 0");
  if (!(amplitude >= 0.0 && amplitude < 1.0))
    throw ValidationError(field + ".amplitude", "must lie in [0, 1) so the forced quantity stays positive");
  if (!is_finite(phase)) throw ValidationError(field + ".phase", "must be finite");
  if (!(period > 0.0) || !is_finite(period)) throw ValidationError(field + ".period", "must be a finite value > 0");
}

double SinusoidSpec::value(double t) const noexcept {
  return baseline * (1.0 + amplitude * std::sin(kTwoPi * (t - phase) / period));
}

double SinusoidSpec::derivative(double t) const noexcept {
  const double w = kTwoPi / period;
  return baseline * amplitude * w * std::cos(w * (t - phase));
}

std::optional<double> common_period(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) return std::nullopt;
  const double ratio = a / b;
  // Continued-fraction convergents p/q of a/b.
  double x = ratio;
  double p_prev = 1.0, q_prev = 0.0;
  double p = std::floor(x), q = 1.0;
  for (int i = 0; i < 64; ++i) {
    if (std::abs(p / q - ratio) <= 1e-9 * ratio) return q * a;
    const double frac = x - std::floor(x);
    if (frac < 1e-15) break;
    x = 1.0 / frac;
    const double digit = std::floor(x);
    const double p_next = digit * p + p_prev;
    const double q_next = digit * q + q_prev;
    if (q_next > 1000.0) break;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
  }
  if (std::abs(p / q - ratio) <= 1e-9 * ratio) return q * a;
  return std::nullopt;
}

Forcing::Forcing(SinusoidSpec r_spec, SinusoidSpec k_spec, std::optional<double> system_period)
    : r_spec_(r_spec), k_spec_(k_spec), period_(0.0) {
  r_spec_.validate("forcing.r");
  k_spec_.validate("forcing.k");
  if (system_period) {
    const double t = *system_period;
    if (!(t > 0.0) || !is_finite(t)) throw ValidationError("forcing.system_period", "must be a finite value > 0");
    if (!is_multiple_of(t, r_spec_.period) || !is_multiple_of(t, k_spec_.period))
      throw ValidationError("forcing.system_period", "must be a common multiple of the r and K periods");
    period_ = t;
  } else {
    const auto lcm = common_period(r_spec_.period, k_spec_.period);
    if (!lcm)
      throw ValidationError("forcing.system_period",
                            "r and K periods have no common multiple with denominator <= 1000; supply system_period");
    period_ = *lcm;
  }
}

Forcing Forcing::constant(double r0, double k0, double period) {
  return Forcing(SinusoidSpec{r0, 0.0, 0.0, period}, SinusoidSpec{k0, 0.0, 0.0, period});
}

const char* to_string(HarvestMode mode) noexcept { return mode == HarvestMode::Effort ? "effort" : "quota"; }

HarvestPolicy::HarvestPolicy(HarvestMode mode, std::vector<HarvestSegment> segments, double cycle)
    : mode_(mode), segments_(std::move(segments)), cycle_(cycle) {
  if (!(cycle_ > 0.0) || !is_finite(cycle_)) throw ValidationError("policy.cycle", "must be a finite value > 0");
  const double eps = 1e-12 * cycle_;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    const std::string field = "policy.segments[" + std::to_string(i) + "]";
    if (!is_finite(s.start) || !is_finite(s.end) || !is_finite(s.rate))
      throw ValidationError(field, "start, end and rate must be finite");
    if (s.rate < 0.0) throw ValidationError(field + ".rate", "must be >= 0");
    if (s.start < -eps || s.end > cycle_ + eps)
      throw ValidationError(field, "must lie within one system period [0, " + std::to_string(cycle_) + "]");
    if (!(s.start < s.end)) throw ValidationError(field, "start must be < end");
    if (i > 0 && s.start < segments_[i - 1].end - eps)
      throw ValidationError(field, "segments must be sorted and non-overlapping");
  }
}

HarvestPolicy HarvestPolicy::constant_effort(double effort, double cycle) {
  return HarvestPolicy(HarvestMode::Effort, {HarvestSegment{0.0, cycle, effort}}, cycle);
}

namespace {

// Position of t inside the cycle, snapped so values within eps of the cycle
// end wrap to zero.
double wrap(double t, double cycle) {
  double tau = t - std::floor(t / cycle) * cycle;
  if (cycle - tau <= 1e-12 * cycle) tau = 0.0;
  return tau;
}

}  // namespace

double HarvestPolicy::rate_at(double t) const noexcept {
  const double eps = 1e-12 * cycle_;
  const double tau = wrap(t, cycle_);
  for (const auto& s : segments_)
    if (s.start - eps <= tau && tau < s.end - eps) return s.rate;
  return 0.0;
}

namespace {

double rate_left_of(std::span<const HarvestSegment> segs, double tau, double cycle) {
  const double eps = 1e-12 * cycle;
  const double probe = tau <= eps ? cycle : tau;
  for (const auto& s : segs)
    if (s.start + eps < probe && probe <= s.end + eps) return s.rate;
  return 0.0;
}

}  // namespace

double HarvestPolicy::next_boundary(double t) const noexcept {
  if (segments_.empty()) return std::numeric_limits<double>::infinity();
  const double eps = 1e-12 * std::max(1.0, std::abs(t));
  const double base = std::floor(t / cycle_) * cycle_;
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j <= 1; ++j) {
    const double offset = base + j * cycle_;
    for (const auto& s : segments_) {
      for (double edge : {s.start, s.end}) {
        const double tau = wrap(edge, cycle_);
        if (rate_left_of(segments_, tau, cycle_) == rate_at(tau)) continue;
        const double b = offset + edge;
        if (b > t + eps) best = std::min(best, b);
      }
    }
  }
  return best;
}

bool HarvestPolicy::starts_at(double t) const noexcept {
  const double tau = wrap(t, cycle_);
  const double eps = 1e-9 * cycle_;
  const double snapped = std::min(tau, cycle_ - tau) <= eps ? 0.0 : tau;
  const double right = rate_at(snapped);
  return right > 0.0 && right != rate_left_of(segments_, snapped, cycle_);
}

bool HarvestPolicy::ends_at(double t) const noexcept {
  const double tau = wrap(t, cycle_);
  const double eps = 1e-9 * cycle_;
  const double snapped = std::min(tau, cycle_ - tau) <= eps ? 0.0 : tau;
  const double left = rate_left_of(segments_, snapped, cycle_);
  const double right = rate_at(snapped);
  return left > 0.0 && left != right;
}

bool HarvestPolicy::is_zero() const noexcept {
  return std::all_of(segments_.begin(), segments_.end(), [](const auto& s) { return s.rate == 0.0; });
}

double growth_kernel(double x, const GrowthParams& p) {
  if (!(x >= 0.0)) throw DomainError("growth_kernel: stock ratio must be >= 0");
  return kernel_unchecked(x, p.r, p.beta, p.gamma);
}

double g1(double x, const GrowthParams& p) { return x * growth_kernel(x, p) / p.r; }

double g1_argmax(const GrowthParams& p, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0, b = 1.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = g1(c, p), fd = g1(d, p);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = g1(c, p);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = g1(d, p);
    }
  }
  return 0.5 * (a + b);
}

double r_of_t(double t, const Forcing& f) noexcept { return f.r(t); }
double k_of_t(double t, const Forcing& f) noexcept { return f.k(t); }
double dk_dt(double t, const Forcing& f) noexcept { return f.dk_dt(t); }

double e1_of_t(double t, const HarvestPolicy& policy, const Forcing& f, double n) {
  const double rate = policy.rate_at(t);
  double effective = rate;
  if (policy.mode() == HarvestMode::Quota) {
    if (!(n > kDepletionFloor)) throw DepletedStock("e1_of_t: quota effort q/N undefined at the depletion floor");
    effective = rate / n;
  }
  return effective + f.dk_dt(t) / f.k(t);
}

double rhs_n(double t, double n, const GrowthParams& growth, const HarvestPolicy& policy, const Forcing& f) {
  const HarvestModel model{growth, f, policy};
  return model.rhs_n(t, n, policy.rate_at(t));
}

double rhs_v(double t, double v, const GrowthParams& growth, const HarvestPolicy& policy, const Forcing& f) {
  const HarvestModel model{growth, f, policy};
  return model.rhs_v(t, v, policy.rate_at(t));
}

double HarvestModel::per_capita_growth(double t, double n) const {
  const double x = n / forcing.k(t);
  return kernel_unchecked(x, forcing.r(t), growth.beta, growth.gamma);
}

double HarvestModel::effective_effort(double n, double rate) const {
  if (policy.mode() == HarvestMode::Effort) return rate;
  return n > kDepletionFloor ? rate / n : 0.0;
}

double HarvestModel::harvest_flux(double n, double rate) const {
  if (policy.mode() == HarvestMode::Effort) return rate * n;
  return n > kDepletionFloor ? rate : 0.0;
}

double HarvestModel::rhs_n(double t, double n, double rate) const {
  if (!(n > 0.0)) throw DomainError("rhs_n: stock must be > 0");
  return n * per_capita_growth(t, n) - harvest_flux(n, rate);
}

double HarvestModel::rhs_v(double t, double v, double rate) const {
  const double y = std::exp(v * growth.gamma);
  const double r = forcing.r(t);
  double effort = rate;
  if (policy.mode() == HarvestMode::Quota) effort = effective_effort(forcing.k(t) * std::exp(v), rate);
  return r * (1.0 - y) / (1.0 + growth.beta * y) - (effort + forcing.dk_dt(t) / forcing.k(t));
}

double HarvestModel::e1(double t, double n, double rate) const {
  if (policy.mode() == HarvestMode::Quota && !(n > kDepletionFloor))
    throw DepletedStock("e1: quota effort q/N undefined at the depletion floor");
  return effective_effort(n, rate) + forcing.dk_dt(t) / forcing.k(t);
}

}  // namespace harvestlab
