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

#include "harvestlab/autonomous.hpp"

#include <cmath>
#include <string>

namespace harvestlab {

EquilibriumReport equilibrium(const GrowthParams& p) {
  p.validate();
  if (p.effort >= p.r)
    throw NoEquilibrium("no positive equilibrium: effort " + std::to_string(p.effort) + " >= r " +
                        std::to_string(p.r));
  const double es = p.effort_ratio();
  EquilibriumReport rep;
  rep.x_ge = std::pow((1.0 - es) / (1.0 + p.beta * es), 1.0 / p.gamma);
  rep.x_le = std::pow(1.0 - es, 1.0 / p.gamma);
  rep.y_ge = p.effort * rep.x_ge;
  rep.y_le = p.effort * rep.x_le;
  rep.stable = phi_prime(std::log(rep.x_ge), p) < 0.0;
  return rep;
}

double equilibrium_by_bisection(const GrowthParams& p) {
  p.validate();
  if (p.effort >= p.r) throw NoEquilibrium("no positive equilibrium: effort >= r");
  // G is strictly decreasing with G(0) = r > E and G(1) = 0 <= E.
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (growth_kernel(mid, p) > p.effort)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double phi(double u, const GrowthParams& p) noexcept {
  const double y = std::exp(p.gamma * u);
  return p.r * (1.0 - y) / (1.0 + p.beta * y);
}

double phi_prime(double u, const GrowthParams& p) noexcept {
  const double y = std::exp(p.gamma * u);
  const double den = 1.0 + p.beta * y;
  return -p.gamma * p.r * y * (1.0 + p.beta) / (den * den);
}

StabilityReport local_stability(const GrowthParams& p) {
  const auto eq = equilibrium(p);
  const double d = phi_prime(std::log(eq.x_ge), p);
  return {d, d < 0.0};
}

double equilibrium_yield(const GrowthParams& p, double effort) {
  if (!(effort >= 0.0) || effort >= p.r) return 0.0;
  const double es = effort / p.r;
  return effort * std::pow((1.0 - es) / (1.0 + p.beta * es), 1.0 / p.gamma);
}

MsyResult msy(const GrowthParams& p, int resolution) {
  p.validate();
  if (resolution < 100) throw ValidationError("resolution", "must be >= 100");
  constexpr double kMargin = 1e-6;
  const double lo = kMargin, hi = p.r - kMargin;
  const double step = (hi - lo) / resolution;
  int best = 0;
  double best_y = -1.0;
  for (int i = 0; i <= resolution; ++i) {
    const double y = equilibrium_yield(p, lo + i * step);
    if (y > best_y) {
      best_y = y;
      best = i;
    }
  }
  // Y(E) is unimodal on (0, r); refine inside the neighbouring cells.
  double a = lo + std::max(0, best - 1) * step;
  double b = lo + std::min(resolution, best + 1) * step;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = equilibrium_yield(p, c), fd = equilibrium_yield(p, d);
  for (int it = 0; it < 200 && b - a > 1e-14 * p.r; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = equilibrium_yield(p, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = equilibrium_yield(p, d);
    }
  }
  const double e_opt = 0.5 * (a + b);
  return {e_opt, equilibrium_yield(p, e_opt)};
}

ImplicitConstant implicit_constant(double x, double t, const GrowthParams& p) {
  if (!(x > 0.0)) throw DomainError("implicit_constant: x must be > 0");
  p.validate();
  if (p.effort >= p.r) throw NoEquilibrium("implicit_constant: requires effort < r");
  const double es = p.effort_ratio();
  const double alpha = (1.0 + es * p.beta) / (1.0 + p.beta);
  const double xg = std::pow(x, p.gamma);
  const double lhs = es - 1.0 + (p.beta * es + 1.0) * xg;
  const double scale = std::pow(x, alpha * p.gamma) * std::exp(-p.r * alpha * p.gamma * (1.0 - es) * t);
  return {alpha, lhs / scale};
}

double autonomous_rhs(double x, const GrowthParams& p) { return x * (growth_kernel(x, p) - p.effort); }

DeviationForm::DeviationForm(const GrowthParams& p) : p_(p) {
  x_ge_ = equilibrium(p).x_ge;
  y_ge_ = std::pow(x_ge_, p.gamma);
  const double es = p.effort_ratio();
  alpha_ = (1.0 + es * p.beta) / (1.0 + p.beta);
}

double DeviationForm::power_gap(double d) const {
  return y_ge_ * std::expm1(p_.gamma * std::log1p(d / x_ge_));
}

double DeviationForm::rhs(double d) const {
  const double x = x_ge_ + d;
  if (!(x > 0.0)) throw DomainError("DeviationForm: x_ge + d must be > 0");
  const double y = std::pow(x, p_.gamma);
  // G(x) - E = -(r + E beta)(x^gamma - x_ge^gamma) / (1 + beta x^gamma)
  return -x * (p_.r + p_.effort * p_.beta) * power_gap(d) / (1.0 + p_.beta * y);
}

ImplicitConstant DeviationForm::constant(double d, double t) const {
  const double x = x_ge_ + d;
  if (!(x > 0.0)) throw DomainError("DeviationForm: x_ge + d must be > 0");
  const double es = p_.effort_ratio();
  const double lhs = (p_.beta * es + 1.0) * power_gap(d);
  const double scale = std::pow(x, alpha_ * p_.gamma) * std::exp(-p_.r * alpha_ * p_.gamma * (1.0 - es) * t);
  return {alpha_, lhs / scale};
}

}  // namespace harvestlab
