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

#include "harvestlab/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace harvestlab {
namespace {

void require_effort_mode(const HarvestModel& model) {
  if (model.policy.mode() != HarvestMode::Effort)
    throw ModelError("periodic analysis needs an effort-mode policy: quota harvesting makes E1 depend on N");
}

double e1_effort(const HarvestModel& model, double t) {
  return model.policy.rate_at(t) + model.forcing.dk_dt(t) / model.forcing.k(t);
}

std::string describe(double t, double r, double e1) {
  std::ostringstream os;
  os.precision(6);
  os << " at t=" << t << " (r=" << r << ", E1=" << e1 << ")";
  return os.str();
}

}  // namespace

Bracket compute_b0(const HarvestModel& model, int grid) {
  require_effort_mode(model);
  if (grid < 2) throw ValidationError("grid", "must be >= 2");
  const double period = model.forcing.system_period();
  const double beta = model.growth.beta, gamma = model.growth.gamma;

  auto bound = [&](double t) {
    const double r = model.forcing.r(t), e1 = e1_effort(model, t);
    return std::log((r - e1) / (r + beta * e1)) / gamma;
  };

  double best = std::numeric_limits<double>::infinity();
  int best_i = 0;
  for (int i = 0; i < grid; ++i) {
    const double t = period * i / grid;
    const double r = model.forcing.r(t), e1 = e1_effort(model, t);
    if (!(r - e1 > 0.0))
      throw HypothesisViolated("existence hypothesis r(t) - E1(t) > 0 violated" + describe(t, r, e1), t);
    if (!(e1 > 0.0))
      throw HypothesisViolated("upper-solution hypothesis E1(t) = E(t) + K'(t)/K(t) > 0 violated" + describe(t, r, e1),
                               t);
    const double v = bound(t);
    if (v < best) {
      best = v;
      best_i = i;
    }
  }

  // Golden-section refinement on the two cells around the grid argmin.
  const double cell = period / grid;
  double a = (best_i - 1) * cell, b = (best_i + 1) * cell;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = bound(c), fd = bound(d);
  for (int it = 0; it < 100 && b - a > 1e-12 * period; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = bound(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = bound(d);
    }
  }
  double argmin = best_i * cell;
  const double refined_t = 0.5 * (a + b);
  const double refined = bound(refined_t);
  if (refined < best) {
    best = refined;
    argmin = refined_t;
  }

  Bracket br;
  br.grid_points = grid;
  br.grid_min = best;
  br.argmin_t = argmin;
  br.b0 = best - kBracketMargin;
  br.upper = 0.0;
  return br;
}

double poincare_map(double v0, const HarvestModel& model, const IntegratorConfig& cfg) {
  return flow_v(v0, 0.0, model.forcing.system_period(), model, cfg);
}

PeriodicCertificate find_periodic(const HarvestModel& model, const IntegratorConfig& cfg,
                                  std::optional<SearchInterval> search) {
  const Bracket br = compute_b0(model);
  const double period = model.forcing.system_period();
  auto g = [&](double v) { return poincare_map(v, model, cfg) - v; };

  double lo = br.b0, hi = -kUpperOffset;
  if (search) {
    lo = std::max(search->lo, br.b0);
    hi = std::min(search->hi, -kUpperOffset);
  }
  double g_lo = g(lo), g_hi = g(hi);
  if (!(g_lo > 0.0 && g_hi < 0.0)) {
    std::ostringstream os;
    os << "P(v) - v has no sign change on [" << lo << ", " << hi << "]: g(lo)=" << g_lo << ", g(hi)=" << g_hi;
    throw NoSignChange(os.str());
  }

  PeriodicCertificate cert;
  cert.bracket = br;
  cert.period = period;
  int it = 0;
  for (; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= 1e-14) break;
    const double gm = g(mid);
    if (gm > 0.0)
      lo = mid;
    else if (gm < 0.0)
      hi = mid;
    else {
      lo = hi = mid;
      break;
    }
  }
  cert.iterations = it;
  cert.v0_star = 0.5 * (lo + hi);
  cert.residual = std::abs(g(cert.v0_star));
  cert.n0_of_0 = model.forcing.k(0.0) * std::exp(cert.v0_star);

  const double v_lo = flow_v(br.b0, 0.0, 5.0 * period, model, cfg);
  const double v_hi = flow_v(-kUpperOffset, 0.0, 5.0 * period, model, cfg);
  cert.gas_decay = std::abs(v_hi - v_lo) / std::abs(-kUpperOffset - br.b0);

  const Trajectory orbit = periodic_orbit(model, cert, cfg);
  double n_min = orbit.steps.front().n, n_max = n_min;
  for (const auto& s : orbit.steps) {
    n_min = std::min(n_min, s.n);
    n_max = std::max(n_max, s.n);
  }
  cert.amplitude = n_max - n_min;
  cert.closure = std::abs(orbit.steps.back().n - cert.n0_of_0);
  return cert;
}

Trajectory periodic_orbit(const HarvestModel& model, const PeriodicCertificate& cert, const IntegratorConfig& cfg) {
  return integrate(ModelState{0.0, cert.n0_of_0}, model.forcing.system_period(), model, cfg);
}

bool GasReport::all_passed() const noexcept {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.passed; });
}

GasReport certify_gas(const HarvestModel& model, const PeriodicCertificate& cert, const std::vector<double>& starts,
                      const IntegratorConfig& cfg, int periods) {
  if (periods < 1) throw ValidationError("periods", "must be >= 1");
  const double period = model.forcing.system_period();

  std::vector<double> orbit(periods + 1);
  orbit[0] = cert.n0_of_0;
  for (int k = 0; k < periods; ++k) orbit[k + 1] = flow_n(orbit[k], k * period, (k + 1) * period, model, cfg);

  GasReport rep;
  rep.periods = periods;
  for (double start : starts) {
    if (!(start > 0.0)) throw DomainError("certify_gas: starts must be > 0");
    GasEntry e;
    e.n_start = start;
    double n = start;
    e.period_gaps.push_back(std::abs(n - orbit[0]));
    for (int k = 0; k < periods; ++k) {
      n = flow_n(n, k * period, (k + 1) * period, model, cfg);
      e.period_gaps.push_back(std::abs(n - orbit[k + 1]));
    }
    e.gap0 = e.period_gaps.front();
    e.gap_final = e.period_gaps.back();
    e.ratio = e.gap0 > 0.0 ? e.gap_final / e.gap0 : 0.0;
    for (std::size_t i = 1; i < e.period_gaps.size(); ++i)
      if (e.period_gaps[i] > e.period_gaps[i - 1]) e.monotone = false;
    e.passed = e.gap0 == 0.0 || e.ratio <= 0.1;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace harvestlab
