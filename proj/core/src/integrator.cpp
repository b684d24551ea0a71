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

#include "harvestlab/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace harvestlab {

void IntegratorConfig::validate() const {
  if (!(h > 0.0) || !std::isfinite(h)) throw ValidationError("integrator.h", "must be a finite value > 0");
  if (!(tol > 0.0)) throw ValidationError("integrator.tol", "must be > 0");
  if (max_halvings < 0) throw ValidationError("integrator.max_halvings", "must be >= 0");
  if (!(sample_dt > 0.0) || !std::isfinite(sample_dt))
    throw ValidationError("integrator.sample_dt", "must be a finite value > 0");
}

const char* to_string(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::Depletion:
      return "depletion";
    case EventKind::SegmentStart:
      return "segment_start";
    case EventKind::SegmentEnd:
      return "segment_end";
  }
  return "unknown";
}

bool Trajectory::depleted() const noexcept {
  return std::any_of(events.begin(), events.end(), [](const auto& e) { return e.kind == EventKind::Depletion; });
}

namespace {

bool near(double a, double b) {
  return std::isfinite(b) && std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b));
}

// Right-hand side for the stepper. Trial stages may dip to or below zero
// stock, so the harvest term is kept continuous through the floor; the
// floor-crossing logic rejects such steps before they are accepted.
struct StepRhs {
  const HarvestModel* model;
  double rate;
  bool harvest_on;

  double operator()(double t, double n) const {
    const double growth = n > 0.0 ? n * model->per_capita_growth(t, n) : n * model->forcing.r(t);
    if (!harvest_on) return growth;
    return model->policy.mode() == HarvestMode::Effort ? growth - rate * n : growth - rate;
  }
};

Sample make_sample(const HarvestModel& model, double t, double n, bool harvest_on) {
  const double rate = harvest_on ? model.policy.rate_at(t) : 0.0;
  Sample s;
  s.t = t;
  s.n = n;
  s.k = model.forcing.k(t);
  s.r = model.forcing.r(t);
  s.effort = model.effective_effort(n, rate);
  s.harvest_rate = model.harvest_flux(n, rate);
  s.dn_dt = StepRhs{&model, rate, harvest_on}(t, n);
  return s;
}

}  // namespace

Trajectory integrate(const ModelState& state0, double t_end, const HarvestModel& model, const IntegratorConfig& cfg) {
  cfg.validate();
  if (!(state0.n > 0.0)) throw DomainError("integrate: initial stock must be > 0");
  if (!(t_end > state0.t)) throw DomainError("integrate: t_end must exceed the start time");

  const bool quota = model.policy.mode() == HarvestMode::Quota;
  const double t0 = state0.t;
  Trajectory traj;
  double t = t0, n = state0.n;
  bool harvest_on = true;
  if (quota && n <= kDepletionFloor) harvest_on = false;

  if (model.policy.starts_at(t0)) traj.events.push_back({t0, EventKind::SegmentStart});
  traj.samples.push_back(make_sample(model, t, n, harvest_on));
  traj.steps.push_back(traj.samples.back());

  long long out_index = 1;
  auto next_output = [&] { return t0 + static_cast<double>(out_index) * cfg.sample_dt; };

  while (t < t_end && !near(t, t_end)) {
    const double out_t = next_output();
    const double brk = model.policy.next_boundary(t);
    double target = std::min({t + cfg.h, out_t, brk, t_end});
    // Merge targets that differ only by rounding so no sliver steps appear.
    bool hit_end = near(target, t_end) || t_end <= target;
    bool hit_brk = near(target, brk) || brk <= target;
    bool hit_out = near(target, out_t) || out_t <= target;
    if (hit_end) target = t_end;
    else if (hit_brk) target = brk;

    const double rate = model.policy.rate_at(0.5 * (t + target));
    StepRhs f{&model, rate, harvest_on};
    double y = ode::controlled_advance(f, t, n, target - t, cfg);

    bool depleted_now = false;
    if (quota && harvest_on && rate > 0.0 && y <= kDepletionFloor) {
      // Bisect the crossing time of the floor inside the step.
      double lo = 0.0, hi = target - t;
      while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        const double ym = ode::controlled_advance(f, t, n, mid, cfg);
        if (ym > kDepletionFloor)
          lo = mid;
        else
          hi = mid;
      }
      const double cross = t + hi;
      if (cross < target) {
        target = cross;
        hit_end = hit_brk = hit_out = false;
      }
      y = kDepletionFloor;
      depleted_now = true;
    }

    const double dt = target - t;
    if (harvest_on) {
      if (quota)
        traj.total_catch += rate * dt;
      else
        traj.total_catch += rate * 0.5 * (n + y) * dt;
    }
    t = target;
    n = y;
    if (depleted_now) {
      traj.events.push_back({t, EventKind::Depletion});
      harvest_on = false;
    }
    if (hit_brk) {
      if (model.policy.ends_at(t)) traj.events.push_back({t, EventKind::SegmentEnd});
      if (model.policy.starts_at(t)) traj.events.push_back({t, EventKind::SegmentStart});
      if (!harvest_on && n > kDepletionFloor) harvest_on = true;
    }
    traj.steps.push_back(make_sample(model, t, n, harvest_on));
    if (hit_out && !hit_end) {
      traj.samples.push_back(traj.steps.back());
      ++out_index;
    }
    if (hit_end) t = t_end;
  }
  // Final sample at t_end, whether or not it falls on the output grid.
  if (traj.samples.back().t != traj.steps.back().t) traj.samples.push_back(traj.steps.back());
  return traj;
}

double flow_v(double v0, double t0, double t1, const HarvestModel& model, const IntegratorConfig& cfg) {
  cfg.validate();
  auto make_rhs = [&](double t_mid) {
    const double rate = model.policy.rate_at(t_mid);
    return [&model, rate](double t, double v) { return model.rhs_v(t, v, rate); };
  };
  auto next_break = [&](double t) { return model.policy.next_boundary(t); };
  return ode::advance(make_rhs, next_break, t0, v0, t1, cfg);
}

double flow_n(double n0, double t0, double t1, const HarvestModel& model, const IntegratorConfig& cfg) {
  cfg.validate();
  auto make_rhs = [&](double t_mid) { return StepRhs{&model, model.policy.rate_at(t_mid), true}; };
  auto next_break = [&](double t) { return model.policy.next_boundary(t); };
  return ode::advance(make_rhs, next_break, t0, n0, t1, cfg);
}

std::vector<Sample> resample(const Trajectory& traj, const std::vector<double>& times, const HarvestModel& model) {
  std::vector<Sample> out;
  out.reserve(times.size());
  const auto& steps = traj.steps;
  if (steps.empty()) return out;
  for (double t : times) {
    auto it = std::lower_bound(steps.begin(), steps.end(), t, [](const Sample& s, double v) { return s.t < v; });
    Sample s;
    if (it != steps.end() && it->t == t) {
      s = *it;
    } else if (it == steps.begin() || it == steps.end()) {
      s = it == steps.end() ? steps.back() : steps.front();
      s.t = t;
    } else {
      const Sample& b = *it;
      const Sample& a = *(it - 1);
      const double h = b.t - a.t;
      const double u = (t - a.t) / h;
      const double u2 = u * u, u3 = u2 * u;
      const double h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u;
      const double h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;
      const double n = h00 * a.n + h10 * h * a.dn_dt + h01 * b.n + h11 * h * b.dn_dt;
      const bool on = a.harvest_rate > 0.0 || model.policy.rate_at(t) == 0.0 ||
                      model.policy.mode() == HarvestMode::Effort;
      s = make_sample(model, t, n, on);
    }
    out.push_back(s);
  }
  return out;
}

EnvelopeReport check_envelope(const Trajectory& traj, const Forcing& f) {
  EnvelopeReport rep;
  if (traj.steps.empty() && traj.samples.empty()) return rep;
  const auto& first = traj.samples.empty() ? traj.steps.front() : traj.samples.front();
  if (!(first.n < first.k)) {
    rep.hypotheses_met = false;
    rep.note = "N(0) >= K(0)";
  }
  auto visit = [&](const Sample& s) {
    const double e1 = s.effort + f.dk_dt(s.t) / f.k(s.t);
    if (!(e1 > 0.0) && rep.hypotheses_met) {
      rep.hypotheses_met = false;
      rep.note = "E1(t) <= 0 at t=" + std::to_string(s.t);
    }
    if (!(s.n > 0.0 && s.n < s.k) && rep.holds) {
      rep.holds = false;
      rep.first_violation = s.t;
    }
  };
  for (const auto& s : traj.samples) visit(s);
  for (const auto& s : traj.steps) visit(s);
  if (!rep.hypotheses_met) rep.note = "envelope hypotheses unmet: " + rep.note;
  return rep;
}

}  // namespace harvestlab
