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

// Acceptance run: one PASS/FAIL line per primary criterion. Exit status is
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "harvestlab/autonomous.hpp"
#include "harvestlab/integrator.hpp"
#include "harvestlab/periodic.hpp"
#include "harvestlab/scenarios.hpp"
#include "oracles.hpp"

using namespace harvestlab;

namespace {

int failures = 0;

void report(bool pass, const std::string& name, const std::string& detail) {
  std::printf("%s  %-34s %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<GrowthParams> kKernels = {{1, 0, 1, 0.5}, {1, 0.2, 5, 0.3}, {1, 4, 0.5, 0.4}};
const double kStarts[] = {0.1, 0.5, 1.5};

// Autonomous model on the unit carrying capacity, stepped by the library integrator.
double autonomous_state(const GrowthParams& p, double x0, double t) {
  const HarvestModel m{p, Forcing::constant(p.r, 1.0), HarvestPolicy::constant_effort(p.effort)};
  return flow_n(x0, 0.0, t, m);
}

std::string kernel_name(const GrowthParams& p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(b=%g,g=%g,E=%g)", p.beta, p.gamma, p.effort);
  return buf;
}

void convergence(bool harvested) {
  bool pass = true;
  std::string detail;
  for (auto p : kKernels) {
    if (!harvested) p.effort = 0.0;
    const double target = harvested ? equilibrium(p).x_ge : 1.0;
    double worst = 0.0, slowest = 0.0;
    for (double x0 : kStarts) {
      const auto t0 = std::chrono::steady_clock::now();
      worst = std::max(worst, std::abs(autonomous_state(p, x0, 50.0) - target));
      slowest = std::max(slowest, seconds_since(t0));
    }
    const bool ok = worst < 1e-6 && slowest < 1.0;
    pass = pass && ok;
    detail += kernel_name(p) + " max|x(50)-x*|=" + fmt("%.2e", worst) + (ok ? "" : " [x]") + " ";
  }
  report(pass, harvested ? "autonomous convergence" : "unharvested limit", detail);
}

void implicit_conservation() {
  double worst = 0.0;
  std::vector<GrowthParams> cases = kKernels;
  for (auto p : kKernels) cases.push_back(p.with_effort(0.0));
  const IntegratorConfig cfg{};  // tol 1e-10
  for (const auto& p : cases) {
    const DeviationForm dev(p);
    for (double x0 : {0.1, 0.5, 0.9, 1.5}) {
      double d = x0 - dev.x_ge();
      const double c0 = dev.constant(d, 0.0).c_value;
      for (int k = 1; k <= 100; ++k) {
        d = ode::advance([&](double) { return [&](double, double y) { return dev.rhs(y); }; },
                         [](double) { return std::numeric_limits<double>::infinity(); }, (k - 1) * 0.1, d, k * 0.1,
                         cfg);
        worst = std::max(worst, std::abs(dev.constant(d, k * 0.1).c_value / c0 - 1.0));
      }
    }
  }
  report(worst < 1e-5, "implicit-solution conservation",
         "max relative drift of C on [0,10] = " + fmt("%.2e", worst) + " (24 trajectories)");
}

void closed_form_vs_oracle() {
  auto gen = oracle::rng(404);
  std::uniform_real_distribution<double> r_d(0.2, 3.0), b_d(0.0, 5.0), g_d(0.2, 6.0), e_d(0.01, 0.99);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double r = r_d(gen);
    const GrowthParams p{r, b_d(gen), g_d(gen), e_d(gen) * r};
    const double root = oracle::bisect([&](double x) { return growth_kernel(x, p) - p.effort; }, 0.0, 1.0);
    worst = std::max(worst, std::abs(equilibrium(p).x_ge - root));
  }
  report(worst < 1e-10, "closed-form vs bisection equilibrium", "max |diff| over 100 draws = " + fmt("%.2e", worst));
}

// E1(t) > 0 on a 10^4-point grid, decided from parameters alone (effort mode).
bool e1_positive_on_grid(const Scenario& s) {
  if (s.policy.mode() != HarvestMode::Effort) return false;
  const double period = s.forcing.system_period();
  for (int i = 0; i < 10000; ++i) {
    const double t = period * i / 10000.0;
    if (!(s.policy.rate_at(t) + s.forcing.dk_dt(t) / s.forcing.k(t) > 0.0)) return false;
  }
  return s.n0 < s.forcing.k(0.0);
}

void envelope() {
  bool pass = true;
  std::string covered, skipped;
  for (const auto& name : preset_names()) {
    for (const auto& s : preset(name)) {
      if (!e1_positive_on_grid(s)) {
        skipped += s.label + " ";
        continue;
      }
      const auto res = run_scenario(s);
      const auto rep = check_envelope(res.trajectory, s.forcing);
      pass = pass && rep.holds;
      covered += s.label + (rep.holds ? "" : "[x]") + " ";
    }
  }
  report(pass && !covered.empty(), "envelope invariant 0<N<K", "checked: " + covered + "| E1>0 fails: " + skipped);
}

// Seasonal demonstration case: fig2 kernel N2 with alpha_K = 0.04, E = 0.3.
HarvestModel periodic_case() { return preset("fig2")[1].model(); }

void periodic_solution(PeriodicCertificate& cert_out) {
  const auto m = periodic_case();
  const auto t0 = std::chrono::steady_clock::now();
  const auto cert = find_periodic(m);
  const double elapsed = seconds_since(t0);
  const double k0 = m.forcing.k(0.0);
  const bool inside = cert.n0_of_0 > k0 * std::exp(cert.bracket.b0) && cert.n0_of_0 < k0;
  const bool pass = cert.residual < 1e-8 && inside && cert.closure < 1e-8 * 100.0 && elapsed < 10.0;
  report(pass, "periodic solution",
         "residual=" + fmt("%.2e", cert.residual) + " N0(0)=" + fmt("%.6f", cert.n0_of_0) + " in (" +
             fmt("%.4f", k0 * std::exp(cert.bracket.b0)) + ", " + fmt("%g", k0) + ") closure=" +
             fmt("%.2e", cert.closure) + " time=" + fmt("%.2fs", elapsed));
  cert_out = cert;
}

void global_attraction(const PeriodicCertificate& cert) {
  const auto m = periodic_case();
  const double k0 = m.forcing.k(0.0);
  const auto rep = certify_gas(m, cert, {0.2 * k0, 0.8 * k0});
  std::string detail;
  for (const auto& e : rep.entries)
    detail += "N(0)=" + fmt("%g", e.n_start) + " gap(5T)/gap(0)=" + fmt("%.2e", e.ratio) + " ";
  report(rep.all_passed(), "global attraction", detail);
}

std::vector<double> n_bars(const char* name, std::vector<double>* k_bars = nullptr) {
  std::vector<double> out;
  for (const auto& r : run_all(preset(name))) {
    out.push_back(r.metrics.n_bar);
    if (k_bars) k_bars->push_back(r.metrics.k_bar);
  }
  return out;
}

double relative_spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  return (*hi - *lo) / mean;
}

void figures() {
  std::vector<double> k3;
  const auto n3 = n_bars("fig3", &k3);
  bool below = true;
  for (std::size_t i = 0; i < n3.size(); ++i) below = below && n3[i] <= k3[i];
  report(n3[0] > n3[1] && n3[1] > n3[2] && below, "fig3 capacity-amplitude ordering",
         "Nbar(aK=0.1,0.5,0.7) = " + fmt("%.3f", n3[0]) + " > " + fmt("%.3f", n3[1]) + " > " + fmt("%.3f", n3[2]) +
             "; Nbar<=Kbar " + (below ? "on all" : "violated"));

  const auto n4 = n_bars("fig4");
  const double spread4 = relative_spread(n4);
  report(spread4 < 0.05, "fig4 rate-amplitude insensitivity",
         "relative spread of Nbar over aR=0.1,0.5,0.9 = " + fmt("%.4f", spread4) + " (< 0.05)");

  const auto n5 = n_bars("fig5");
  double mean3 = (n3[0] + n3[1] + n3[2]) / 3.0, diff = 0.0;
  for (std::size_t i = 0; i < n3.size(); ++i) diff = std::max(diff, std::abs(n5[i] - n3[i]));
  const double profile = diff / mean3;
  report(profile > spread4, "fig5 phase effect",
         "max|Nbar(180deg)-Nbar(0deg)|/mean = " + fmt("%.4f", profile) + " vs fig4 spread " + fmt("%.4f", spread4));

  const auto st = run_all(preset("fig6-static"));
  const auto ad = run_all(preset("fig7-adaptive"));
  const double sept = st[2].metrics.final_stock, march = ad[1].metrics.final_stock;
  const double year_round = st[0].metrics.final_stock;
  const bool march_ok = march >= sept;
  const bool lowest = year_round < st[1].metrics.final_stock && year_round < st[2].metrics.final_stock;
  report(march_ok && lowest, "figs6-7 strategy ordering",
         "final stock: March 4t x3=" + fmt("%.3f", march) + (march_ok ? " >= " : " < ") + "Sept 4t x3=" +
             fmt("%.3f", sept) + "; year-round 12t=" + fmt("%.3f", year_round) + ", June 2t x6=" +
             fmt("%.3f", st[1].metrics.final_stock) + (lowest ? " (year-round lowest)" : " (year-round NOT lowest)"));
}

void richardson() {
  const GrowthParams p{1.0, 0.2, 5.0, 0.3};
  auto solve = [&](double h) {
    IntegratorConfig cfg;
    cfg.h = h;
    cfg.tol = 1e3;  // every step accepted: fixed-step RK4 at h/2
    return ode::advance([&](double) { return [&](double, double x) { return autonomous_rhs(x, p); }; },
                        [](double) { return std::numeric_limits<double>::infinity(); }, 0.0, 0.1, 2.0, cfg);
  };
  const double y1 = solve(0.2), y2 = solve(0.1), y4 = solve(0.05);
  const double order = std::log2(std::abs(y1 - y2) / std::abs(y2 - y4));
  report(order >= 3.8 && order <= 4.2, "integrator order", "Richardson estimate = " + fmt("%.3f", order));
}

}  // namespace

int main() {
  convergence(true);
  convergence(false);
  implicit_conservation();
  closed_form_vs_oracle();
  envelope();
  PeriodicCertificate cert;
  periodic_solution(cert);
  global_attraction(cert);
  figures();
  richardson();
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
