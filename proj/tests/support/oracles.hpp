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

// Reference computations used only by tests. Nothing here calls into the
// library's integrator or root finders.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>

namespace harvestlab::oracle {

inline long double kernel(long double x, long double r, long double beta, long double gamma) {
  const long double y = std::pow(x, gamma);
  return r * (1.0L - y) / (1.0L + beta * y);
}

/// Argmax of f on [a, b] by scanning n + 1 equally spaced points.
inline double grid_argmax(const std::function<double(double)>& f, double a, double b, long n) {
  double best_x = a, best = f(a);
  for (long i = 1; i <= n; ++i) {
    const double x = a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
    const double v = f(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  return best_x;
}

/// Root of a function with f(a) > 0 > f(b) (or the reverse) by plain bisection.
inline double bisect(const std::function<double(double)>& f, double a, double b, int iters = 300) {
  double fa = f(a);
  for (int i = 0; i < iters; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if ((fm > 0) == (fa > 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

inline double central_difference(const std::function<double(double)>& f, double x, double h = 1e-6) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Logistic N' = r N (1 - N/K) in closed form.
inline double logistic(double t, double n0, double r, double k) {
  return k / (1.0 + (k / n0 - 1.0) * std::exp(-r * t));
}

/// Fixed-step classical RK4 in long double, independent of the library stepper.
inline long double rk4_fixed(const std::function<long double(long double, long double)>& f, long double y,
                             long double t0, long double t1, long steps) {
  const long double h = (t1 - t0) / steps;
  long double t = t0;
  for (long i = 0; i < steps; ++i) {
    const long double k1 = f(t, y);
    const long double k2 = f(t + h / 2, y + h / 2 * k1);
    const long double k3 = f(t + h / 2, y + h / 2 * k2);
    const long double k4 = f(t + h, y + h * k3);
    y += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    t = t0 + (i + 1) * h;
  }
  return y;
}

/// Seeded generator for property tests.
inline std::mt19937_64 rng(std::uint64_t seed = 20261015) { return std::mt19937_64(seed); }

}  // namespace harvestlab::oracle
