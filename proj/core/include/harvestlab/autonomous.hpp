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

#include "harvestlab/model.hpp"

namespace harvestlab {

/// Equilibria of dx/dt = x (G(x) - E) and of its beta = 0 counterpart.
struct EquilibriumReport {
  double x_ge = 0.0;  ///< food-limited equilibrium ((1-E*)/(1+beta E*))^(1/gamma)
  double x_le = 0.0;  ///< Richards-logistic equilibrium (1-E*)^(1/gamma)
  double y_ge = 0.0;  ///< E * x_ge
  double y_le = 0.0;  ///< E * x_le
  bool stable = true;
};

struct StabilityReport {
  double derivative = 0.0;  ///< Phi'(ln x_ge)
  bool stable = true;
};

struct MsyResult {
  double effort = 0.0;
  double yield = 0.0;
};

/// Constant of the implicit solution
///   E* - 1 + (beta E* + 1) x^gamma = C x^(alpha gamma) exp(-r alpha gamma (1 - E*) t)
/// with alpha = (1 + E* beta) / (1 + beta).
struct ImplicitConstant {
  double alpha = 1.0;
  double c_value = 0.0;
};

/// Requires 0 <= E < r; throws NoEquilibrium otherwise.
EquilibriumReport equilibrium(const GrowthParams& p);

/// Root of G(x) = E by bisection on (0, 1]: 200 iterations, |dx| <= 1e-14.
double equilibrium_by_bisection(const GrowthParams& p);

/// Phi(u) = r (1 - e^(gamma u)) / (1 + beta e^(gamma u)), u = ln x.
double phi(double u, const GrowthParams& p) noexcept;
double phi_prime(double u, const GrowthParams& p) noexcept;

StabilityReport local_stability(const GrowthParams& p);

/// Maximum of E x_ge(E) over E in (0, r): grid scan at `resolution` points,
/// then golden-section refinement around the best cell.
MsyResult msy(const GrowthParams& p, int resolution = 1000);

/// Equilibrium yield E x_ge(E) for E in [0, r); zero outside.
double equilibrium_yield(const GrowthParams& p, double effort);

ImplicitConstant implicit_constant(double x, double t, const GrowthParams& p);

/// Autonomous right-hand side dx/dt = x (G(x) - E).
double autonomous_rhs(double x, const GrowthParams& p);

/// The autonomous model written for the offset d = x - x_ge. Near the
/// equilibrium x itself cannot resolve the gap, so long runs that need the
/// implicit constant to full relative accuracy integrate d instead.
class DeviationForm {
 public:
  explicit DeviationForm(const GrowthParams& p);

  double x_ge() const noexcept { return x_ge_; }
  double rhs(double d) const;
  ImplicitConstant constant(double d, double t) const;

 private:
  /// x^gamma - x_ge^gamma without cancellation
  double power_gap(double d) const;

  GrowthParams p_;
  double x_ge_ = 1.0;
  double y_ge_ = 1.0;
  double alpha_ = 1.0;
};

}  // namespace harvestlab
