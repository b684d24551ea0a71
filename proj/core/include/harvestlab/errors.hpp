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

#include <stdexcept>
#include <string>

namespace harvestlab {

/// Base class for every error raised by the model layer.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (x < 0, N <= 0, ...).
class DomainError : public ModelError {
 public:
  using ModelError::ModelError;
};

/// Invalid parameter set or scenario document. `field` names the offending
/// key path (e.g. "forcing.k.amplitude") when one is known.
class ValidationError : public ModelError {
 public:
  ValidationError(std::string field, const std::string& message)
      : ModelError(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// The autonomous model has no positive equilibrium (E >= r).
class NoEquilibrium : public ModelError {
 public:
  using ModelError::ModelError;
};

/// A model hypothesis (E1 > 0, r - E1 > 0) fails somewhere on the period.
class HypothesisViolated : public ModelError {
 public:
  HypothesisViolated(const std::string& message, double where)
      : ModelError(message), time_(where) {}

  /// Time (years) of the first grid point where the hypothesis fails.
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Bisection bracket does not contain a sign change of P(v) - v.
class NoSignChange : public ModelError {
 public:
  using ModelError::ModelError;
};

/// Step-halving control exhausted its halving budget.
class StepUnderflow : public ModelError {
 public:
  StepUnderflow(const std::string& message, double where)
      : ModelError(message), time_(where) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Raised by the quota model when the effective per-capita effort q/N is
/// requested at or below the depletion floor.
class DepletedStock : public ModelError {
 public:
  using ModelError::ModelError;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace harvestlab
