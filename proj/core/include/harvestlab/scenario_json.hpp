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

#include <filesystem>
#include <string_view>

#include <nlohmann/json.hpp>

#include "harvestlab/periodic.hpp"
#include "harvestlab/scenarios.hpp"

namespace harvestlab {

/// Rounds to 12 significant digits, the precision of every emitted number.
double round12(double v);

/// Strict reader for the scenario document:
///   { growth {r0, beta, gamma}, forcing {r {...}, k {...}, system_period?},
///     policy {mode, segments [{start, end, rate}]}, n0?, horizon?, label? }
/// Unknown keys anywhere raise ValidationError naming the key path.
Scenario scenario_from_json(const nlohmann::json& doc);
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

nlohmann::json to_json(const Scenario& s);
nlohmann::json to_json(const StrategyMetrics& m);
nlohmann::json to_json(const PeriodicCertificate& c);
nlohmann::json to_json(const GasReport& g);
nlohmann::json samples_to_json(const std::vector<Sample>& samples);
nlohmann::json events_to_json(const std::vector<TrajectoryEvent>& events);

}  // namespace harvestlab
