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

#include "harvestlab/scenario_json.hpp"

#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>

namespace harvestlab {

using nlohmann::json;

double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_number(v).c_str(), nullptr);
}

namespace {

std::string join(const std::string& prefix, const std::string& key) { return prefix.empty() ? key : prefix + "." + key; }

const json& require_object(const json& j, const std::string& field) {
  if (!j.is_object()) throw ValidationError(field.empty() ? "document" : field, "must be a JSON object");
  return j;
}

void reject_unknown(const json& obj, const std::string& prefix, std::initializer_list<const char*> allowed) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ValidationError(join(prefix, key), "unknown key");
  }
}

std::optional<double> number(const json& obj, const std::string& prefix, const char* key, bool required) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) throw ValidationError(join(prefix, key), "missing required number");
    return std::nullopt;
  }
  if (!it->is_number()) throw ValidationError(join(prefix, key), "must be a number");
  return it->get<double>();
}

SinusoidSpec wave_from_json(const json& j, const std::string& field) {
  require_object(j, field);
  reject_unknown(j, field, {"baseline", "amplitude", "phase", "period"});
  SinusoidSpec w;
  w.baseline = *number(j, field, "baseline", true);
  w.amplitude = number(j, field, "amplitude", false).value_or(0.0);
  w.phase = number(j, field, "phase", false).value_or(0.0);
  w.period = number(j, field, "period", false).value_or(1.0);
  w.validate(field);
  return w;
}

json wave_to_json(const SinusoidSpec& w) {
  return {{"baseline", round12(w.baseline)},
          {"amplitude", round12(w.amplitude)},
          {"phase", round12(w.phase)},
          {"period", round12(w.period)}};
}

}  // namespace

Scenario scenario_from_json(const json& doc) {
  require_object(doc, "");
  reject_unknown(doc, "", {"growth", "forcing", "policy", "n0", "horizon", "label"});
  for (const char* key : {"growth", "forcing", "policy"})
    if (!doc.contains(key)) throw ValidationError(key, "missing required object");

  Scenario s;
  const json& g = require_object(doc.at("growth"), "growth");
  reject_unknown(g, "growth", {"r0", "beta", "gamma"});
  s.growth.r = *number(g, "growth", "r0", true);
  s.growth.beta = *number(g, "growth", "beta", true);
  s.growth.gamma = *number(g, "growth", "gamma", true);
  s.growth.effort = 0.0;
  s.growth.validate();

  const json& f = require_object(doc.at("forcing"), "forcing");
  reject_unknown(f, "forcing", {"r", "k", "system_period"});
  if (!f.contains("r")) throw ValidationError("forcing.r", "missing required object");
  if (!f.contains("k")) throw ValidationError("forcing.k", "missing required object");
  const SinusoidSpec r_wave = wave_from_json(f.at("r"), "forcing.r");
  const SinusoidSpec k_wave = wave_from_json(f.at("k"), "forcing.k");
  s.forcing = Forcing(r_wave, k_wave, number(f, "forcing", "system_period", false));
  if (std::abs(r_wave.baseline - s.growth.r) > 1e-12 * s.growth.r)
    throw ValidationError("forcing.r.baseline", "must equal growth.r0");

  const json& p = require_object(doc.at("policy"), "policy");
  reject_unknown(p, "policy", {"mode", "segments"});
  HarvestMode mode = HarvestMode::Effort;
  if (const auto it = p.find("mode"); it != p.end()) {
    if (!it->is_string()) throw ValidationError("policy.mode", "must be \"effort\" or \"quota\"");
    const auto m = it->get<std::string>();
    if (m == "effort")
      mode = HarvestMode::Effort;
    else if (m == "quota")
      mode = HarvestMode::Quota;
    else
      throw ValidationError("policy.mode", "must be \"effort\" or \"quota\", got \"" + m + "\"");
  } else {
    throw ValidationError("policy.mode", "missing required string");
  }
  std::vector<HarvestSegment> segments;
  if (const auto it = p.find("segments"); it != p.end()) {
    if (!it->is_array()) throw ValidationError("policy.segments", "must be an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string field = "policy.segments[" + std::to_string(i) + "]";
      const json& seg = require_object((*it)[i], field);
      reject_unknown(seg, field, {"start", "end", "rate"});
      segments.push_back({*number(seg, field, "start", true), *number(seg, field, "end", true),
                          *number(seg, field, "rate", true)});
    }
  }
  s.policy = HarvestPolicy(mode, std::move(segments), s.forcing.system_period());

  if (auto v = number(doc, "", "n0", false)) s.n0 = *v;
  if (auto v = number(doc, "", "horizon", false)) s.horizon = *v;
  if (const auto it = doc.find("label"); it != doc.end()) {
    if (!it->is_string()) throw ValidationError("label", "must be a string");
    s.label = it->get<std::string>();
  }
  s.validate();
  return s;
}

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("document", std::string("malformed JSON: ") + e.what());
  }
  return scenario_from_json(doc);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot read scenario file " + path.string());
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_scenario(buf.str());
}

json to_json(const Scenario& s) {
  json segments = json::array();
  for (const auto& seg : s.policy.segments())
    segments.push_back({{"start", round12(seg.start)}, {"end", round12(seg.end)}, {"rate", round12(seg.rate)}});
  return {{"growth", {{"r0", round12(s.growth.r)}, {"beta", round12(s.growth.beta)}, {"gamma", round12(s.growth.gamma)}}},
          {"forcing",
           {{"r", wave_to_json(s.forcing.r_spec())},
            {"k", wave_to_json(s.forcing.k_spec())},
            {"system_period", round12(s.forcing.system_period())}}},
          {"policy", {{"mode", to_string(s.policy.mode())}, {"segments", segments}}},
          {"n0", round12(s.n0)},
          {"horizon", round12(s.horizon)},
          {"label", s.label}};
}

json to_json(const StrategyMetrics& m) {
  return {{"n_bar", round12(m.n_bar)},           {"k_bar", round12(m.k_bar)},
          {"min_stock", round12(m.min_stock)},   {"final_stock", round12(m.final_stock)},
          {"total_catch", round12(m.total_catch)}, {"depleted", m.depleted}};
}

json to_json(const PeriodicCertificate& c) {
  return {{"v0_star", round12(c.v0_star)},
          {"n0_of_0", round12(c.n0_of_0)},
          {"residual", round12(c.residual)},
          {"gas_decay", round12(c.gas_decay)},
          {"closure", round12(c.closure)},
          {"amplitude", round12(c.amplitude)},
          {"period", round12(c.period)},
          {"iterations", c.iterations},
          {"bracket",
           {{"b0", round12(c.bracket.b0)},
            {"upper", round12(c.bracket.upper)},
            {"grid_points", c.bracket.grid_points},
            {"grid_min", round12(c.bracket.grid_min)},
            {"argmin_t", round12(c.bracket.argmin_t)}}}};
}

json to_json(const GasReport& g) {
  json entries = json::array();
  for (const auto& e : g.entries) {
    json gaps = json::array();
    for (double v : e.period_gaps) gaps.push_back(round12(v));
    entries.push_back({{"n_start", round12(e.n_start)},
                       {"gap0", round12(e.gap0)},
                       {"gap_final", round12(e.gap_final)},
                       {"ratio", round12(e.ratio)},
                       {"period_gaps", gaps},
                       {"monotone", e.monotone},
                       {"passed", e.passed}});
  }
  return {{"periods", g.periods}, {"entries", entries}, {"all_passed", g.all_passed()}};
}

json samples_to_json(const std::vector<Sample>& samples) {
  json out = json::array();
  for (const auto& s : samples)
    out.push_back({{"t", round12(s.t)},
                   {"N", round12(s.n)},
                   {"K", round12(s.k)},
                   {"r", round12(s.r)},
                   {"effort", round12(s.effort)},
                   {"harvest_rate", round12(s.harvest_rate)}});
  return out;
}

json events_to_json(const std::vector<TrajectoryEvent>& events) {
  json out = json::array();
  for (const auto& e : events) out.push_back({{"t", round12(e.t)}, {"kind", to_string(e.kind)}});
  return out;
}

}  // namespace harvestlab
