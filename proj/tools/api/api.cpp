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

#include "api.hpp"

#include <algorithm>
#include <exception>
#include <string>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "harvestlab/periodic.hpp"
#include "harvestlab/scenario_json.hpp"
#include "harvestlab/scenarios.hpp"

namespace harvestlab::api {

using nlohmann::json;

namespace {

Response json_response(int status, const json& body) { return {status, body.dump()}; }

Response error(int status, const std::string& kind, const std::string& message, const std::string& field = {}) {
  json body = {{"error", kind}, {"message", message}};
  if (!field.empty()) body["field"] = field;
  return json_response(status, body);
}

Scenario parse_request(std::string_view body) {
  if (body.size() > kMaxPayloadBytes) throw ValidationError("document", "request body exceeds 1 MB");
  Scenario s = parse_scenario(body);
  if (s.horizon > kMaxHorizonYears)
    throw ValidationError("horizon", "must be <= " + format_number(kMaxHorizonYears) + " years per request");
  return s;
}

}  // namespace

Response error_response() {
  try {
    throw;
  } catch (const ValidationError& e) {
    return error(400, "validation", e.what(), e.field());
  } catch (const HypothesisViolated& e) {
    json body = {{"error", "hypothesis"}, {"message", e.what()}, {"t", round12(e.time())}};
    return json_response(422, body);
  } catch (const ModelError& e) {
    return error(422, "model", e.what());
  } catch (const std::exception& e) {
    return error(500, "internal", e.what());
  } catch (...) {
    return error(500, "internal", "unknown failure");
  }
}

Response handle_health() { return json_response(200, {{"status", "ok"}}); }

Response handle_presets() {
  json out = json::array();
  for (const auto& name : preset_names()) {
    json scenarios = json::array();
    for (const auto& s : preset(name)) scenarios.push_back(to_json(s));
    out.push_back({{"name", name}, {"scenarios", scenarios}});
  }
  return json_response(200, out);
}

Response handle_simulate(std::string_view body, int resolution) {
  try {
    if (resolution < 1 || resolution > kMaxResolution)
      throw ValidationError("resolution", "must be an integer in [1, " + std::to_string(kMaxResolution) + "]");
    const Scenario s = parse_request(body);
    IntegratorConfig cfg;
    cfg.sample_dt = 1.0 / resolution;
    const auto res = run_scenario(s, cfg);
    return json_response(200, {{"label", s.label},
                               {"samples", samples_to_json(res.trajectory.samples)},
                               {"metrics", to_json(res.metrics)},
                               {"events", events_to_json(res.trajectory.events)}});
  } catch (...) {
    return error_response();
  }
}

Response handle_periodic(std::string_view body) {
  try {
    const Scenario s = parse_request(body);
    const HarvestModel model = s.model();
    const auto cert = find_periodic(model);
    const double k0 = model.forcing.k(0.0);
    const auto gas = certify_gas(model, cert, {0.2 * k0, 0.8 * k0});
    json doc = to_json(cert);
    doc["label"] = s.label;
    doc["gas"] = to_json(gas);
    doc["orbit"] = samples_to_json(periodic_orbit(model, cert).samples);
    return json_response(200, doc);
  } catch (...) {
    return error_response();
  }
}

Server::Server(ServerOptions opts) : opts_(std::move(opts)), http_(std::make_unique<httplib::Server>()) {
  auto& srv = *http_;
  const unsigned workers = opts_.workers ? opts_.workers : std::max(2u, sweep_threads());
  srv.new_task_queue = [workers] { return new httplib::ThreadPool(workers); };
  srv.set_payload_max_length(kMaxPayloadBytes);
  srv.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                           {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                           {"Access-Control-Allow-Headers", "Content-Type"}});

  auto send = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  srv.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  srv.Get("/api/health", [send](const httplib::Request&, httplib::Response& res) { send(res, handle_health()); });
  srv.Get("/api/presets", [send](const httplib::Request&, httplib::Response& res) { send(res, handle_presets()); });
  srv.Post("/api/simulate", [send](const httplib::Request& req, httplib::Response& res) {
    int resolution = kDefaultResolution;
    if (req.has_param("resolution")) {
      const std::string raw = req.get_param_value("resolution");
      try {
        std::size_t used = 0;
        resolution = std::stoi(raw, &used);
        if (used != raw.size()) resolution = -1;
      } catch (const std::exception&) {
        resolution = -1;
      }
    }
    send(res, handle_simulate(req.body, resolution));
  });
  srv.Post("/api/periodic",
           [send](const httplib::Request& req, httplib::Response& res) { send(res, handle_periodic(req.body)); });
  srv.set_exception_handler([send](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (...) {
      send(res, error_response());
    }
  });

  if (!opts_.static_dir.empty()) {
    if (!std::filesystem::is_directory(opts_.static_dir))
      throw IoError("static directory not found: " + opts_.static_dir.string());
    if (!srv.set_mount_point("/", opts_.static_dir.string()))
      throw IoError("cannot serve static files from " + opts_.static_dir.string());
  }
}

Server::~Server() { stop(); }

int Server::bind() {
  if (opts_.port == 0)
    bound_port_ = http_->bind_to_any_port(opts_.host);
  else
    bound_port_ = http_->bind_to_port(opts_.host, opts_.port) ? opts_.port : -1;
  if (bound_port_ < 0)
    throw IoError("cannot bind " + opts_.host + ":" + std::to_string(opts_.port));
  return bound_port_;
}

void Server::run() {
  if (bound_port_ < 0) throw IoError("server is not bound");
  http_->listen_after_bind();
}

void Server::stop() {
  if (http_) http_->stop();
}

bool Server::running() const noexcept { return http_ && http_->is_running(); }

}  // namespace harvestlab::api
