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

#include "cli.hpp"

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <pthread.h>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "../api/api.hpp"
#include "harvestlab/autonomous.hpp"
#include "harvestlab/periodic.hpp"
#include "harvestlab/scenario_json.hpp"
#include "harvestlab/scenarios.hpp"

namespace harvestlab::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << is.rdbuf();
  return buf.str();
}

// Loads a scenario file and applies command-line overrides for keys the file
// leaves out. A key present in both keeps the file's value.
Scenario load_with_overrides(const std::string& path, std::optional<double> n0, std::optional<double> horizon,
                             std::ostream& err) {
  const std::string text = read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("document", std::string("malformed JSON in ") + path + ": " + e.what());
  }
  Scenario s = scenario_from_json(doc);
  auto apply = [&](const char* key, std::optional<double> flag, double& slot) {
    if (!flag) return;
    if (doc.contains(key)) {
      err << "warning: " << key << " is set in " << path << " and on the command line; using the config value "
          << format_number(slot) << "\n";
      return;
    }
    slot = *flag;
  };
  apply("n0", n0, s.n0);
  apply("horizon", horizon, s.horizon);
  s.validate();
  return s;
}

void print_metrics_row(std::ostream& out, std::size_t rank, const std::string& label, const StrategyMetrics& m) {
  out << rank << '\t' << label << '\t' << format_number(m.final_stock) << '\t' << format_number(m.total_catch) << '\t'
      << format_number(m.n_bar) << '\t' << format_number(m.min_stock) << '\t' << (m.depleted ? "yes" : "no") << '\n';
}

constexpr const char* kTableHeader = "rank\tlabel\tfinal_stock\ttotal_catch\tn_bar\tmin_stock\tdepleted\n";

int serve(const api::ServerOptions& opts, std::ostream& out) {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);

  api::Server server(opts);
  const int port = server.bind();
  out << "listening on http://" << opts.host << ':' << port << std::endl;

  std::jthread waiter([&] {
    int sig = 0;
    sigwait(&set, &sig);
    server.stop();
  });
  server.run();
  pthread_kill(waiter.native_handle(), SIGTERM);
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"harvestlab: seasonal fishery model toolkit", "harvestlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "harvestlab 0.1.0");

  std::string config, out_path, out_dir, name, static_dir, host = "127.0.0.1";
  std::vector<std::string> configs;
  std::optional<double> n0, horizon;
  double r = 0, beta = 0, gamma = 0, effort = 0;
  int resolution = api::kDefaultResolution, msy_resolution = 1000, port = 8080;

  auto* sim = app.add_subcommand("simulate", "Integrate one scenario file to CSV");
  sim->add_option("--config", config, "Scenario JSON file")->required();
  sim->add_option("--out", out_path, "Output CSV path")->required();
  sim->add_option("--n0", n0, "Initial stock (tons) when the config omits n0");
  sim->add_option("--horizon", horizon, "Horizon (years) when the config omits horizon");
  sim->add_option("--resolution", resolution, "Output samples per year")->check(CLI::Range(1, api::kMaxResolution));

  auto* pre = app.add_subcommand("preset", "Run a named experiment and write one CSV per scenario");
  pre->add_option("--name", name, "Preset name")->required()->check(CLI::IsMember(preset_names()));
  pre->add_option("--out-dir", out_dir, "Output directory")->required();

  auto* eq = app.add_subcommand("equilibrium", "Equilibria and stability of the autonomous model");
  eq->add_option("--r", r, "Intrinsic growth rate (1/year)")->required();
  eq->add_option("--beta", beta, "Crowding penalty")->required();
  eq->add_option("--gamma", gamma, "Crowding exponent")->required();
  eq->add_option("--effort", effort, "Harvest effort (1/year)")->required();

  auto* ms = app.add_subcommand("msy", "Maximum sustainable yield of the autonomous model");
  ms->add_option("--r", r, "Intrinsic growth rate (1/year)")->required();
  ms->add_option("--beta", beta, "Crowding penalty")->required();
  ms->add_option("--gamma", gamma, "Crowding exponent")->required();
  ms->add_option("--resolution", msy_resolution, "Effort grid points")->check(CLI::Range(100, 10'000'000));

  auto* per = app.add_subcommand("periodic", "Find and certify the periodic solution of a scenario");
  per->add_option("--config", config, "Scenario JSON file")->required();

  auto* cmp = app.add_subcommand("compare", "Rank scenarios sharing growth and forcing");
  cmp->add_option("--config", configs, "Scenario JSON files")->required()->expected(1, -1);
  cmp->add_option("--horizon", horizon, "Horizon (years) for configs that omit horizon");
  cmp->add_option("--n0", n0, "Initial stock (tons) for configs that omit n0");

  auto* srv = app.add_subcommand("serve", "Run the HTTP API");
  srv->add_option("--port", port, "TCP port (0 picks a free port)")->check(CLI::Range(0, 65535));
  srv->add_option("--static-dir", static_dir, "Directory of static UI files served at /");
  srv->add_option("--host", host, "Bind address");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sim) {
      const Scenario s = load_with_overrides(config, n0, horizon, err);
      IntegratorConfig cfg;
      cfg.sample_dt = 1.0 / resolution;
      const auto res = run_scenario(s, cfg);
      emit_csv(res.trajectory, res.metrics, out_path);
      out << "wrote " << out_path << " (" << res.trajectory.samples.size() << " samples)\n"
          << to_json(res.metrics).dump(2) << '\n';
    } else if (*pre) {
      const auto scenarios = preset(name);
      const auto results = run_all(scenarios);
      fs::create_directories(out_dir);
      out << kTableHeader;
      for (std::size_t i = 0; i < scenarios.size(); ++i) {
        const fs::path path = fs::path(out_dir) / (scenarios[i].label + ".csv");
        emit_csv(results[i].trajectory, results[i].metrics, path);
        print_metrics_row(out, i + 1, scenarios[i].label, results[i].metrics);
      }
    } else if (*eq) {
      const GrowthParams p{r, beta, gamma, effort};
      const auto rep = equilibrium(p);
      const auto st = local_stability(p);
      out << "x_ge = " << format_number(rep.x_ge) << '\n'
          << "x_le = " << format_number(rep.x_le) << '\n'
          << "y_ge = " << format_number(rep.y_ge) << '\n'
          << "y_le = " << format_number(rep.y_le) << '\n'
          << "phi_prime = " << format_number(st.derivative) << '\n'
          << "stable = " << (st.stable ? "true" : "false") << '\n';
    } else if (*ms) {
      const GrowthParams p{r, beta, gamma, 0.0};
      const auto m = msy(p, msy_resolution);
      out << "E_opt = " << format_number(m.effort) << '\n'
          << "Y_opt = " << format_number(m.yield) << '\n'
          << "x_ge = " << format_number(equilibrium(p.with_effort(m.effort)).x_ge) << '\n';
    } else if (*per) {
      const Scenario s = load_with_overrides(config, std::nullopt, std::nullopt, err);
      const HarvestModel model = s.model();
      const auto cert = find_periodic(model);
      const double k0 = model.forcing.k(0.0);
      json doc = to_json(cert);
      doc["label"] = s.label;
      doc["gas"] = to_json(certify_gas(model, cert, {0.2 * k0, 0.8 * k0}));
      out << doc.dump(2) << '\n';
    } else if (*cmp) {
      std::vector<Scenario> scenarios;
      for (const auto& c : configs) scenarios.push_back(load_with_overrides(c, n0, horizon, err));
      const auto rows = compare_strategies(scenarios);
      out << kTableHeader;
      for (std::size_t i = 0; i < rows.size(); ++i) print_metrics_row(out, i + 1, rows[i].label, rows[i].metrics);
    } else if (*srv) {
      api::ServerOptions opts;
      opts.host = host;
      opts.port = port;
      opts.static_dir = static_dir;
      return serve(opts, out);
    }
  } catch (const ValidationError& e) {
    err << "error: invalid input: " << e.what() << '\n';
    return kUsage;
  } catch (const HypothesisViolated& e) {
    err << "error: " << e.what() << '\n';
    return kModel;
  } catch (const ModelError& e) {
    err << "error: " << e.what() << '\n';
    return kModel;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  }
  return kOk;
}

}  // namespace harvestlab::cli
