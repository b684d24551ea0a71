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

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

namespace httplib {
class Server;
}

namespace harvestlab::api {

inline constexpr std::size_t kMaxPayloadBytes = 1 << 20;
inline constexpr double kMaxHorizonYears = 200.0;
inline constexpr int kDefaultResolution = 365;  // samples per year
inline constexpr int kMaxResolution = 3650;

struct Response {
  int status = 200;
  std::string body;
};

// Pure request handlers. Each maps a request body to a status and JSON body
// without touching sockets, so the server and the tests share them.
Response handle_health();
Response handle_presets();
Response handle_simulate(std::string_view body, int resolution = kDefaultResolution);
Response handle_periodic(std::string_view body);

/// Maps an in-flight exception to the error response. Call from a catch block.
Response error_response();

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  ///< 0 picks a free port
  std::filesystem::path static_dir;
  unsigned workers = 0;  ///< 0 uses sweep_threads()
};

class Server {
 public:
  explicit Server(ServerOptions opts);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds the socket; returns the bound port. Throws IoError on failure.
  int bind();
  /// Serves until stop(); bind() must have succeeded.
  void run();
  void stop();
  bool running() const noexcept;

 private:
  ServerOptions opts_;
  std::unique_ptr<httplib::Server> http_;
  int bound_port_ = -1;
};

}  // namespace harvestlab::api
