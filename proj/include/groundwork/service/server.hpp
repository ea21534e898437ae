/*
 * Copyright 2026 The Groundwork Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <memory>
#include <string>
#include <thread>

#include "groundwork/service/run_manager.hpp"

namespace httplib {
class Server;
}

namespace groundwork {

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  /// Shared bearer token; empty disables the check.
  std::string token;
};

/// HTTP front end over a RunManager.
///
///   POST /v1/runs                     {"query", "config"} -> 201 run status
///   GET  /v1/runs                     all run statuses
///   GET  /v1/runs/{id}                run status
///   GET  /v1/runs/{id}/checklist      pending review document, or the
///                                     compiled checklist once past review
///   POST /v1/runs/{id}/review         decision document
///   GET  /v1/runs/{id}/steps?from=k   committed step records k..current
///   GET  /v1/runs/{id}/report         report.json (?format=markdown)
///   POST /v1/runs/{id}/abort
///   GET  /v1/health
///
/// Errors come back as {"schema": "error/1", "error": <code>, "message"}; a
/// phase conflict adds "phase".
class ApiServer {
 public:
  ApiServer(RunManager& runs, ServerOptions options);
  ~ApiServer();

  /// Binds the socket and returns the port in use.
  int bind();
  /// Serves until stop(). Call bind() first.
  void listen();
  /// bind() plus listen() on a background thread.
  int start();
  void stop();

 private:
  void routes();

  RunManager& runs_;
  ServerOptions options_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace groundwork
