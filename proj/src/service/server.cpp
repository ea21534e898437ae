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

#include "groundwork/service/server.hpp"

#include <httplib.h>

#include "groundwork/core/error.hpp"

namespace groundwork {

namespace {

constexpr const char* kJson = "application/json";

void send_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(2) + "\n", kJson);
}

void send_error(httplib::Response& res, int status, std::string_view code,
                const std::string& message, std::optional<Phase> phase = std::nullopt) {
  Json body = {{"schema", "error/1"}, {"error", code}, {"message", message}};
  if (phase) body["phase"] = to_string(*phase);
  send_json(res, status, body);
}

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownRun: return 404;
    case ErrorCode::kWrongPhase: return 409;
    case ErrorCode::kConfigInvalid:
    case ErrorCode::kInvalidDecision:
    case ErrorCode::kInvalidWeights:
    case ErrorCode::kPrecondition: return 400;
    default: return 500;
  }
}

/// Runs `fn` and turns exceptions into error payloads.
template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const PhaseError& e) {
    send_error(res, 409, to_string(e.code()), e.what(), e.phase());
  } catch (const Error& e) {
    send_error(res, http_status(e.code()), to_string(e.code()), e.what());
  } catch (const Json::exception& e) {
    send_error(res, 400, "bad-request", e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, "internal", e.what());
  }
}

}  // namespace

ApiServer::ApiServer(RunManager& runs, ServerOptions options)
    : runs_(runs), options_(std::move(options)), server_(std::make_unique<httplib::Server>()) {
  routes();
}

ApiServer::~ApiServer() { stop(); }

void ApiServer::routes() {
  auto& s = *server_;
  const std::string token = options_.token;
  s.set_pre_routing_handler([token](const httplib::Request& req, httplib::Response& res) {
    if (token.empty() || req.path == "/v1/health") return httplib::Server::HandlerResponse::Unhandled;
    if (req.get_header_value("Authorization") != "Bearer " + token) {
      send_error(res, 401, "unauthorized", "missing or wrong bearer token");
      return httplib::Server::HandlerResponse::Handled;
    }
    return httplib::Server::HandlerResponse::Unhandled;
  });

  s.Get("/v1/health", [](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, Json{{"status", "ok"}});
  });

  s.Post("/v1/runs", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string id = runs_.create(Json::parse(req.body));
      send_json(res, 201, Json(runs_.status(id)));
    });
  });

  s.Get("/v1/runs", [this](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] {
      Json all = Json::array();
      for (const auto& st : runs_.list()) all.push_back(st);
      send_json(res, 200, Json{{"runs", all}});
    });
  });

  s.Get(R"(/v1/runs/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, Json(runs_.status(req.matches[1]))); });
  });

  s.Get(R"(/v1/runs/([^/]+)/checklist)",
        [this](const httplib::Request& req, httplib::Response& res) {
          guarded(res, [&] {
            const std::string id = req.matches[1];
            if (runs_.status(id).phase == Phase::kAwaitingReview) {
              Json doc = runs_.pending_review(id);
              send_json(res, 200, doc);
            } else {
              send_json(res, 200, runs_.checklist(id));
            }
          });
        });

  s.Post(R"(/v1/runs/([^/]+)/review)",
         [this](const httplib::Request& req, httplib::Response& res) {
           guarded(res, [&] {
             const std::string id = req.matches[1];
             DecisionDocument decision;
             try {
               decision = Json::parse(req.body).get<DecisionDocument>();
             } catch (const std::exception& e) {
               throw Error(ErrorCode::kInvalidDecision, e.what());
             }
             const PostResult result = runs_.post_decision(id, decision);
             const RunStatus status = runs_.status(id);
             Json body = {{"result", to_string(result)}, {"status", status}};
             if (result == PostResult::kAccepted || result == PostResult::kDuplicate) {
               send_json(res, 200, body);
             } else {
               body["schema"] = "error/1";
               body["error"] = to_string(result);
               body["phase"] = to_string(status.phase);
               send_json(res, 409, body);
             }
           });
         });

  s.Get(R"(/v1/runs/([^/]+)/steps)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      int from = 0;
      if (req.has_param("from")) {
        try {
          from = std::stoi(req.get_param_value("from"));
        } catch (const std::exception&) {
          throw Error(ErrorCode::kPrecondition, "from must be an integer");
        }
      }
      send_json(res, 200, runs_.steps(req.matches[1], from));
    });
  });

  s.Get(R"(/v1/runs/([^/]+)/report)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const bool markdown =
          req.has_param("format") && req.get_param_value("format") == "markdown";
      res.status = 200;
      res.set_content(runs_.report(req.matches[1], markdown),
                      markdown ? "text/markdown; charset=utf-8" : kJson);
    });
  });

  s.Post(R"(/v1/runs/([^/]+)/abort)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, Json(runs_.abort(req.matches[1]))); });
  });
}

int ApiServer::bind() {
  if (options_.port == 0) {
    port_ = server_->bind_to_any_port(options_.host);
  } else {
    port_ = server_->bind_to_port(options_.host, options_.port) ? options_.port : -1;
  }
  if (port_ < 0) {
    throw Error(ErrorCode::kPrecondition, "cannot bind " + options_.host + ":" +
                                              std::to_string(options_.port));
  }
  return port_;
}

void ApiServer::listen() { server_->listen_after_bind(); }

int ApiServer::start() {
  const int port = bind();
  thread_ = std::thread([this] { listen(); });
  server_->wait_until_ready();
  return port;
}

void ApiServer::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace groundwork
