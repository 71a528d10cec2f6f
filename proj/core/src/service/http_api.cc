// Copyright 2026 The odbot Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "odbot/service/http_api.h"

#include <mutex>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "odbot/service/wire.h"

namespace odbot::service {
namespace {

using nlohmann::json;

constexpr const char* kJson = "application/json";

void Error(httplib::Response& res, int status, const std::string& message) {
  res.status = status;
  res.set_content(json{{"error", message}}.dump(), kJson);
}

}  // namespace

class ChatServer::Impl {
 public:
  Impl(SessionStore& store, ServerOptions options)
      : store_(store), options_(std::move(options)) {
    const int threads = options_.worker_threads;
    server_.new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
    // The library default is SO_REUSEPORT, which lets a second server share a
    // busy port. Only restart reuse is wanted.
    server_.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
    Routes();
  }

  void SetPipeline(std::shared_ptr<const Pipeline> pipeline) {
    std::lock_guard lock(mu_);
    pipeline_ = std::move(pipeline);
  }

  std::shared_ptr<const Pipeline> pipeline() {
    std::lock_guard lock(mu_);
    return pipeline_;
  }

  httplib::Server server_;

  int Bind() {
    if (options_.port == 0) return server_.bind_to_any_port(options_.host);
    return server_.bind_to_port(options_.host, options_.port) ? options_.port : -1;
  }

 private:
  void Routes() {
    server_.set_post_routing_handler([this](const httplib::Request&, httplib::Response& res) {
      if (!options_.allowed_origin.empty()) {
        res.set_header("Access-Control-Allow-Origin", options_.allowed_origin);
        res.set_header("Vary", "Origin");
      }
    });
    server_.Options(R"(/api/.*)", [this](const httplib::Request&, httplib::Response& res) {
      if (!options_.allowed_origin.empty()) {
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
      }
      res.status = 204;
    });

    server_.Get("/api/health", [this](const httplib::Request&, httplib::Response& res) {
      auto p = pipeline();
      if (!p) {
        res.status = 503;
        res.set_content(json{{"status", "loading"}}.dump(), kJson);
        return;
      }
      res.set_content(json{{"status", "ok"}, {"model_version", p->model_version}}.dump(),
                      kJson);
    });

    server_.Post("/api/sessions", [this](const httplib::Request&, httplib::Response& res) {
      if (!pipeline()) return Error(res, 503, "models are still loading");
      res.status = 201;
      res.set_content(json{{"session_id", store_.Create()}}.dump(), kJson);
    });

    server_.Post(R"(/api/sessions/([^/]+)/messages)",
                 [this](const httplib::Request& req, httplib::Response& res) {
                   auto p = pipeline();
                   if (!p) return Error(res, 503, "models are still loading");
                   auto body = json::parse(req.body, nullptr, false);
                   if (body.is_discarded() || !body.is_object() || !body.contains("text") ||
                       !body["text"].is_string()) {
                     return Error(res, 400, "body must be a JSON object with a string 'text'");
                   }
                   try {
                     auto responses = HandleMessage(store_, req.matches[1],
                                                    body["text"].get<std::string>(), *p);
                     res.set_content(ResponsesToJson(responses), kJson);
                   } catch (const SessionNotFound& e) {
                     Error(res, 404, e.what());
                   }
                 });

    server_.Get(R"(/api/sessions/([^/]+)/debug)",
                [this](const httplib::Request& req, httplib::Response& res) {
                  if (!pipeline()) return Error(res, 503, "models are still loading");
                  auto tracker = store_.Snapshot(req.matches[1]);
                  if (!tracker) return Error(res, 404, "unknown or expired session");
                  res.set_content(TrackerToJson(*tracker), kJson);
                });

    server_.set_exception_handler(
        [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
          std::string what = "internal error";
          try {
            std::rethrow_exception(ep);
          } catch (const std::exception& e) {
            what = e.what();
          } catch (...) {
          }
          Error(res, 500, what);
        });
  }

  SessionStore& store_;
  ServerOptions options_;
  std::mutex mu_;
  std::shared_ptr<const Pipeline> pipeline_;
};

ChatServer::ChatServer(SessionStore& store, ServerOptions options)
    : impl_(std::make_unique<Impl>(store, std::move(options))) {}

ChatServer::~ChatServer() { Stop(); }

void ChatServer::SetPipeline(std::shared_ptr<const Pipeline> pipeline) {
  impl_->SetPipeline(std::move(pipeline));
}

int ChatServer::Bind() { return impl_->Bind(); }

bool ChatServer::ListenAfterBind() { return impl_->server_.listen_after_bind(); }

void ChatServer::Stop() {
  if (impl_) impl_->server_.stop();
}

void ChatServer::WaitUntilReady() const { impl_->server_.wait_until_ready(); }

}  // namespace odbot::service
