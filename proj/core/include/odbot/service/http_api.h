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

#ifndef ODBOT_SERVICE_HTTP_API_H_
#define ODBOT_SERVICE_HTTP_API_H_

#include <memory>
#include <string>

#include "odbot/service/pipeline.h"
#include "odbot/service/session_store.h"

namespace odbot::service {

struct ServerOptions {
  std::string host = "0.0.0.0";
  int port = 5005;
  // Value for Access-Control-Allow-Origin; empty disables CORS headers.
  std::string allowed_origin;
  int worker_threads = 8;
};

// JSON API over a SessionStore:
//
//   POST /api/sessions                    -> {"session_id": ...}
//   POST /api/sessions/{id}/messages      {"text": ...} -> {"responses": [...]}
//   GET  /api/sessions/{id}/debug         -> tracker snapshot
//   GET  /api/health                      -> {"status":"ok","model_version":...}
//
// Until a pipeline is installed every endpoint answers 503.
class ChatServer {
 public:
  ChatServer(SessionStore& store, ServerOptions options);
  ~ChatServer();
  ChatServer(const ChatServer&) = delete;
  ChatServer& operator=(const ChatServer&) = delete;

  void SetPipeline(std::shared_ptr<const Pipeline> pipeline);

  // Binds options.host on options.port (0 picks a free port) and returns the
  // bound port, or -1 on failure.
  int Bind();
  // Serves until Stop(); returns false if the listener failed.
  bool ListenAfterBind();
  void Stop();
  void WaitUntilReady() const;

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace odbot::service

#endif  // ODBOT_SERVICE_HTTP_API_H_
