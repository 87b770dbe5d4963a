// Copyright 2026 The Regret Manager Authors
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

#ifndef REGRET_MANAGER_SERVER_H_
#define REGRET_MANAGER_SERVER_H_

#include <memory>
#include <string>

#include "regret_manager/harness.h"
#include "regret_manager/session.h"

namespace regret_manager {

struct HttpReply {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

// Routes one REST request. Sessions are created from `default_scenario`
// unless the request body carries its own "scenario".
//
//   POST /sessions                      {"human_player"?, "scenario"?}
//   GET  /sessions/{id}/view?player=P
//   POST /sessions/{id}/baseline        {"player", "action"}
//   POST /sessions/{id}/advance         {"follow_suggestion"?, "close_only"?}
//   POST /sessions/{id}/autoplay
//   GET  /sessions/{id}/trace           (CSV)
//
// Players and actions are 1-based labels; numbers may be sent as JSON
// numbers or decimal strings.
HttpReply HandleHttp(SessionManager& sessions, const Scenario& default_scenario,
                     const std::string& method, const std::string& target,
                     const std::string& body);

struct ServerOptions {
  std::string address = "127.0.0.1";
  // 0 picks a free port.
  unsigned short port = 8080;
  // Seconds a phase may wait on the human before their scenario policy
  // plays for them; 0 waits forever.
  double autoplay_seconds = 0;
};

// HTTP and WebSocket front end on one port. WebSocket clients connect to
// /sessions/{id}/ws and receive that session's messages.
class SessionServer {
 public:
  SessionServer(Scenario default_scenario, ServerOptions options);
  ~SessionServer();

  // Binds and listens; throws boost::system::system_error when the port
  // is taken.
  unsigned short Listen();
  // Serves on the calling thread until Stop().
  void Run();
  // Listen() plus Run() on a background thread.
  unsigned short Start();
  void Stop();

  unsigned short port() const;
  SessionManager& sessions();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace regret_manager

#endif  // REGRET_MANAGER_SERVER_H_
