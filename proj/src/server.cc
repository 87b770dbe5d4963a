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

#include "regret_manager/server.h"

#include <chrono>
#include <deque>
#include <sstream>
#include <thread>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "regret_manager/error.h"
#include "regret_manager/scenario.h"
#include "regret_manager/trace.h"

namespace regret_manager {
namespace {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;
using nlohmann::json;

int StatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotFound:
      return 404;
    case ErrorCode::kWrongPhase:
    case ErrorCode::kDuplicateSubmission:
      return 409;
    case ErrorCode::kIllegalAction:
      return 422;
    default:
      return 400;
  }
}

HttpReply JsonReply(int status, const json& body) { return {status, "application/json", body.dump()}; }

HttpReply ErrorReply(int status, std::string_view code, const std::string& message) {
  return JsonReply(status, {{"error", {{"code", std::string(code)}, {"message", message}}}});
}

std::vector<std::string> SplitPath(const std::string& path) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(path);
  while (std::getline(in, part, '/')) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

std::string QueryValue(const std::string& query, const std::string& key) {
  std::istringstream in(query);
  std::string pair;
  while (std::getline(in, pair, '&')) {
    const auto eq = pair.find('=');
    if (pair.substr(0, eq) == key) return eq == std::string::npos ? "" : pair.substr(eq + 1);
  }
  return {};
}

int ParseLabel(const std::string& text, const std::string& field) {
  try {
    size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kSchema, "$." + field + ": expected an integer");
}

int LabelField(const json& body, const std::string& field) {
  if (!body.contains(field)) throw Error(ErrorCode::kSchema, "$." + field + ": missing required field");
  const json& v = body.at(field);
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_string()) return ParseLabel(v.get<std::string>(), field);
  throw Error(ErrorCode::kSchema, "$." + field + ": expected an integer");
}

bool FlagField(const json& body, const std::string& field, bool fallback) {
  if (!body.contains(field)) return fallback;
  const json& v = body.at(field);
  if (v.is_boolean()) return v.get<bool>();
  if (v == "true") return true;
  if (v == "false") return false;
  throw Error(ErrorCode::kSchema, "$." + field + ": expected a boolean");
}

json ParseBody(const std::string& body) {
  if (body.empty()) return json::object();
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSchema, std::string("$: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kSchema, "$: expected an object");
  return j;
}

HttpReply Route(SessionManager& sessions, const Scenario& default_scenario,
                const std::string& method, const std::string& path,
                const std::string& query, const std::string& body) {
  const auto parts = SplitPath(path);
  if (parts.empty() || parts[0] != "sessions") {
    return ErrorReply(404, "not_found", "no route for " + path);
  }
  if (parts.size() == 1) {
    if (method == "POST") {
      const json req = ParseBody(body);
      Scenario scenario = req.contains("scenario") ? ParseScenario(req.at("scenario"))
                                                   : default_scenario;
      std::optional<int> human;
      if (req.contains("human_player")) human = LabelField(req, "human_player") - 1;
      auto session = sessions.Create(scenario, human);
      return JsonReply(201, {{"session", session->id()},
                             {"view", session->View(session->human_player())}});
    }
    if (method == "GET") {
      json ids = json::array();
      for (const auto& s : sessions.All()) ids.push_back(s->id());
      return JsonReply(200, {{"sessions", ids}});
    }
    return ErrorReply(405, "method_not_allowed", method + " " + path);
  }
  auto session = sessions.Find(parts[1]);
  const std::string action = parts.size() > 2 ? parts[2] : "view";
  if (parts.size() > 3) return ErrorReply(404, "not_found", "no route for " + path);
  if (method == "GET" && action == "view") {
    const std::string p = QueryValue(query, "player");
    const int player = p.empty() ? session->human_player() : ParseLabel(p, "player") - 1;
    return JsonReply(200, session->View(player));
  }
  if (method == "GET" && action == "trace") {
    std::ostringstream out;
    WriteTraceCsv(session->ExportTrace(), out);
    return {200, "text/csv", out.str()};
  }
  if (method == "POST" && action == "baseline") {
    const json req = ParseBody(body);
    return JsonReply(200, session->SubmitBaseline(LabelField(req, "player") - 1,
                                                  LabelField(req, "action")));
  }
  if (method == "POST" && action == "advance") {
    const json req = ParseBody(body);
    return JsonReply(200, session->Advance(FlagField(req, "follow_suggestion", true),
                                           FlagField(req, "close_only", false)));
  }
  if (method == "POST" && action == "autoplay") {
    return JsonReply(200, session->AutoplayStep());
  }
  return ErrorReply(404, "not_found", "no route for " + method + " " + path);
}

// ---- transport ----

class WsConnection : public std::enable_shared_from_this<WsConnection> {
 public:
  WsConnection(tcp::socket socket, std::shared_ptr<Session> session)
      : ws_(std::move(socket)), session_(std::move(session)) {}

  ~WsConnection() {
    if (token_) session_->Unsubscribe(token_);
  }

  void Run(http::request<http::string_body> req) {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(req, [self = shared_from_this()](beast::error_code ec) {
      if (ec) return;
      std::weak_ptr<WsConnection> weak = self;
      auto executor = self->ws_.get_executor();
      self->token_ = self->session_->Subscribe([weak, executor](const std::string& text) {
        net::post(executor, [weak, text] {
          if (auto conn = weak.lock()) conn->Send(text);
        });
      });
      self->Read();
    });
  }

 private:
  void Read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) {
        self->session_->Unsubscribe(self->token_);
        self->token_ = 0;
        return;
      }
      self->buffer_.consume(self->buffer_.size());
      self->Read();
    });
  }

  void Send(const std::string& text) {
    outbox_.push_back(text);
    if (outbox_.size() == 1) Write();
  }

  void Write() {
    ws_.text(true);
    ws_.async_write(net::buffer(outbox_.front()),
                    [self = shared_from_this()](beast::error_code ec, std::size_t) {
                      if (ec) return;
                      self->outbox_.pop_front();
                      if (!self->outbox_.empty()) self->Write();
                    });
  }

  websocket::stream<beast::tcp_stream> ws_;
  std::shared_ptr<Session> session_;
  beast::flat_buffer buffer_;
  std::deque<std::string> outbox_;
  int token_ = 0;
};

class HttpConnection : public std::enable_shared_from_this<HttpConnection> {
 public:
  HttpConnection(tcp::socket socket, SessionManager& sessions, const Scenario& scenario)
      : stream_(std::move(socket)), sessions_(sessions), scenario_(scenario) {}

  void Run() { Read(); }

 private:
  void Read() {
    req_ = {};
    stream_.expires_after(std::chrono::seconds(60));
    http::async_read(stream_, buffer_, req_,
                     [self = shared_from_this()](beast::error_code ec, std::size_t) {
                       if (ec) return;
                       self->Dispatch();
                     });
  }

  void Dispatch() {
    const std::string target(req_.target());
    const auto qpos = target.find('?');
    const std::string path = target.substr(0, qpos);
    if (websocket::is_upgrade(req_)) {
      const auto parts = SplitPath(path);
      std::shared_ptr<Session> session;
      if (parts.size() == 3 && parts[0] == "sessions" && parts[2] == "ws") {
        try {
          session = sessions_.Find(parts[1]);
        } catch (const Error&) {
        }
      }
      if (session) {
        stream_.expires_never();
        std::make_shared<WsConnection>(stream_.release_socket(), session)->Run(std::move(req_));
        return;
      }
      Respond(ErrorReply(404, "not_found", "no session socket at " + path));
      return;
    }
    if (req_.method() == http::verb::options) {
      Respond({204, "text/plain", ""});
      return;
    }
    Respond(HandleHttp(sessions_, scenario_, std::string(req_.method_string()), target,
                       req_.body()));
  }

  void Respond(const HttpReply& reply) {
    auto res = std::make_shared<http::response<http::string_body>>(
        static_cast<http::status>(reply.status), req_.version());
    res->set(http::field::server, "regret_manager");
    res->set(http::field::content_type, reply.content_type);
    res->set(http::field::access_control_allow_origin, "*");
    res->set(http::field::access_control_allow_headers, "Content-Type");
    res->set(http::field::access_control_allow_methods, "GET, POST, OPTIONS");
    res->keep_alive(req_.keep_alive());
    res->body() = reply.body;
    res->prepare_payload();
    http::async_write(stream_, *res,
                      [self = shared_from_this(), res](beast::error_code ec, std::size_t) {
                        if (ec || !res->keep_alive()) {
                          beast::error_code ignored;
                          self->stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
                          return;
                        }
                        self->Read();
                      });
  }

  beast::tcp_stream stream_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> req_;
  SessionManager& sessions_;
  const Scenario& scenario_;
};

}  // namespace

HttpReply HandleHttp(SessionManager& sessions, const Scenario& default_scenario,
                     const std::string& method, const std::string& target,
                     const std::string& body) {
  const auto qpos = target.find('?');
  const std::string path = target.substr(0, qpos);
  const std::string query = qpos == std::string::npos ? "" : target.substr(qpos + 1);
  try {
    return Route(sessions, default_scenario, method, path, query, body);
  } catch (const Error& e) {
    return ErrorReply(StatusFor(e.code()), ErrorCodeName(e.code()), e.what());
  } catch (const std::exception& e) {
    return ErrorReply(500, "internal", e.what());
  }
}

struct SessionServer::Impl {
  Impl(Scenario s, ServerOptions o)
      : scenario(std::move(s)), options(std::move(o)), acceptor(io), timer(io) {}

  void Accept() {
    acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
      if (ec) return;
      std::make_shared<HttpConnection>(std::move(socket), sessions, scenario)->Run();
      Accept();
    });
  }

  void ScheduleAutoplay() {
    if (options.autoplay_seconds <= 0) return;
    timer.expires_after(std::chrono::milliseconds(100));
    timer.async_wait([this](beast::error_code ec) {
      if (ec) return;
      const auto limit = std::chrono::duration<double>(options.autoplay_seconds);
      const auto now = std::chrono::steady_clock::now();
      for (const auto& s : sessions.All()) {
        if (s->phase() == SessionPhase::kComplete || now - s->phase_since() < limit) continue;
        try {
          s->AutoplayStep();
        } catch (const Error&) {
        }
      }
      ScheduleAutoplay();
    });
  }

  Scenario scenario;
  ServerOptions options;
  SessionManager sessions;
  net::io_context io;
  tcp::acceptor acceptor;
  net::steady_timer timer;
  std::thread thread;
  bool listening = false;
};

SessionServer::SessionServer(Scenario default_scenario, ServerOptions options)
    : impl_(std::make_unique<Impl>(std::move(default_scenario), std::move(options))) {}

SessionServer::~SessionServer() { Stop(); }

unsigned short SessionServer::Listen() {
  const tcp::endpoint endpoint(net::ip::make_address(impl_->options.address),
                               impl_->options.port);
  impl_->acceptor.open(endpoint.protocol());
  impl_->acceptor.set_option(net::socket_base::reuse_address(true));
  impl_->acceptor.bind(endpoint);
  impl_->acceptor.listen();
  impl_->listening = true;
  impl_->Accept();
  impl_->ScheduleAutoplay();
  return port();
}

void SessionServer::Run() {
  if (!impl_->listening) Listen();
  impl_->io.run();
}

unsigned short SessionServer::Start() {
  const unsigned short p = Listen();
  impl_->thread = std::thread([this] { impl_->io.run(); });
  return p;
}

void SessionServer::Stop() {
  impl_->io.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

unsigned short SessionServer::port() const {
  return impl_->acceptor.is_open() ? impl_->acceptor.local_endpoint().port() : 0;
}

SessionManager& SessionServer::sessions() { return impl_->sessions; }

}  // namespace regret_manager
