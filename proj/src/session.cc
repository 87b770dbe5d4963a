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

#include "regret_manager/session.h"

#include <algorithm>
#include <charconv>

#include "regret_manager/error.h"
#include "regret_manager/scenario.h"

namespace regret_manager {
namespace {

using nlohmann::json;

json Str(double v) { return DecimalString(v); }

json Str(std::int64_t v) { return std::to_string(v); }

json Str(int v) { return std::to_string(v); }

template <typename T>
json StrList(const std::vector<T>& values) {
  json arr = json::array();
  for (const auto& v : values) arr.push_back(Str(v));
  return arr;
}

}  // namespace

std::string_view SessionPhaseName(SessionPhase phase) {
  switch (phase) {
    case SessionPhase::kAwaitingBaseline:
      return "awaiting_baseline";
    case SessionPhase::kSuggestionReady:
      return "suggestion_ready";
    case SessionPhase::kRoundClosed:
      return "round_closed";
    case SessionPhase::kComplete:
      return "complete";
  }
  return "unknown";
}

std::string DecimalString(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

Session::Session(std::string id, const Scenario& scenario, int human_player)
    : id_(std::move(id)), human_(human_player), sim_(scenario) {
  if (human_ < 0 || human_ >= scenario.game.num_players) {
    throw Error(ErrorCode::kInvalidInput,
                "human player " + std::to_string(human_ + 1) + " out of range");
  }
  std::lock_guard lock(mu_);
  OpenRoundLocked();
}

SessionPhase Session::phase() const {
  std::lock_guard lock(mu_);
  return phase_;
}

std::int64_t Session::round() const {
  std::lock_guard lock(mu_);
  return sim_.round();
}

std::chrono::steady_clock::time_point Session::phase_since() const {
  std::lock_guard lock(mu_);
  return phase_since_;
}

void Session::SetPhase(SessionPhase phase) {
  phase_ = phase;
  phase_since_ = std::chrono::steady_clock::now();
}

void Session::Emit(const std::string& type, json payload) {
  json message = {{"type", type}, {"payload", std::move(payload)}};
  const std::string text = message.dump();
  log_.push_back(std::move(message));
  for (const auto& [_, listener] : listeners_) listener(text);
}

json Session::View(int player) const {
  std::lock_guard lock(mu_);
  return ViewLocked(player);
}

json Session::ViewLocked(int player) const {
  const GameSpec& game = sim_.manager().game();
  if (player < 0 || player >= game.num_players) {
    throw Error(ErrorCode::kInvalidInput,
                "player " + std::to_string(player + 1) + " out of range");
  }
  const auto p = static_cast<size_t>(player);
  const Trace& trace = sim_.trace();
  std::int64_t t = sim_.round();
  if (phase_ == SessionPhase::kSuggestionReady || phase_ == SessionPhase::kRoundClosed) {
    t -= 1;
  }
  json view = {{"session", id_},
               {"player", Str(player + 1)},
               {"human", player == human_},
               {"phase", std::string(SessionPhaseName(phase_))},
               {"t", Str(t)},
               {"horizon", Str(sim_.scenario().horizon)},
               {"rounds_closed", Str(closed_)}};
  json visible = json::object();
  if (phase_ == SessionPhase::kAwaitingBaseline || phase_ == SessionPhase::kSuggestionReady) {
    for (const auto& [j, value] : Observe(game, player, omega_).visible) {
      visible[std::to_string(j)] = Str(value);
    }
  }
  view["visible"] = visible;
  view["allowed_actions"] = StrList(game.action_sets[p]);
  double ubar = 0, xbar = 0;
  if (closed_ > 0) {
    const auto& r = trace.rounds[static_cast<size_t>(closed_ - 1)];
    ubar = r.ubar[p];
    xbar = r.xbar[p];
  }
  view["ubar"] = Str(ubar);
  view["xbar"] = Str(xbar);
  view["gain"] = Str(ubar - xbar);
  if (phase_ == SessionPhase::kSuggestionReady) {
    const auto& r = trace.rounds.back();
    view["baseline"] = Str(r.baseline[p]);
    view["suggestion"] = Str(r.suggestion[p]);
  }
  if (last_result_) view["last_result"] = *last_result_;
  return view;
}

json Session::SubmitBaseline(int player, int action) {
  std::lock_guard lock(mu_);
  return SubmitLocked(player, action);
}

json Session::SubmitLocked(int player, int action) {
  const GameSpec& game = sim_.manager().game();
  if (player != human_) {
    throw Error(ErrorCode::kInvalidInput,
                "player " + std::to_string(player + 1) +
                    " is not the human seat of this session");
  }
  if (phase_ == SessionPhase::kSuggestionReady) {
    throw Error(ErrorCode::kDuplicateSubmission,
                "baseline for round " + std::to_string(sim_.round() - 1) +
                    " already submitted");
  }
  if (phase_ != SessionPhase::kAwaitingBaseline) {
    throw Error(ErrorCode::kWrongPhase,
                "cannot submit a baseline in phase " +
                    std::string(SessionPhaseName(phase_)));
  }
  const auto& allowed = game.action_sets[static_cast<size_t>(player)];
  if (std::find(allowed.begin(), allowed.end(), action) == allowed.end()) {
    throw Error(ErrorCode::kIllegalAction,
                "action " + std::to_string(action) + " is not available to player " +
                    std::to_string(player + 1));
  }
  const auto n = static_cast<size_t>(game.num_players);
  ActionVector baseline(n);
  for (size_t i = 0; i < n; ++i) {
    baseline[i] = static_cast<int>(i) == human_ ? action : sim_.PolicyDecision(static_cast<int>(i));
  }
  const RoundRecord& record = sim_.CompleteRound(baseline);
  human_actions_.push_back(action);
  SetPhase(SessionPhase::kSuggestionReady);
  const auto h = static_cast<size_t>(human_);
  json payload = {{"session", id_},
                  {"t", Str(record.t)},
                  {"baseline", Str(record.baseline[h])},
                  {"suggestion", Str(record.suggestion[h])}};
  Emit("suggestion", payload);
  payload["phase"] = std::string(SessionPhaseName(phase_));
  return payload;
}

json Session::CloseRoundLocked(bool follow_suggestion) {
  const GameSpec& game = sim_.manager().game();
  const auto& r = sim_.trace().rounds[static_cast<size_t>(closed_)];
  const auto h = static_cast<size_t>(human_);
  ActionVector realized = r.suggestion;
  if (!follow_suggestion) realized[h] = r.baseline[h];
  const UtilityVector realized_u = EvaluateUtilities(game, realized, r.omega);
  ++closed_;
  json payload = {{"session", id_},
                  {"t", Str(r.t)},
                  {"omega", StrList(r.omega)},
                  {"baseline", StrList(r.baseline)},
                  {"suggestion", StrList(r.suggestion)},
                  {"realized", StrList(realized)},
                  {"followed", follow_suggestion},
                  {"u", StrList(r.u)},
                  {"x", StrList(r.x)},
                  {"realized_u", StrList(realized_u)},
                  {"ubar", StrList(r.ubar)},
                  {"xbar", StrList(r.xbar)},
                  {"gain", Str(r.ubar[h] - r.xbar[h])}};
  last_result_ = payload;
  omega_.clear();
  SetPhase(SessionPhase::kRoundClosed);
  Emit("round_result", payload);
  return payload;
}

json Session::OpenRoundLocked() {
  if (sim_.done()) {
    SetPhase(SessionPhase::kComplete);
    const auto h = static_cast<size_t>(human_);
    const auto n = static_cast<size_t>(sim_.manager().game().num_players);
    std::vector<double> ubar(n, 0.0), xbar(n, 0.0);
    if (closed_ > 0) {
      const auto& r = sim_.trace().rounds[static_cast<size_t>(closed_ - 1)];
      ubar = r.ubar;
      xbar = r.xbar;
    }
    json payload = {{"session", id_},
                    {"rounds", Str(closed_)},
                    {"ubar", StrList(ubar)},
                    {"xbar", StrList(xbar)},
                    {"gain", Str(ubar[h] - xbar[h])}};
    Emit("summary", payload);
    return payload;
  }
  omega_ = sim_.BeginRound();
  SetPhase(SessionPhase::kAwaitingBaseline);
  json view = ViewLocked(human_);
  Emit("round_start", view);
  return view;
}

json Session::Advance(bool follow_suggestion, bool close_only) {
  std::lock_guard lock(mu_);
  json out = json::object();
  if (phase_ == SessionPhase::kSuggestionReady) {
    out["result"] = CloseRoundLocked(follow_suggestion);
    if (close_only) {
      out["phase"] = std::string(SessionPhaseName(phase_));
      return out;
    }
  } else if (phase_ != SessionPhase::kRoundClosed) {
    throw Error(ErrorCode::kWrongPhase,
                "cannot advance in phase " + std::string(SessionPhaseName(phase_)));
  }
  out["next"] = OpenRoundLocked();
  out["phase"] = std::string(SessionPhaseName(phase_));
  return out;
}

json Session::AutoplayStep() {
  std::unique_lock lock(mu_);
  if (phase_ == SessionPhase::kAwaitingBaseline) {
    return SubmitLocked(human_, sim_.PolicyDecision(human_));
  }
  lock.unlock();
  return Advance(true);
}

Scenario Session::EquivalentScenario() const {
  std::lock_guard lock(mu_);
  return EquivalentScenarioLocked();
}

Scenario Session::EquivalentScenarioLocked() const {
  Scenario s = sim_.scenario();
  s.human_player.reset();
  if (!human_actions_.empty()) {
    BaselinePolicySpec scripted;
    scripted.kind = BaselinePolicySpec::Kind::kScripted;
    scripted.sequence = human_actions_;
    s.baselines[static_cast<size_t>(human_)] = std::move(scripted);
  }
  return s;
}

Trace Session::ExportTrace() const {
  std::lock_guard lock(mu_);
  Trace trace = sim_.trace();
  trace.rounds.resize(static_cast<size_t>(closed_));
  trace.fingerprint = ScenarioFingerprint(EquivalentScenarioLocked());
  return trace;
}

std::vector<json> Session::MessageLog() const {
  std::lock_guard lock(mu_);
  return log_;
}

int Session::Subscribe(Listener listener) {
  std::lock_guard lock(mu_);
  const int token = next_token_++;
  listeners_.emplace(token, std::move(listener));
  return token;
}

void Session::Unsubscribe(int token) {
  std::lock_guard lock(mu_);
  listeners_.erase(token);
}

std::shared_ptr<Session> SessionManager::Create(const Scenario& scenario,
                                                std::optional<int> human_player) {
  const std::optional<int> human = human_player ? human_player : scenario.human_player;
  if (!human) {
    throw Error(ErrorCode::kInvalidInput, "scenario designates no human player");
  }
  std::string id;
  {
    std::lock_guard lock(mu_);
    id = "s" + std::to_string(next_id_++);
  }
  auto session = std::make_shared<Session>(id, scenario, *human);
  std::lock_guard lock(mu_);
  sessions_.emplace(id, session);
  return session;
}

std::shared_ptr<Session> SessionManager::Find(const std::string& id) const {
  std::lock_guard lock(mu_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) {
    throw Error(ErrorCode::kNotFound, "no session '" + id + "'");
  }
  return it->second;
}

std::vector<std::shared_ptr<Session>> SessionManager::All() const {
  std::lock_guard lock(mu_);
  std::vector<std::shared_ptr<Session>> out;
  for (const auto& [_, s] : sessions_) out.push_back(s);
  return out;
}

}  // namespace regret_manager
