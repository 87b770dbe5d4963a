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

#ifndef REGRET_MANAGER_SESSION_H_
#define REGRET_MANAGER_SESSION_H_

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "regret_manager/harness.h"

namespace regret_manager {

enum class SessionPhase {
  kAwaitingBaseline,
  kSuggestionReady,
  kRoundClosed,
  // Horizon reached; only views and trace export remain.
  kComplete,
};

std::string_view SessionPhaseName(SessionPhase phase);

// Shortest decimal string that parses back to exactly `value`.
std::string DecimalString(double value);

// One interactive run with a single human seat. Every other seat submits
// from its baseline policy. All methods are serialized on an internal mutex.
//
// Outgoing messages are {"type", "payload"} objects; payload numbers are
// decimal strings. Before a round closes they carry only the human's
// visible event coordinates and the human's own suggestion.
class Session {
 public:
  using Listener = std::function<void(const std::string& message)>;

  Session(std::string id, const Scenario& scenario, int human_player);

  const std::string& id() const { return id_; }
  int human_player() const { return human_; }
  SessionPhase phase() const;
  std::int64_t round() const;
  std::chrono::steady_clock::time_point phase_since() const;

  // View for a 0-based `player`: current round, that player's visible
  // coordinates and actions, and the human's closed-round averages.
  nlohmann::json View(int player) const;

  // Error(kWrongPhase | kIllegalAction | kDuplicateSubmission) on rejection;
  // the phase is unchanged in that case.
  nlohmann::json SubmitBaseline(int player, int action);

  // Closes the round if it is open, recording whether the human followed
  // the suggestion, then opens the next round unless `close_only`.
  nlohmann::json Advance(bool follow_suggestion, bool close_only = false);

  // Plays one step for the human from their scenario policy: submits a
  // baseline when one is due, otherwise advances following the suggestion.
  nlohmann::json AutoplayStep();

  // Trace of every submitted round, fingerprinted as the scenario where the
  // human seat is a scripted policy replaying the human's submissions.
  Trace ExportTrace() const;
  Scenario EquivalentScenario() const;

  // Every message sent to the human's clients, in order.
  std::vector<nlohmann::json> MessageLog() const;

  int Subscribe(Listener listener);
  void Unsubscribe(int token);

 private:
  nlohmann::json ViewLocked(int player) const;
  nlohmann::json CloseRoundLocked(bool follow_suggestion);
  nlohmann::json OpenRoundLocked();
  nlohmann::json SubmitLocked(int player, int action);
  void SetPhase(SessionPhase phase);
  void Emit(const std::string& type, nlohmann::json payload);
  Scenario EquivalentScenarioLocked() const;

  mutable std::mutex mu_;
  std::string id_;
  int human_;
  Simulator sim_;
  SessionPhase phase_ = SessionPhase::kAwaitingBaseline;
  std::chrono::steady_clock::time_point phase_since_;
  // Rounds whose outcome has been revealed.
  std::int64_t closed_ = 0;
  // Events of the open round; empty between rounds.
  EventVector omega_;
  std::vector<int> human_actions_;
  std::optional<nlohmann::json> last_result_;
  std::vector<nlohmann::json> log_;
  std::map<int, Listener> listeners_;
  int next_token_ = 1;
};

class SessionManager {
 public:
  // `human_player` (0-based) overrides the scenario's designation.
  std::shared_ptr<Session> Create(const Scenario& scenario,
                                  std::optional<int> human_player = std::nullopt);
  // Error(kNotFound) for an unknown id.
  std::shared_ptr<Session> Find(const std::string& id) const;
  std::vector<std::shared_ptr<Session>> All() const;

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_id_ = 1;
};

}  // namespace regret_manager

#endif  // REGRET_MANAGER_SESSION_H_
