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

#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "regret_manager/error.h"
#include "regret_manager/scenario.h"
#include "regret_manager/session.h"

namespace regret_manager {
namespace {

using nlohmann::json;

Scenario ServeScenario() { return LoadScenarioFile("scenarios/example2_serve.json"); }

double Num(const json& j) { return std::stod(j.get<std::string>()); }

std::optional<ErrorCode> CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

std::string Csv(const Trace& trace) {
  std::ostringstream out;
  WriteTraceCsv(trace, out);
  return out.str();
}

TEST_CASE("new session starts awaiting a baseline at t = 0") {
  SessionManager sessions;
  auto s = sessions.Create(ServeScenario());
  CHECK(s->id() == "s1");
  CHECK(s->human_player() == 0);
  CHECK(s->phase() == SessionPhase::kAwaitingBaseline);
  const json v = s->View(0);
  CHECK(v.at("t") == "0");
  CHECK(v.at("phase") == "awaiting_baseline");
  CHECK(v.at("gain") == "0");
  CHECK(v.at("ubar") == "0");
  CHECK(v.at("allowed_actions") == json::array({"1", "2"}));
  // Player 1 of example 2 sees location 1 only.
  CHECK(v.at("visible") == json{{"1", "2.2"}});
  const auto log = s->MessageLog();
  REQUIRE(log.size() == 1);
  CHECK(log[0].at("type") == "round_start");

  auto other = sessions.Create(ServeScenario());
  CHECK(other->id() != s->id());
  CHECK(sessions.All().size() == 2);
  CHECK(sessions.Find(other->id()) == other);
  CHECK(CodeOf([&] { sessions.Find("nope"); }) == ErrorCode::kNotFound);
}

TEST_CASE("human seat must be valid") {
  SessionManager sessions;
  CHECK(CodeOf([&] { sessions.Create(ServeScenario(), 2); }) == ErrorCode::kInvalidInput);
  auto sc = ServeScenario();
  sc.human_player.reset();
  CHECK(CodeOf([&] { sessions.Create(sc); }) == ErrorCode::kInvalidInput);
  CHECK(sessions.Create(sc, 1)->human_player() == 1);
}

TEST_CASE("phase errors are distinct and leave the phase unchanged") {
  SessionManager sessions;
  auto s = sessions.Create(ServeScenario());
  CHECK(CodeOf([&] { s->Advance(true); }) == ErrorCode::kWrongPhase);
  CHECK(s->phase() == SessionPhase::kAwaitingBaseline);
  CHECK(CodeOf([&] { s->SubmitBaseline(0, 3); }) == ErrorCode::kIllegalAction);
  CHECK(s->phase() == SessionPhase::kAwaitingBaseline);
  CHECK(CodeOf([&] { s->SubmitBaseline(1, 2); }) == ErrorCode::kInvalidInput);

  const json ack = s->SubmitBaseline(0, 2);
  CHECK(ack.at("phase") == "suggestion_ready");
  CHECK(s->phase() == SessionPhase::kSuggestionReady);
  CHECK(CodeOf([&] { s->SubmitBaseline(0, 1); }) == ErrorCode::kDuplicateSubmission);
  CHECK(s->phase() == SessionPhase::kSuggestionReady);

  const json closed = s->Advance(true, /*close_only=*/true);
  CHECK(closed.at("phase") == "round_closed");
  CHECK(CodeOf([&] { s->SubmitBaseline(0, 1); }) == ErrorCode::kWrongPhase);
  const json next = s->Advance(true);
  CHECK(next.at("phase") == "awaiting_baseline");
  CHECK(s->View(0).at("t") == "1");
  CHECK(s->View(0).at("rounds_closed") == "1");
}

TEST_CASE("a full session ends in a summary") {
  SessionManager sessions;
  auto s = sessions.Create(ServeScenario());
  int rounds = 0;
  while (s->phase() != SessionPhase::kComplete) {
    s->SubmitBaseline(0, 2);
    s->Advance(true);
    ++rounds;
  }
  CHECK(rounds == 20);
  CHECK(CodeOf([&] { s->Advance(true); }) == ErrorCode::kWrongPhase);
  CHECK(CodeOf([&] { s->SubmitBaseline(0, 2); }) == ErrorCode::kWrongPhase);
  const auto log = s->MessageLog();
  CHECK(log.back().at("type") == "summary");
  CHECK(log.back().at("payload").at("rounds") == "20");
  CHECK(s->View(0).at("visible").empty());
}

TEST_CASE("horizon 0 session is complete at once") {
  auto sc = ServeScenario();
  sc.horizon = 0;
  SessionManager sessions;
  auto s = sessions.Create(sc);
  CHECK(s->phase() == SessionPhase::kComplete);
  CHECK(s->MessageLog().front().at("type") == "summary");
  CHECK(s->ExportTrace().rounds.empty());
}

TEST_CASE("information hygiene by message-log inspection") {
  for (bool share : {false, true}) {
    for (int human : {0, 1}) {
      auto sc = ServeScenario();
      if (share) {
        const auto ex = MakeExample(ExampleId::kExample2, true);
        sc.game = ex.game;
        sc.example = ExampleRef{ExampleId::kExample2, true};
        sc.baselines = ex.baselines;
      }
      SessionManager sessions;
      auto s = sessions.Create(sc, human);
      const auto& obs = sc.game.observation_sets[static_cast<size_t>(human)];
      std::set<std::string> allowed_keys;
      for (int j : obs) allowed_keys.insert(std::to_string(j));
      std::mt19937_64 rng(static_cast<std::uint64_t>(human + 10 * share));
      const auto& actions = sc.game.action_sets[static_cast<size_t>(human)];
      while (s->phase() != SessionPhase::kComplete) {
        // Views taken mid-round obey the same rule as pushed messages.
        for (const auto& [key, _] : s->View(human).at("visible").items()) {
          CHECK(allowed_keys.count(key) == 1);
        }
        s->SubmitBaseline(human, actions[rng() % actions.size()]);
        for (const auto& [key, _] : s->View(human).at("visible").items()) {
          CHECK(allowed_keys.count(key) == 1);
        }
        s->Advance(rng() % 2 == 0);
      }
      for (const auto& m : s->MessageLog()) {
        const std::string type = m.at("type");
        const json& p = m.at("payload");
        if (type == "round_start") {
          for (const auto& [key, _] : p.at("visible").items()) {
            CHECK(allowed_keys.count(key) == 1);
          }
          CHECK(!p.contains("omega"));
        } else if (type == "suggestion") {
          // Only the human's own actions: no events, no utilities.
          std::set<std::string> keys;
          for (const auto& [key, _] : p.items()) keys.insert(key);
          CHECK(keys == std::set<std::string>{"session", "t", "baseline", "suggestion"});
        } else {
          CHECK((type == "round_result" || type == "summary"));
        }
      }
    }
  }
}

TEST_CASE("displayed gain matches the trace") {
  SessionManager sessions;
  auto s = sessions.Create(ServeScenario());
  std::mt19937_64 rng(3);
  while (s->phase() != SessionPhase::kComplete) {
    s->SubmitBaseline(0, 1 + static_cast<int>(rng() % 2));
    const json result = s->Advance(true, true).at("result");
    const Trace trace = s->ExportTrace();
    const auto& r = trace.rounds.back();
    const json v = s->View(0);
    CHECK(std::abs(Num(v.at("gain")) - (r.ubar[0] - r.xbar[0])) <= 1e-12);
    CHECK(std::abs(Num(result.at("gain")) - (r.ubar[0] - r.xbar[0])) <= 1e-12);
    // Conservative manager: following never loses against the baseline.
    CHECK(Num(v.at("gain")) >= 0);
    CHECK(Num(v.at("ubar")) == r.ubar[0]);
    s->Advance(true);
  }
}

TEST_CASE("numbers are decimal strings that round-trip") {
  CHECK(DecimalString(2.2) == "2.2");
  CHECK(DecimalString(0.1 + 0.2) == "0.30000000000000004");
  CHECK(std::stod(DecimalString(1.0 / 3)) == 1.0 / 3);
  SessionManager sessions;
  auto s = sessions.Create(ServeScenario());
  s->SubmitBaseline(0, 2);
  const json r = s->Advance(true, true).at("result");
  for (const char* key : {"u", "x", "ubar", "xbar", "omega"}) {
    for (const auto& e : r.at(key)) CHECK(e.is_string());
  }
}

TEST_CASE("realized path records whether the suggestion was followed") {
  SessionManager sessions;
  auto s = sessions.Create(ServeScenario());
  bool saw_difference = false;
  while (s->phase() != SessionPhase::kComplete) {
    s->SubmitBaseline(0, 2);
    const json r = s->Advance(false, true).at("result");
    CHECK(r.at("followed") == false);
    CHECK(r.at("realized")[0] == r.at("baseline")[0]);
    CHECK(r.at("realized")[1] == r.at("suggestion")[1]);
    saw_difference = saw_difference || r.at("suggestion")[0] != r.at("baseline")[0];
    s->Advance(true);
  }
  CHECK(saw_difference);
}

TEST_CASE("engine equivalence with a scripted replay") {
  for (int human : {0, 1}) {
    auto sc = ServeScenario();
    sc.horizon = 200;
    SessionManager sessions;
    auto s = sessions.Create(sc, human);
    std::mt19937_64 rng(human + 100);
    const auto& actions = sc.game.action_sets[static_cast<size_t>(human)];
    while (s->phase() != SessionPhase::kComplete) {
      s->SubmitBaseline(human, actions[rng() % actions.size()]);
      s->Advance(true);
    }
    const Trace live = s->ExportTrace();
    const Scenario eq = s->EquivalentScenario();
    CHECK(!eq.human_player.has_value());
    const Trace replay = RunSimulation(eq);
    CHECK(replay == live);
    CHECK(Csv(replay) == Csv(live));
  }
}

TEST_CASE("autoplay follows the scenario policy") {
  auto sc = ServeScenario();
  SessionManager sessions;
  auto s = sessions.Create(sc);
  while (s->phase() != SessionPhase::kComplete) s->AutoplayStep();
  sc.human_player.reset();
  // With every seat on its own policy the session is the plain run.
  CHECK(s->ExportTrace().rounds == RunSimulation(sc).rounds);
}

TEST_CASE("listeners receive every message") {
  SessionManager sessions;
  auto s = sessions.Create(ServeScenario());
  std::vector<std::string> got;
  const int token = s->Subscribe([&](const std::string& m) { got.push_back(m); });
  s->SubmitBaseline(0, 2);
  s->Advance(true);
  REQUIRE(got.size() == 3);
  CHECK(json::parse(got[0]).at("type") == "suggestion");
  CHECK(json::parse(got[1]).at("type") == "round_result");
  CHECK(json::parse(got[2]).at("type") == "round_start");
  s->Unsubscribe(token);
  s->SubmitBaseline(0, 2);
  CHECK(got.size() == 3);
}

TEST_CASE("sessions are independent") {
  SessionManager sessions;
  auto a = sessions.Create(ServeScenario());
  auto b = sessions.Create(ServeScenario());
  a->SubmitBaseline(0, 1);
  CHECK(a->phase() == SessionPhase::kSuggestionReady);
  CHECK(b->phase() == SessionPhase::kAwaitingBaseline);
  b->SubmitBaseline(0, 2);
  a->Advance(true);
  CHECK(a->View(0).at("t") == "1");
  CHECK(b->View(0).at("t") == "0");
}

}  // namespace
}  // namespace regret_manager
