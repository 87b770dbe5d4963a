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

#include "regret_manager/harness.h"

#include <string>

#include "regret_manager/error.h"
#include "regret_manager/scenario.h"

namespace regret_manager {
namespace {

constexpr std::size_t kSupportSampleLimit = 4096;

void CollectSupport(const EventGeneratorSpec& spec, std::vector<EventVector>& out) {
  using Kind = EventGeneratorSpec::Kind;
  if (out.size() >= kSupportSampleLimit) return;
  switch (spec.kind) {
    case Kind::kIid:
      if (!spec.joint.empty()) {
        for (const auto& e : spec.joint) out.push_back(e.values);
      } else {
        std::vector<size_t> pos(spec.coordinates.size(), 0);
        while (out.size() < kSupportSampleLimit) {
          EventVector w(pos.size());
          for (size_t j = 0; j < pos.size(); ++j) w[j] = spec.coordinates[j][pos[j]].value;
          out.push_back(std::move(w));
          size_t j = pos.size();
          bool done = true;
          while (j > 0) {
            --j;
            if (++pos[j] < spec.coordinates[j].size()) {
              done = false;
              break;
            }
            pos[j] = 0;
          }
          if (done) break;
        }
      }
      break;
    case Kind::kMarkov:
      for (const auto& w : spec.state_events) out.push_back(w);
      break;
    case Kind::kPiecewise:
      for (const auto& seg : spec.segments) CollectSupport(seg, out);
      break;
    case Kind::kScripted:
      for (const auto& w : spec.sequence) {
        if (out.size() >= kSupportSampleLimit) break;
        out.push_back(w);
      }
      break;
  }
}

}  // namespace

void ValidateScenario(const Scenario& scenario) {
  const GameSpec& game = scenario.game;
  ValidateEventGenerator(scenario.events, game.event_dim);
  std::vector<EventVector> support;
  CollectSupport(scenario.events, support);
  const ValidationReport report = ValidateGame(game, support);
  if (!report.ok) {
    throw Error(ErrorCode::kInvalidInput, "game: " + report.findings.front());
  }
  if (scenario.baselines.size() != static_cast<size_t>(game.num_players)) {
    throw Error(ErrorCode::kInvalidInput,
                "scenario needs one baseline policy per player");
  }
  for (int i = 0; i < game.num_players; ++i) {
    ValidateBaselinePolicy(scenario.baselines[static_cast<size_t>(i)], game, i);
  }
  ValidateManagerConfig(scenario.manager, game);
  if (scenario.horizon < 0) {
    throw Error(ErrorCode::kInvalidInput, "horizon must be >= 0");
  }
  if (scenario.human_player &&
      (*scenario.human_player < 0 || *scenario.human_player >= game.num_players)) {
    throw Error(ErrorCode::kInvalidInput,
                "human_player " + std::to_string(*scenario.human_player + 1) +
                    " out of range");
  }
}

Simulator::Simulator(const Scenario& scenario)
    : scenario_(scenario),
      events_(scenario.events, scenario.seed),
      state_(ManagerState::Initial(scenario.game.num_players)),
      builder_(ScenarioFingerprint(scenario), scenario.game.num_players,
               scenario.game.event_dim) {
  ValidateScenario(scenario_);
  manager_ = std::make_unique<Manager>(scenario_.game, scenario_.manager);
  for (int i = 0; i < scenario_.game.num_players; ++i) {
    policies_.emplace_back(scenario_.baselines[static_cast<size_t>(i)],
                           manager_->game(), i, scenario_.seed);
  }
  decided_.assign(policies_.size(), std::nullopt);
}

const EventVector& Simulator::BeginRound() {
  if (done()) {
    throw Error(ErrorCode::kWrongPhase, "horizon reached");
  }
  if (!current_) current_ = events_.Next();
  return *current_;
}

int Simulator::PolicyDecision(int player) {
  const EventVector& w = BeginRound();
  auto& slot = decided_.at(static_cast<size_t>(player));
  if (!slot) {
    slot = policies_[static_cast<size_t>(player)].Decide(
        Observe(manager_->game(), player, w));
  }
  return *slot;
}

const RoundRecord& Simulator::CompleteRound(const ActionVector& baseline) {
  const EventVector& w = BeginRound();
  RoundResult result = manager_->RunRound(state_, w, baseline);
  const RoundRecord& record =
      builder_.Append(w, baseline, result.step, result.state_after);
  state_ = std::move(result.state_after);
  current_.reset();
  std::fill(decided_.begin(), decided_.end(), std::nullopt);
  return record;
}

Trace RunSimulation(const Scenario& scenario) {
  Simulator sim(scenario);
  const auto n = static_cast<size_t>(scenario.game.num_players);
  ActionVector baseline(n);
  while (!sim.done()) {
    try {
      sim.BeginRound();
      for (size_t i = 0; i < n; ++i) baseline[i] = sim.PolicyDecision(static_cast<int>(i));
      sim.CompleteRound(baseline);
    } catch (const Error& e) {
      throw Error(e.code(), "round " + std::to_string(sim.round()) + ": " + e.what());
    }
  }
  return sim.ReleaseTrace();
}

}  // namespace regret_manager
