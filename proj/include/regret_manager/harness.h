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

#ifndef REGRET_MANAGER_HARNESS_H_
#define REGRET_MANAGER_HARNESS_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "regret_manager/baselines.h"
#include "regret_manager/events.h"
#include "regret_manager/game.h"
#include "regret_manager/location_game.h"
#include "regret_manager/manager.h"
#include "regret_manager/trace.h"

namespace regret_manager {

struct ScenarioOutputs {
  std::string trace;
  std::string summary;
};

// Where the game came from when a scenario names a built-in example; kept
// so that serialisation writes the example reference back.
struct ExampleRef {
  ExampleId id = ExampleId::kExample1;
  bool share = false;
};

struct Scenario {
  std::string name;
  std::optional<ExampleRef> example;
  GameSpec game;
  EventGeneratorSpec events;
  std::vector<BaselinePolicySpec> baselines;
  ManagerConfig manager;
  std::int64_t horizon = 0;
  std::uint64_t seed = 0;
  // 0-based seat played by a person in the session service.
  std::optional<int> human_player;
  ScenarioOutputs outputs;
};

// Checks the game (against the generator's support where it is finite),
// the generator, every baseline policy and the manager config. Throws
// Error(kInvalidInput) describing the first problem.
void ValidateScenario(const Scenario& scenario);

// Round-by-round driver shared by batch runs and interactive sessions, so
// both produce identical traces for identical inputs.
class Simulator {
 public:
  explicit Simulator(const Scenario& scenario);

  std::int64_t round() const { return state_.t; }
  bool done() const { return state_.t >= scenario_.horizon; }

  // Draws omega(t) on first call in a round; later calls return it again.
  const EventVector& BeginRound();
  // Baseline policy decision for `player` on the current round's events.
  int PolicyDecision(int player);
  // Runs the manager on the current round with `baseline` and records it.
  const RoundRecord& CompleteRound(const ActionVector& baseline);

  const Scenario& scenario() const { return scenario_; }
  const Manager& manager() const { return *manager_; }
  const ManagerState& state() const { return state_; }
  const Trace& trace() const { return builder_.trace(); }
  Trace ReleaseTrace() { return builder_.Release(); }

 private:
  Scenario scenario_;
  std::unique_ptr<Manager> manager_;
  EventStream events_;
  std::vector<BaselinePolicy> policies_;
  std::vector<std::optional<int>> decided_;
  ManagerState state_;
  TraceBuilder builder_;
  std::optional<EventVector> current_;
};

// Runs the scenario for its full horizon with every seat on its baseline
// policy. Errors are rethrown with the offending round index prefixed.
Trace RunSimulation(const Scenario& scenario);

}  // namespace regret_manager

#endif  // REGRET_MANAGER_HARNESS_H_
