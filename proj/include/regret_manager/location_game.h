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

#ifndef REGRET_MANAGER_LOCATION_GAME_H_
#define REGRET_MANAGER_LOCATION_GAME_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "regret_manager/baselines.h"
#include "regret_manager/events.h"
#include "regret_manager/game.h"

namespace regret_manager {

// Players pick locations 1..M; each location's reward is split evenly among
// the players who chose it: u_i = omega_{a_i} / K_{a_i}.
UtilityVector LocationUtility(const ActionVector& actions,
                              const EventVector& events);

// Location-reward game over `num_locations` locations. Action and
// observation sets are 1-based location lists and need not coincide.
GameSpec MakeLocationGame(int num_locations,
                          std::vector<std::vector<int>> action_sets,
                          std::vector<std::vector<int>> observation_sets,
                          std::vector<double> utility_caps);

// The two-player, two-location instances. Location 1 always pays 2.2;
// location 2 pays 10 or 2 (w.p. 1/5, 4/5 in example 1 and 1/2, 1/2 in
// examples 2 and 3). Player 2 may only choose location 2 in examples 1-2.
enum class ExampleId { kExample1, kExample2, kExample3 };

std::optional<ExampleId> ParseExampleId(std::string_view name);
std::string_view ExampleName(ExampleId id);

struct ExampleScenario {
  ExampleId id = ExampleId::kExample1;
  // With sharing, both players observe both locations.
  bool share = false;
  GameSpec game;
  EventGeneratorSpec events;
  std::vector<BaselinePolicySpec> baselines;
  // Closed-form average utilities when everyone plays `baselines`.
  UtilityVector expected;
};

// Builds the example game with the optimal strategies for the chosen
// information structure as baseline policies.
ExampleScenario MakeExample(ExampleId id, bool share);

// Exact expected per-round utilities under the example's baseline policies,
// by enumerating the i.i.d. reward support. Requires deterministic,
// history-free policies (constant or greedy_observed).
UtilityVector ExactBaselineExpectation(const ExampleScenario& example);

}  // namespace regret_manager

#endif  // REGRET_MANAGER_LOCATION_GAME_H_
