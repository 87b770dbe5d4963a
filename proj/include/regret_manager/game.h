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

#ifndef REGRET_MANAGER_GAME_H_
#define REGRET_MANAGER_GAME_H_

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace regret_manager {

// Event values for one round. Index j (0-based) holds the component the
// model calls omega_{j+1}.
using EventVector = std::vector<double>;

// One action label per player. Labels are game-defined integers (location
// numbers 1..M in the location-reward game). Also used for baseline vectors.
using ActionVector = std::vector<int>;

// Per-player utilities, entry i in [0, u_i^max].
using UtilityVector = std::vector<double>;

using UtilityFn =
    std::function<UtilityVector(const ActionVector&, const EventVector&)>;

// An N-player game with partial observations. Plain value type: it may hold
// an invalid definition, which ValidateGame() reports on.
struct GameSpec {
  int num_players = 0;
  int event_dim = 0;
  // observation_sets[i] lists the 1-based event indices player i observes.
  std::vector<std::vector<int>> observation_sets;
  // action_sets[i] lists player i's action labels in declaration order.
  std::vector<std::vector<int>> action_sets;
  std::vector<double> utility_caps;
  // Registered evaluator name and its parameters; `utility` is bound from
  // these by BindUtility().
  std::string utility_name;
  nlohmann::json utility_params = nlohmann::json::object();
  UtilityFn utility;
};

// What player `player` sees of one event vector: keys are exactly S_player.
struct Observation {
  int player = 0;
  std::map<int, double> visible;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> findings;
};

// Default cap on enumerated joint actions / lookahead sequences. The
// REGRET_MANAGER_GUARD_LIMIT environment variable overrides it.
inline constexpr std::uint64_t kDefaultGuardLimit = 10'000'000;
std::uint64_t GuardLimit();

bool IsValidActionVector(const GameSpec& spec, const ActionVector& actions);

// Throws Error(kInvalidInput) on dimension mismatch or actions outside A_i,
// Error(kAssumptionViolation) if the evaluator leaves [0, u_i^max].
UtilityVector EvaluateUtilities(const GameSpec& spec,
                                const ActionVector& actions,
                                const EventVector& events);

// `player` is 0-based.
Observation Observe(const GameSpec& spec, int player,
                    const EventVector& events);

// Lexicographic by player index (player 0 most significant), each player's
// actions in declaration order. Throws Error(kTooLarge) past `guard_limit`.
std::vector<ActionVector> EnumerateJointActions(const GameSpec& spec,
                                                std::uint64_t guard_limit);
std::vector<ActionVector> EnumerateJointActions(const GameSpec& spec);

// Number of joint actions, saturating at UINT64_MAX.
std::uint64_t JointActionCount(const GameSpec& spec);

ValidationReport ValidateGame(const GameSpec& spec,
                              std::span<const EventVector> event_samples);

// Evaluator registry keyed by name. Factories receive the game (for its
// shape) and the scenario's parameter object.
using UtilityFactory =
    std::function<UtilityFn(const GameSpec& shape, const nlohmann::json&)>;

void RegisterUtility(const std::string& name, UtilityFactory factory);
bool HasUtility(const std::string& name);
std::vector<std::string> RegisteredUtilities();

// Sets spec.utility from spec.utility_name / spec.utility_params.
void BindUtility(GameSpec& spec);

}  // namespace regret_manager

#endif  // REGRET_MANAGER_GAME_H_
