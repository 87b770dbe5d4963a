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

#ifndef REGRET_MANAGER_BASELINES_H_
#define REGRET_MANAGER_BASELINES_H_

#include <cstdint>
#include <random>
#include <vector>

#include "regret_manager/game.h"

namespace regret_manager {

struct BaselinePolicySpec {
  enum class Kind { kConstant, kScripted, kGreedyObserved, kRandom };
  Kind kind = Kind::kConstant;

  // kConstant
  int action = 0;
  // kScripted: cycled when the run is longer than the script.
  std::vector<int> sequence;
  // kGreedyObserved: best own action against `assumed_others` (own entry is
  // ignored), with unobserved event coordinates taken from `assumed_events`.
  ActionVector assumed_others;
  EventVector assumed_events;

  bool operator==(const BaselinePolicySpec&) const = default;
};

// Throws Error(kInvalidInput) if the policy can emit an action outside A_i
// or its assumptions do not fit the game.
void ValidateBaselinePolicy(const BaselinePolicySpec& spec,
                            const GameSpec& game, int player);

// Runs one player's baseline policy. Decide() only ever sees that player's
// Observation, so a policy cannot read components outside S_i.
class BaselinePolicy {
 public:
  BaselinePolicy(BaselinePolicySpec spec, const GameSpec& game, int player,
                 std::uint64_t seed);

  int Decide(const Observation& obs);

  int player() const { return player_; }

 private:
  BaselinePolicySpec spec_;
  const GameSpec* game_;
  int player_;
  std::int64_t rounds_ = 0;
  std::mt19937_64 rng_;
};

}  // namespace regret_manager

#endif  // REGRET_MANAGER_BASELINES_H_
