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

#include "regret_manager/baselines.h"

#include <algorithm>
#include <string>

#include "regret_manager/error.h"
#include "regret_manager/events.h"

namespace regret_manager {
namespace {

bool InActionSet(const GameSpec& game, int player, int action) {
  const auto& set = game.action_sets[static_cast<size_t>(player)];
  return std::find(set.begin(), set.end(), action) != set.end();
}

}  // namespace

void ValidateBaselinePolicy(const BaselinePolicySpec& spec,
                            const GameSpec& game, int player) {
  using Kind = BaselinePolicySpec::Kind;
  const std::string who = "baseline policy of player " + std::to_string(player + 1);
  if (player < 0 || player >= game.num_players) {
    throw Error(ErrorCode::kInvalidInput, who + ": player out of range");
  }
  switch (spec.kind) {
    case Kind::kConstant:
      if (!InActionSet(game, player, spec.action)) {
        throw Error(ErrorCode::kInvalidInput,
                    who + ": action " + std::to_string(spec.action) +
                        " not in A_" + std::to_string(player + 1));
      }
      break;
    case Kind::kScripted:
      if (spec.sequence.empty()) {
        throw Error(ErrorCode::kInvalidInput, who + ": empty script");
      }
      for (int a : spec.sequence) {
        if (!InActionSet(game, player, a)) {
          throw Error(ErrorCode::kInvalidInput,
                      who + ": scripted action " + std::to_string(a) +
                          " not in A_" + std::to_string(player + 1));
        }
      }
      break;
    case Kind::kGreedyObserved: {
      if (spec.assumed_events.size() != static_cast<size_t>(game.event_dim)) {
        throw Error(ErrorCode::kInvalidInput,
                    who + ": assumed_events must have length M");
      }
      if (spec.assumed_others.size() != static_cast<size_t>(game.num_players)) {
        throw Error(ErrorCode::kInvalidInput,
                    who + ": assumed_others must have length N");
      }
      for (int k = 0; k < game.num_players; ++k) {
        if (k != player &&
            !InActionSet(game, k, spec.assumed_others[static_cast<size_t>(k)])) {
          throw Error(ErrorCode::kInvalidInput,
                      who + ": assumed action of player " +
                          std::to_string(k + 1) + " not in its action set");
        }
      }
      break;
    }
    case Kind::kRandom:
      break;
  }
}

BaselinePolicy::BaselinePolicy(BaselinePolicySpec spec, const GameSpec& game,
                               int player, std::uint64_t seed)
    : spec_(std::move(spec)),
      game_(&game),
      player_(player),
      rng_(DeriveSeed(seed, static_cast<std::uint64_t>(player) + 1)) {
  ValidateBaselinePolicy(spec_, game, player);
}

int BaselinePolicy::Decide(const Observation& obs) {
  using Kind = BaselinePolicySpec::Kind;
  const auto& actions = game_->action_sets[static_cast<size_t>(player_)];
  const std::int64_t round = rounds_++;
  switch (spec_.kind) {
    case Kind::kConstant:
      return spec_.action;
    case Kind::kScripted:
      return spec_.sequence[static_cast<size_t>(
          round % static_cast<std::int64_t>(spec_.sequence.size()))];
    case Kind::kRandom: {
      const auto k = static_cast<size_t>(rng_() % actions.size());
      return actions[k];
    }
    case Kind::kGreedyObserved: {
      EventVector events = spec_.assumed_events;
      for (const auto& [j, value] : obs.visible) {
        events[static_cast<size_t>(j - 1)] = value;
      }
      ActionVector profile = spec_.assumed_others;
      int best = actions.front();
      double best_value = -1;
      for (int a : actions) {
        profile[static_cast<size_t>(player_)] = a;
        const double value =
            game_->utility(profile, events)[static_cast<size_t>(player_)];
        if (value > best_value) {
          best_value = value;
          best = a;
        }
      }
      return best;
    }
  }
  return actions.front();
}

}  // namespace regret_manager
