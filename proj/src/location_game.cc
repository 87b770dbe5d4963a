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

#include "regret_manager/location_game.h"

#include <string>

#include "regret_manager/error.h"

namespace regret_manager {
namespace {

BaselinePolicySpec Constant(int action) {
  BaselinePolicySpec p;
  p.kind = BaselinePolicySpec::Kind::kConstant;
  p.action = action;
  return p;
}

BaselinePolicySpec Greedy(ActionVector assumed_others, EventVector assumed_events) {
  BaselinePolicySpec p;
  p.kind = BaselinePolicySpec::Kind::kGreedyObserved;
  p.assumed_others = std::move(assumed_others);
  p.assumed_events = std::move(assumed_events);
  return p;
}

}  // namespace

UtilityVector LocationUtility(const ActionVector& actions,
                              const EventVector& events) {
  const int m = static_cast<int>(events.size());
  UtilityVector u(actions.size());
  for (size_t i = 0; i < actions.size(); ++i) {
    const int loc = actions[i];
    if (loc < 1 || loc > m) {
      throw Error(ErrorCode::kInvalidInput,
                  "location " + std::to_string(loc) + " outside 1.." +
                      std::to_string(m));
    }
    int crowd = 0;
    for (int other : actions) crowd += (other == loc);
    u[i] = events[static_cast<size_t>(loc - 1)] / crowd;
  }
  return u;
}

GameSpec MakeLocationGame(int num_locations,
                          std::vector<std::vector<int>> action_sets,
                          std::vector<std::vector<int>> observation_sets,
                          std::vector<double> utility_caps) {
  GameSpec spec;
  spec.num_players = static_cast<int>(action_sets.size());
  spec.event_dim = num_locations;
  spec.action_sets = std::move(action_sets);
  spec.observation_sets = std::move(observation_sets);
  spec.utility_caps = std::move(utility_caps);
  spec.utility_name = "location_reward";
  spec.utility = LocationUtility;
  return spec;
}

std::optional<ExampleId> ParseExampleId(std::string_view name) {
  if (name == "example1") return ExampleId::kExample1;
  if (name == "example2") return ExampleId::kExample2;
  if (name == "example3") return ExampleId::kExample3;
  return std::nullopt;
}

std::string_view ExampleName(ExampleId id) {
  switch (id) {
    case ExampleId::kExample1:
      return "example1";
    case ExampleId::kExample2:
      return "example2";
    case ExampleId::kExample3:
      return "example3";
  }
  return "unknown";
}

ExampleScenario MakeExample(ExampleId id, bool share) {
  ExampleScenario ex;
  ex.id = id;
  ex.share = share;

  const double p_high = id == ExampleId::kExample1 ? 0.2 : 0.5;
  const double mean2 = 10 * p_high + 2 * (1 - p_high);
  std::vector<std::vector<int>> actions =
      id == ExampleId::kExample3 ? std::vector<std::vector<int>>{{1, 2}, {1, 2}}
                                 : std::vector<std::vector<int>>{{1, 2}, {2}};
  std::vector<std::vector<int>> observed =
      share ? std::vector<std::vector<int>>{{1, 2}, {1, 2}}
            : std::vector<std::vector<int>>{{1}, {2}};
  ex.game = MakeLocationGame(2, std::move(actions), std::move(observed), {10, 10});

  ex.events.kind = EventGeneratorSpec::Kind::kIid;
  ex.events.coordinates = {{{2.2, 1.0}}, {{10, p_high}, {2, 1 - p_high}}};

  const EventVector assumed{2.2, mean2};
  switch (id) {
    case ExampleId::kExample1:
    case ExampleId::kExample2:
      // Player 1 best-responds to player 2 sitting on location 2; without
      // sharing it judges location 2 by its mean reward.
      ex.baselines = {Greedy({0, 2}, assumed), Constant(2)};
      if (id == ExampleId::kExample1) {
        ex.expected = share ? UtilityVector{2.76, 2.6} : UtilityVector{2.2, 3.6};
      } else {
        ex.expected = share ? UtilityVector{3.6, 3.5} : UtilityVector{3.0, 3.0};
      }
      break;
    case ExampleId::kExample3:
      // Player 1 always takes location 2; player 2 takes location 2 only
      // when it pays 10. With sharing the ambiguous low-reward rounds are
      // resolved the same way, so both structures give the same averages.
      ex.baselines = {Constant(2), Greedy({2, 0}, assumed)};
      ex.expected = {3.5, 3.6};
      break;
  }
  return ex;
}

UtilityVector ExactBaselineExpectation(const ExampleScenario& example) {
  const auto& coords = example.events.coordinates;
  if (example.events.kind != EventGeneratorSpec::Kind::kIid || coords.empty()) {
    throw Error(ErrorCode::kInvalidInput,
                "exact expectation needs an i.i.d. per-coordinate generator");
  }
  const auto n = static_cast<size_t>(example.game.num_players);
  UtilityVector mean(n, 0.0);
  std::vector<size_t> pos(coords.size(), 0);
  while (true) {
    EventVector w(coords.size());
    double prob = 1;
    for (size_t j = 0; j < coords.size(); ++j) {
      w[j] = coords[j][pos[j]].value;
      prob *= coords[j][pos[j]].probability;
    }
    ActionVector b(n);
    for (size_t i = 0; i < n; ++i) {
      const auto kind = example.baselines[i].kind;
      if (kind != BaselinePolicySpec::Kind::kConstant &&
          kind != BaselinePolicySpec::Kind::kGreedyObserved) {
        throw Error(ErrorCode::kInvalidInput,
                    "exact expectation needs stateless deterministic policies");
      }
      BaselinePolicy policy(example.baselines[i], example.game,
                            static_cast<int>(i), 0);
      b[i] = policy.Decide(Observe(example.game, static_cast<int>(i), w));
    }
    const UtilityVector u = EvaluateUtilities(example.game, b, w);
    for (size_t i = 0; i < n; ++i) mean[i] += prob * u[i];

    size_t j = coords.size();
    while (j > 0) {
      --j;
      if (++pos[j] < coords[j].size()) break;
      pos[j] = 0;
      if (j == 0) return mean;
    }
  }
}

}  // namespace regret_manager
