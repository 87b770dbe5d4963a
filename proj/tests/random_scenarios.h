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

#ifndef REGRET_MANAGER_TESTS_RANDOM_SCENARIOS_H_
#define REGRET_MANAGER_TESTS_RANDOM_SCENARIOS_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "regret_manager/harness.h"

namespace regret_manager::testing {

// Small random scenarios: location or matrix games with 2-3 players,
// i.i.d., Markov, scripted or piecewise (non-ergodic) generators, mixed
// baseline policies and any manager variant.
class RandomScenarioFactory {
 public:
  explicit RandomScenarioFactory(std::uint64_t seed) : rng_(seed) {}

  Scenario Next(std::int64_t horizon) {
    Scenario s;
    s.name = "random_" + std::to_string(count_++);
    const bool matrix = Coin();
    s.game = matrix ? MatrixGame() : LocationGame();
    s.events = Generator(s.game, matrix, /*depth=*/0);
    for (int i = 0; i < s.game.num_players; ++i) s.baselines.push_back(Baseline(s.game, i));
    s.manager = Manager(s.game);
    s.horizon = horizon;
    s.seed = rng_();
    return s;
  }

 private:
  int Int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double Real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool Coin() { return Int(0, 1) == 1; }
  // Coarse values make utility ties, and hence tie-breaking, common.
  double Reward() { return std::round(Real(0, 10) * 2) / 2; }

  std::vector<int> Subset(int m, bool non_empty) {
    std::vector<int> out;
    for (int j = 1; j <= m; ++j) {
      if (Coin()) out.push_back(j);
    }
    if (out.empty() && non_empty) out.push_back(Int(1, m));
    return out;
  }

  // Every event index must be observed by someone.
  void CoverEvents(GameSpec& g) {
    for (int j = 1; j <= g.event_dim; ++j) {
      bool seen = false;
      for (const auto& set : g.observation_sets) {
        for (int k : set) seen = seen || k == j;
      }
      if (!seen) {
        auto& set = g.observation_sets[static_cast<size_t>(Int(0, g.num_players - 1))];
        set.push_back(j);
        std::sort(set.begin(), set.end());
      }
    }
  }

  GameSpec LocationGame() {
    GameSpec g;
    g.num_players = Int(2, 3);
    g.event_dim = Int(2, 3);
    for (int i = 0; i < g.num_players; ++i) {
      g.action_sets.push_back(Subset(g.event_dim, true));
      g.observation_sets.push_back(Subset(g.event_dim, false));
    }
    CoverEvents(g);
    g.utility_caps.assign(static_cast<size_t>(g.num_players), 10.0);
    g.utility_name = "location_reward";
    BindUtility(g);
    return g;
  }

  GameSpec MatrixGame() {
    GameSpec g;
    g.num_players = Int(2, 3);
    g.event_dim = 1;
    std::uint64_t joint = 1;
    for (int i = 0; i < g.num_players; ++i) {
      const int k = Int(1, 3);
      std::vector<int> actions;
      for (int a = 1; a <= k; ++a) actions.push_back(a);
      g.action_sets.push_back(actions);
      g.observation_sets.push_back(Subset(1, false));
      joint *= static_cast<std::uint64_t>(k);
    }
    CoverEvents(g);
    const double cap = Int(1, 3) * 2.0;
    g.utility_caps.assign(static_cast<size_t>(g.num_players), cap);
    states_ = Int(2, 3);
    nlohmann::json payoffs = nlohmann::json::array();
    for (int s = 0; s < states_; ++s) {
      nlohmann::json table = nlohmann::json::array();
      for (std::uint64_t j = 0; j < joint; ++j) {
        nlohmann::json row = nlohmann::json::array();
        for (int i = 0; i < g.num_players; ++i) row.push_back(std::round(Real(0, cap) * 2) / 2);
        table.push_back(row);
      }
      payoffs.push_back(table);
    }
    g.utility_name = "matrix_game";
    g.utility_params = {{"payoffs", payoffs}};
    BindUtility(g);
    return g;
  }

  EventVector Event(const GameSpec& g, bool matrix) {
    if (matrix) return {static_cast<double>(Int(0, states_ - 1))};
    EventVector w(static_cast<size_t>(g.event_dim));
    for (auto& x : w) x = Reward();
    return w;
  }

  std::vector<double> Distribution(int k) {
    std::vector<double> p(static_cast<size_t>(k));
    double total = 0;
    for (auto& x : p) total += (x = Real(0.05, 1));
    for (auto& x : p) x /= total;
    return p;
  }

  EventGeneratorSpec Generator(const GameSpec& g, bool matrix, int depth) {
    EventGeneratorSpec spec;
    const int kind = depth > 0 ? Int(0, 2) : Int(0, 3);
    if (kind == 0) {
      spec.kind = EventGeneratorSpec::Kind::kIid;
      const int k = Int(1, 3);
      const auto p = Distribution(k);
      for (int s = 0; s < k; ++s) spec.joint.push_back({Event(g, matrix), p[static_cast<size_t>(s)]});
    } else if (kind == 1) {
      spec.kind = EventGeneratorSpec::Kind::kMarkov;
      const int k = Int(2, 3);
      for (int s = 0; s < k; ++s) {
        spec.transition.push_back(Distribution(k));
        spec.state_events.push_back(Event(g, matrix));
      }
      spec.initial_state = Int(0, k - 1);
    } else if (kind == 2) {
      spec.kind = EventGeneratorSpec::Kind::kScripted;
      const int k = Int(1, 7);
      for (int s = 0; s < k; ++s) spec.sequence.push_back(Event(g, matrix));
    } else {
      spec.kind = EventGeneratorSpec::Kind::kPiecewise;
      const int k = Int(2, 3);
      for (int s = 0; s < k; ++s) {
        spec.durations.push_back(Int(20, 400));
        spec.segments.push_back(Generator(g, matrix, depth + 1));
      }
    }
    return spec;
  }

  BaselinePolicySpec Baseline(const GameSpec& g, int player) {
    const auto& actions = g.action_sets[static_cast<size_t>(player)];
    auto pick = [&] { return actions[static_cast<size_t>(Int(0, static_cast<int>(actions.size()) - 1))]; };
    BaselinePolicySpec b;
    switch (Int(0, 3)) {
      case 0:
        b.kind = BaselinePolicySpec::Kind::kConstant;
        b.action = pick();
        break;
      case 1:
        b.kind = BaselinePolicySpec::Kind::kRandom;
        break;
      case 2:
        b.kind = BaselinePolicySpec::Kind::kScripted;
        for (int k = Int(1, 5); k > 0; --k) b.sequence.push_back(pick());
        break;
      default:
        b.kind = BaselinePolicySpec::Kind::kGreedyObserved;
        for (int i = 0; i < g.num_players; ++i) {
          const auto& a = g.action_sets[static_cast<size_t>(i)];
          b.assumed_others.push_back(a[static_cast<size_t>(Int(0, static_cast<int>(a.size()) - 1))]);
        }
        b.assumed_events = g.utility_name == "matrix_game"
                               ? EventVector{0.0}
                               : EventVector(static_cast<size_t>(g.event_dim), 5.0);
        break;
    }
    return b;
  }

  ManagerConfig Manager(const GameSpec& g) {
    static const double kV[] = {0, 1, 10, 100, 1000};
    ManagerConfig c;
    c.v = kV[Int(0, 4)];
    const auto n = static_cast<size_t>(g.num_players);
    std::vector<double> theta(n);
    for (auto& t : theta) t = std::round(Real(0, 2) * 4) / 4;
    switch (Int(0, 4)) {
      case 0:
        c.variant = Variant::kBaseline;
        break;
      case 1:
        c.variant = Variant::kWeighted;
        c.theta = theta;
        break;
      case 2:
        c.variant = Variant::kConservativeLinear;
        c.theta = theta;
        break;
      default: {
        c.variant = Coin() ? Variant::kConcave : Variant::kConservativeConcave;
        const int kind = Int(0, 2);
        if (kind == 0) {
          c.phi = MakeWeightedSumPhi(theta, g.utility_caps);
        } else if (kind == 1) {
          static const double kDelta[] = {0.5, 1, 2};
          c.phi = MakeLogOffsetPhi(theta, kDelta[Int(0, 2)], g.utility_caps);
        } else {
          c.phi = MakeMinUtilityPhi(g.utility_caps);
        }
      }
    }
    return c;
  }

  std::mt19937_64 rng_;
  int count_ = 0;
  int states_ = 2;
};

}  // namespace regret_manager::testing

#endif  // REGRET_MANAGER_TESTS_RANDOM_SCENARIOS_H_
