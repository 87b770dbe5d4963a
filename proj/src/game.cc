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

#include "regret_manager/game.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>

#include "regret_manager/error.h"
#include "regret_manager/location_game.h"

namespace regret_manager {
namespace {

std::string FormatActions(const ActionVector& a) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << ")";
  return os.str();
}

std::string FormatEvents(const EventVector& w) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  os << ")";
  return os.str();
}

// Position of each player's action inside its action set, combined in mixed
// radix with player 0 most significant. Matches EnumerateJointActions order.
class JointIndexer {
 public:
  explicit JointIndexer(const GameSpec& shape) : sets_(shape.action_sets) {}

  std::size_t Index(const ActionVector& a) const {
    std::size_t index = 0;
    for (size_t i = 0; i < sets_.size(); ++i) {
      auto it = std::find(sets_[i].begin(), sets_[i].end(), a[i]);
      if (it == sets_[i].end()) {
        throw Error(ErrorCode::kInvalidInput,
                    "action " + std::to_string(a[i]) + " not in A_" +
                        std::to_string(i + 1));
      }
      index = index * sets_[i].size() +
              static_cast<std::size_t>(it - sets_[i].begin());
    }
    return index;
  }

 private:
  std::vector<std::vector<int>> sets_;
};

// Payoff tables indexed by a discrete state read from omega_1:
// payoffs[state][joint action index][player].
UtilityFn MakeMatrixGame(const GameSpec& shape, const nlohmann::json& params) {
  if (!params.contains("payoffs") || !params["payoffs"].is_array()) {
    throw Error(ErrorCode::kSchema, "matrix_game requires params.payoffs");
  }
  auto payoffs =
      params["payoffs"].get<std::vector<std::vector<std::vector<double>>>>();
  const std::uint64_t joint = JointActionCount(shape);
  for (const auto& table : payoffs) {
    if (table.size() != joint) {
      throw Error(ErrorCode::kSchema,
                  "matrix_game table size does not match joint action count");
    }
    for (const auto& row : table) {
      if (row.size() != static_cast<size_t>(shape.num_players)) {
        throw Error(ErrorCode::kSchema, "matrix_game row length != N");
      }
    }
  }
  JointIndexer indexer(shape);
  return [payoffs = std::move(payoffs), indexer](const ActionVector& a,
                                                 const EventVector& w) {
    const double s = std::floor(w.at(0));
    if (s < 0 || s >= static_cast<double>(payoffs.size())) {
      throw Error(ErrorCode::kInvalidInput, "matrix_game state out of range");
    }
    return payoffs[static_cast<size_t>(s)][indexer.Index(a)];
  };
}

struct Registry {
  std::mutex mu;
  std::map<std::string, UtilityFactory> factories;

  Registry() {
    factories["location_reward"] = [](const GameSpec&, const nlohmann::json&) {
      return UtilityFn(LocationUtility);
    };
    factories["matrix_game"] = MakeMatrixGame;
  }
};

Registry& GlobalRegistry() {
  static Registry registry;
  return registry;
}

}  // namespace

std::uint64_t GuardLimit() {
  if (const char* env = std::getenv("REGRET_MANAGER_GUARD_LIMIT")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v >= 1) return static_cast<std::uint64_t>(v);
  }
  return kDefaultGuardLimit;
}

bool IsValidActionVector(const GameSpec& spec, const ActionVector& actions) {
  if (actions.size() != static_cast<size_t>(spec.num_players) ||
      spec.action_sets.size() != actions.size()) {
    return false;
  }
  for (size_t i = 0; i < actions.size(); ++i) {
    const auto& set = spec.action_sets[i];
    if (std::find(set.begin(), set.end(), actions[i]) == set.end()) {
      return false;
    }
  }
  return true;
}

UtilityVector EvaluateUtilities(const GameSpec& spec,
                                const ActionVector& actions,
                                const EventVector& events) {
  if (events.size() != static_cast<size_t>(spec.event_dim)) {
    throw Error(ErrorCode::kInvalidInput,
                "event vector has length " + std::to_string(events.size()) +
                    ", expected " + std::to_string(spec.event_dim));
  }
  if (!IsValidActionVector(spec, actions)) {
    throw Error(ErrorCode::kInvalidInput,
                "invalid action vector " + FormatActions(actions));
  }
  if (!spec.utility) {
    throw Error(ErrorCode::kInvalidInput, "game has no bound utility");
  }
  UtilityVector u = spec.utility(actions, events);
  if (u.size() != actions.size()) {
    throw Error(ErrorCode::kAssumptionViolation,
                "utility evaluator returned wrong length");
  }
  for (size_t i = 0; i < u.size(); ++i) {
    if (!(u[i] >= 0.0 && u[i] <= spec.utility_caps[i])) {
      std::ostringstream os;
      os.precision(17);
      os << "utility of player " << i + 1 << " is " << u[i]
         << ", outside [0, " << spec.utility_caps[i] << "] at alpha="
         << FormatActions(actions) << " omega=" << FormatEvents(events);
      throw Error(ErrorCode::kAssumptionViolation, os.str());
    }
  }
  return u;
}

Observation Observe(const GameSpec& spec, int player,
                    const EventVector& events) {
  if (player < 0 || player >= spec.num_players) {
    throw Error(ErrorCode::kInvalidInput,
                "player " + std::to_string(player + 1) + " out of range");
  }
  if (events.size() != static_cast<size_t>(spec.event_dim)) {
    throw Error(ErrorCode::kInvalidInput, "event vector length mismatch");
  }
  Observation obs;
  obs.player = player;
  for (int j : spec.observation_sets[player]) {
    obs.visible[j] = events.at(static_cast<size_t>(j - 1));
  }
  return obs;
}

std::uint64_t JointActionCount(const GameSpec& spec) {
  std::uint64_t count = 1;
  for (const auto& set : spec.action_sets) {
    if (set.empty()) return 0;
    if (count > std::numeric_limits<std::uint64_t>::max() / set.size()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    count *= set.size();
  }
  return count;
}

std::vector<ActionVector> EnumerateJointActions(const GameSpec& spec,
                                                std::uint64_t guard_limit) {
  const std::uint64_t count = JointActionCount(spec);
  if (count > guard_limit) {
    throw Error(ErrorCode::kTooLarge,
                "joint action space of size " + std::to_string(count) +
                    " exceeds guard limit " + std::to_string(guard_limit));
  }
  std::vector<ActionVector> out;
  if (count == 0) return out;
  out.reserve(count);
  const size_t n = spec.action_sets.size();
  std::vector<size_t> pos(n, 0);
  while (true) {
    ActionVector a(n);
    for (size_t i = 0; i < n; ++i) a[i] = spec.action_sets[i][pos[i]];
    out.push_back(std::move(a));
    // Odometer with the last player varying fastest.
    size_t i = n;
    while (i > 0) {
      --i;
      if (++pos[i] < spec.action_sets[i].size()) break;
      pos[i] = 0;
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
}

std::vector<ActionVector> EnumerateJointActions(const GameSpec& spec) {
  return EnumerateJointActions(spec, GuardLimit());
}

ValidationReport ValidateGame(const GameSpec& spec,
                              std::span<const EventVector> event_samples) {
  ValidationReport report;
  auto fail = [&report](std::string finding) {
    report.ok = false;
    report.findings.push_back(std::move(finding));
  };

  if (spec.num_players <= 0) fail("num_players must be positive");
  if (spec.event_dim <= 0) fail("event_dim must be positive");
  const auto n = static_cast<size_t>(std::max(spec.num_players, 0));
  if (spec.observation_sets.size() != n) fail("observation_sets size != N");
  if (spec.action_sets.size() != n) fail("action_sets size != N");
  if (spec.utility_caps.size() != n) fail("utility_caps size != N");
  if (!report.ok) return report;

  std::set<int> covered;
  for (size_t i = 0; i < n; ++i) {
    for (int j : spec.observation_sets[i]) {
      if (j < 1 || j > spec.event_dim) {
        fail("S_" + std::to_string(i + 1) + " contains out-of-range index " +
             std::to_string(j));
      } else {
        covered.insert(j);
      }
    }
  }
  for (int j = 1; j <= spec.event_dim; ++j) {
    if (!covered.count(j)) {
      fail("event index " + std::to_string(j) +
           " is observed by no player (union of S_i misses " +
           std::to_string(j) + ")");
    }
  }
  for (size_t i = 0; i < n; ++i) {
    const auto& set = spec.action_sets[i];
    if (set.empty()) fail("A_" + std::to_string(i + 1) + " is empty");
    if (std::set<int>(set.begin(), set.end()).size() != set.size()) {
      fail("A_" + std::to_string(i + 1) + " has duplicate actions");
    }
    if (!(spec.utility_caps[i] > 0) || !std::isfinite(spec.utility_caps[i])) {
      fail("u_" + std::to_string(i + 1) + "^max must be finite and > 0");
    }
  }
  if (!spec.utility) fail("no utility evaluator bound");
  if (!report.ok) return report;

  std::vector<ActionVector> joint;
  try {
    joint = EnumerateJointActions(spec);
  } catch (const Error& e) {
    fail(e.what());
    return report;
  }
  for (const auto& w : event_samples) {
    if (w.size() != static_cast<size_t>(spec.event_dim)) {
      fail("event sample " + FormatEvents(w) + " has wrong length");
      continue;
    }
    for (const auto& a : joint) {
      try {
        EvaluateUtilities(spec, a, w);
      } catch (const Error& e) {
        fail(e.what());
      }
    }
  }
  return report;
}

void RegisterUtility(const std::string& name, UtilityFactory factory) {
  auto& reg = GlobalRegistry();
  std::lock_guard lock(reg.mu);
  reg.factories[name] = std::move(factory);
}

bool HasUtility(const std::string& name) {
  auto& reg = GlobalRegistry();
  std::lock_guard lock(reg.mu);
  return reg.factories.count(name) > 0;
}

std::vector<std::string> RegisteredUtilities() {
  auto& reg = GlobalRegistry();
  std::lock_guard lock(reg.mu);
  std::vector<std::string> names;
  for (const auto& [name, _] : reg.factories) names.push_back(name);
  return names;
}

void BindUtility(GameSpec& spec) {
  UtilityFactory factory;
  {
    auto& reg = GlobalRegistry();
    std::lock_guard lock(reg.mu);
    auto it = reg.factories.find(spec.utility_name);
    if (it == reg.factories.end()) {
      throw Error(ErrorCode::kSchema,
                  "unknown utility function '" + spec.utility_name + "'");
    }
    factory = it->second;
  }
  spec.utility = factory(spec, spec.utility_params);
}

}  // namespace regret_manager
