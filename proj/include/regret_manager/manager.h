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

#ifndef REGRET_MANAGER_MANAGER_H_
#define REGRET_MANAGER_MANAGER_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "regret_manager/game.h"
#include "regret_manager/phi.h"

namespace regret_manager {

enum class Variant {
  // Suggests the baseline itself; no queues. Used to measure baselines.
  kBaseline,
  // Maximise sum_i theta_i u_i subject to time-average no-regret.
  kWeighted,
  // Maximise phi(u) subject to time-average no-regret.
  kConcave,
  // Maximise sum_i theta_i u_i subject to per-round no-regret.
  kConservativeLinear,
  // Maximise phi(u) subject to per-round no-regret.
  kConservativeConcave,
};

std::string_view VariantName(Variant v);
std::optional<Variant> ParseVariant(std::string_view name);
bool UsesQ(Variant v);
bool UsesZ(Variant v);

struct ManagerConfig {
  Variant variant = Variant::kWeighted;
  double v = 0;
  // kWeighted, kConservativeLinear.
  std::vector<double> theta;
  // kConcave, kConservativeConcave.
  std::optional<PhiSpec> phi;
};

// Throws Error(kInvalidInput) unless the config carries exactly what its
// variant needs and matches the game's player count.
void ValidateManagerConfig(const ManagerConfig& config, const GameSpec& game);

struct ManagerState {
  std::int64_t t = 0;
  // Regret queues, always >= 0.
  std::vector<double> q;
  // Proxy queues, signed.
  std::vector<double> z;

  static ManagerState Initial(int num_players);
};

// Constants of the drift bounds for a game and config:
//   b        = 1/2 sum_i (u_i^max)^2            (weighted drift)
//   c        = sum_i |theta_i| u_i^max          (weighted objective range)
//   c_prime  = sum_i (u_i^max)^2                (concave drift)
//   d        = 1/2 sum_i (u_i^max)^2            (conservative drift)
struct DriftConstants {
  double b = 0;
  double c = 0;
  double c_prime = 0;
  double d = 0;
};

DriftConstants ComputeDriftConstants(const GameSpec& game,
                                     const ManagerConfig& config);

struct StepOutput {
  ActionVector suggestion;
  // Empty for variants without proxies.
  std::vector<double> gamma;
  UtilityVector u;  // under the suggestion
  UtilityVector x;  // under the baseline
  // Value of the per-round argmax objective at the suggestion.
  double objective = 0;
};

// One round's outcome: the state after the queue updates and what was
// decided. `state_after.t` is one more than the input state's.
struct RoundResult {
  ManagerState state_after;
  StepOutput step;
};

// Every argmax below is exhaustive over the enumerated joint actions; ties go
// to the first candidate in enumeration order. Manager objects hold no
// mutable state.
class Manager {
 public:
  Manager(GameSpec game, ManagerConfig config);

  const GameSpec& game() const { return game_; }
  const ManagerConfig& config() const { return config_; }
  const std::vector<ActionVector>& joint_actions() const { return joint_; }
  const DriftConstants& constants() const { return constants_; }

  // argmax_a sum_i u_i(a, w) (V theta_i + Q_i).
  StepOutput WeightedStep(const ManagerState& state, const EventVector& events,
                          const ActionVector& baseline) const;

  // gamma = ProxyArgmax(phi, Z, V); argmax_a sum_i u_i(a, w) (Q_i + Z_i).
  StepOutput ConcaveStep(const ManagerState& state, const EventVector& events,
                         const ActionVector& baseline) const;

  // Joint actions no worse than the baseline for every player, in
  // enumeration order. Always contains the baseline.
  std::vector<ActionVector> ConservativeFeasibleSet(
      const EventVector& events, const ActionVector& baseline) const;

  // argmax over the feasible set of sum_i theta_i u_i(a, w).
  StepOutput ConservativeLinearStep(const ManagerState& state,
                                    const EventVector& events,
                                    const ActionVector& baseline) const;

  // gamma = ProxyArgmax(phi, Z, V); argmax over the feasible set of
  // sum_i Z_i u_i(a, w).
  StepOutput ConservativeConcaveStep(const ManagerState& state,
                                     const EventVector& events,
                                     const ActionVector& baseline) const;

  StepOutput BaselineStep(const ManagerState& state, const EventVector& events,
                          const ActionVector& baseline) const;

  // Validates the round's inputs (Error(kProtocol) for a missing or
  // short baseline), dispatches to the variant's step and applies its
  // queue updates.
  RoundResult RunRound(const ManagerState& state, const EventVector& events,
                       const ActionVector& baseline) const;

 private:
  StepOutput ArgmaxOver(std::span<const ActionVector> candidates,
                        std::span<const double> weights,
                        const EventVector& events,
                        const ActionVector& baseline) const;

  GameSpec game_;
  ManagerConfig config_;
  std::vector<ActionVector> joint_;
  DriftConstants constants_;
};

// Q_i' = max(Q_i + x_i - u_i, 0).
ManagerState UpdateQueueQ(const ManagerState& state, std::span<const double> x,
                          std::span<const double> u);

// Z_i' = Z_i + gamma_i - u_i.
ManagerState UpdateQueueZ(const ManagerState& state,
                          std::span<const double> gamma,
                          std::span<const double> u);

}  // namespace regret_manager

#endif  // REGRET_MANAGER_MANAGER_H_
