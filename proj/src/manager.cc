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

#include "regret_manager/manager.h"

#include <cmath>
#include <string>

#include "regret_manager/error.h"

namespace regret_manager {

std::string_view VariantName(Variant v) {
  switch (v) {
    case Variant::kBaseline:
      return "baseline";
    case Variant::kWeighted:
      return "weighted";
    case Variant::kConcave:
      return "concave";
    case Variant::kConservativeLinear:
      return "conservative_linear";
    case Variant::kConservativeConcave:
      return "conservative_concave";
  }
  return "unknown";
}

std::optional<Variant> ParseVariant(std::string_view name) {
  for (Variant v : {Variant::kBaseline, Variant::kWeighted, Variant::kConcave,
                    Variant::kConservativeLinear, Variant::kConservativeConcave}) {
    if (VariantName(v) == name) return v;
  }
  return std::nullopt;
}

bool UsesQ(Variant v) { return v == Variant::kWeighted || v == Variant::kConcave; }

bool UsesZ(Variant v) {
  return v == Variant::kConcave || v == Variant::kConservativeConcave;
}

void ValidateManagerConfig(const ManagerConfig& config, const GameSpec& game) {
  if (!(config.v >= 0) || !std::isfinite(config.v)) {
    throw Error(ErrorCode::kInvalidInput, "V must be finite and >= 0");
  }
  const auto n = static_cast<size_t>(game.num_players);
  const bool linear = config.variant == Variant::kWeighted ||
                      config.variant == Variant::kConservativeLinear;
  const bool concave = UsesZ(config.variant);
  if (linear) {
    if (config.theta.size() != n) {
      throw Error(ErrorCode::kInvalidInput,
                  std::string(VariantName(config.variant)) +
                      " manager needs theta of length N");
    }
    for (double t : config.theta) {
      if (!std::isfinite(t)) throw Error(ErrorCode::kInvalidInput, "theta must be finite");
    }
  } else if (!config.theta.empty()) {
    throw Error(ErrorCode::kInvalidInput,
                std::string(VariantName(config.variant)) +
                    " manager does not take theta");
  }
  if (concave) {
    if (!config.phi) {
      throw Error(ErrorCode::kInvalidInput,
                  std::string(VariantName(config.variant)) +
                      " manager needs phi");
    }
    ValidatePhi(*config.phi, /*require_nonnegative=*/true);
    if (config.phi->caps != game.utility_caps) {
      throw Error(ErrorCode::kInvalidInput,
                  "phi box must be the game's utility caps");
    }
  } else if (config.phi) {
    throw Error(ErrorCode::kInvalidInput,
                std::string(VariantName(config.variant)) +
                    " manager does not take phi");
  }
}

ManagerState ManagerState::Initial(int num_players) {
  ManagerState s;
  s.q.assign(static_cast<size_t>(num_players), 0.0);
  s.z.assign(static_cast<size_t>(num_players), 0.0);
  return s;
}

DriftConstants ComputeDriftConstants(const GameSpec& game,
                                     const ManagerConfig& config) {
  DriftConstants k;
  for (size_t i = 0; i < game.utility_caps.size(); ++i) {
    const double cap = game.utility_caps[i];
    k.c_prime += cap * cap;
    if (i < config.theta.size()) k.c += std::abs(config.theta[i]) * cap;
  }
  k.b = 0.5 * k.c_prime;
  k.d = 0.5 * k.c_prime;
  return k;
}

Manager::Manager(GameSpec game, ManagerConfig config)
    : game_(std::move(game)), config_(std::move(config)) {
  ValidateManagerConfig(config_, game_);
  joint_ = EnumerateJointActions(game_);
  constants_ = ComputeDriftConstants(game_, config_);
}

StepOutput Manager::ArgmaxOver(std::span<const ActionVector> candidates,
                               std::span<const double> weights,
                               const EventVector& events,
                               const ActionVector& baseline) const {
  StepOutput out;
  bool first = true;
  for (const auto& a : candidates) {
    UtilityVector u = EvaluateUtilities(game_, a, events);
    double value = 0;
    for (size_t i = 0; i < u.size(); ++i) value += weights[i] * u[i];
    if (first || value > out.objective) {
      out.objective = value;
      out.suggestion = a;
      out.u = std::move(u);
      first = false;
    }
  }
  out.x = EvaluateUtilities(game_, baseline, events);
  return out;
}

StepOutput Manager::WeightedStep(const ManagerState& state,
                                 const EventVector& events,
                                 const ActionVector& baseline) const {
  if (config_.theta.size() != game_.utility_caps.size()) {
    throw Error(ErrorCode::kInvalidInput, "weighted step needs theta");
  }
  std::vector<double> w(config_.theta.size());
  for (size_t i = 0; i < w.size(); ++i) w[i] = config_.v * config_.theta[i] + state.q[i];
  return ArgmaxOver(joint_, w, events, baseline);
}

StepOutput Manager::ConcaveStep(const ManagerState& state,
                                const EventVector& events,
                                const ActionVector& baseline) const {
  if (!config_.phi) throw Error(ErrorCode::kInvalidInput, "concave step needs phi");
  std::vector<double> w(state.q.size());
  for (size_t i = 0; i < w.size(); ++i) w[i] = state.q[i] + state.z[i];
  StepOutput out = ArgmaxOver(joint_, w, events, baseline);
  out.gamma = ProxyArgmax(*config_.phi, state.z, config_.v);
  return out;
}

std::vector<ActionVector> Manager::ConservativeFeasibleSet(
    const EventVector& events, const ActionVector& baseline) const {
  const UtilityVector x = EvaluateUtilities(game_, baseline, events);
  std::vector<ActionVector> feasible;
  for (const auto& a : joint_) {
    const UtilityVector u = EvaluateUtilities(game_, a, events);
    bool ok = true;
    for (size_t i = 0; i < u.size() && ok; ++i) ok = u[i] >= x[i];
    if (ok) feasible.push_back(a);
  }
  return feasible;
}

StepOutput Manager::ConservativeLinearStep(const ManagerState&,
                                           const EventVector& events,
                                           const ActionVector& baseline) const {
  if (config_.theta.size() != game_.utility_caps.size()) {
    throw Error(ErrorCode::kInvalidInput, "conservative linear step needs theta");
  }
  const auto feasible = ConservativeFeasibleSet(events, baseline);
  return ArgmaxOver(feasible, config_.theta, events, baseline);
}

StepOutput Manager::ConservativeConcaveStep(const ManagerState& state,
                                            const EventVector& events,
                                            const ActionVector& baseline) const {
  if (!config_.phi) {
    throw Error(ErrorCode::kInvalidInput, "conservative concave step needs phi");
  }
  const auto feasible = ConservativeFeasibleSet(events, baseline);
  StepOutput out = ArgmaxOver(feasible, state.z, events, baseline);
  out.gamma = ProxyArgmax(*config_.phi, state.z, config_.v);
  return out;
}

StepOutput Manager::BaselineStep(const ManagerState&, const EventVector& events,
                                 const ActionVector& baseline) const {
  StepOutput out;
  out.suggestion = baseline;
  out.x = EvaluateUtilities(game_, baseline, events);
  out.u = out.x;
  return out;
}

RoundResult Manager::RunRound(const ManagerState& state,
                              const EventVector& events,
                              const ActionVector& baseline) const {
  const auto n = static_cast<size_t>(game_.num_players);
  if (baseline.size() != n) {
    throw Error(ErrorCode::kProtocol,
                "round " + std::to_string(state.t) + ": expected " +
                    std::to_string(n) + " baseline decisions, got " +
                    std::to_string(baseline.size()));
  }
  if (events.size() != static_cast<size_t>(game_.event_dim)) {
    throw Error(ErrorCode::kProtocol,
                "round " + std::to_string(state.t) +
                    ": incomplete event observations");
  }
  if (state.q.size() != n || state.z.size() != n) {
    throw Error(ErrorCode::kInvalidInput, "manager state has wrong dimension");
  }

  RoundResult r;
  switch (config_.variant) {
    case Variant::kBaseline:
      r.step = BaselineStep(state, events, baseline);
      r.state_after = state;
      break;
    case Variant::kWeighted:
      r.step = WeightedStep(state, events, baseline);
      r.state_after = UpdateQueueQ(state, r.step.x, r.step.u);
      break;
    case Variant::kConcave:
      r.step = ConcaveStep(state, events, baseline);
      r.state_after = UpdateQueueZ(UpdateQueueQ(state, r.step.x, r.step.u),
                                   r.step.gamma, r.step.u);
      break;
    case Variant::kConservativeLinear:
      r.step = ConservativeLinearStep(state, events, baseline);
      r.state_after = state;
      break;
    case Variant::kConservativeConcave:
      r.step = ConservativeConcaveStep(state, events, baseline);
      r.state_after = UpdateQueueZ(state, r.step.gamma, r.step.u);
      break;
  }
  r.state_after.t = state.t + 1;
  return r;
}

ManagerState UpdateQueueQ(const ManagerState& state, std::span<const double> x,
                          std::span<const double> u) {
  ManagerState next = state;
  for (size_t i = 0; i < next.q.size(); ++i) {
    next.q[i] = std::max(state.q[i] + x[i] - u[i], 0.0);
  }
  return next;
}

ManagerState UpdateQueueZ(const ManagerState& state,
                          std::span<const double> gamma,
                          std::span<const double> u) {
  ManagerState next = state;
  for (size_t i = 0; i < next.z.size(); ++i) {
    next.z[i] = state.z[i] + gamma[i] - u[i];
  }
  return next;
}

}  // namespace regret_manager
