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

#include "regret_manager/lookahead.h"

#include <limits>
#include <string>

#include "regret_manager/compensated_sum.h"
#include "regret_manager/error.h"

namespace regret_manager {

LookaheadResult PsiFrame(const Frame& frame, const GameSpec& game,
                         LookaheadFamily family, const PhiSpec& objective,
                         std::uint64_t guard_limit) {
  const size_t horizon = frame.events.size();
  if (horizon == 0 || frame.baselines.size() != horizon) {
    throw Error(ErrorCode::kInvalidInput,
                "frame needs T >= 1 events and T baselines");
  }
  const auto n = static_cast<size_t>(game.num_players);
  const auto joint = EnumerateJointActions(game, guard_limit);

  // Per-slot admissible candidates with their utilities.
  struct Candidate {
    const ActionVector* actions;
    UtilityVector u;
  };
  std::vector<std::vector<Candidate>> slots(horizon);
  std::vector<double> baseline_sum(n, 0.0);
  std::uint64_t total = 1;
  for (size_t s = 0; s < horizon; ++s) {
    const UtilityVector x =
        EvaluateUtilities(game, frame.baselines[s], frame.events[s]);
    for (size_t i = 0; i < n; ++i) baseline_sum[i] += x[i];
    for (const auto& a : joint) {
      UtilityVector u = EvaluateUtilities(game, a, frame.events[s]);
      if (family == LookaheadFamily::kConservative) {
        bool ok = true;
        for (size_t i = 0; i < n && ok; ++i) ok = u[i] >= x[i];
        if (!ok) continue;
      }
      slots[s].push_back({&a, std::move(u)});
    }
    const std::uint64_t width = slots[s].size();
    if (total > guard_limit / width) {
      throw Error(ErrorCode::kTooLarge,
                  "lookahead over frame " + std::to_string(frame.k) +
                      " exceeds guard limit " + std::to_string(guard_limit));
    }
    total *= width;
  }

  LookaheadResult best;
  best.family = family;
  best.psi = -std::numeric_limits<double>::infinity();
  std::vector<size_t> pos(horizon, 0);
  std::vector<double> sum(n), gamma(n);
  bool found = false;
  while (true) {
    ++best.sequences_evaluated;
    std::fill(sum.begin(), sum.end(), 0.0);
    for (size_t s = 0; s < horizon; ++s) {
      const auto& u = slots[s][pos[s]].u;
      for (size_t i = 0; i < n; ++i) sum[i] += u[i];
    }
    bool admissible = true;
    if (family == LookaheadFamily::kRegret) {
      // Same summation order as baseline_sum, so the all-baseline sequence
      // compares equal and stays admissible.
      for (size_t i = 0; i < n && admissible; ++i) admissible = sum[i] >= baseline_sum[i];
    }
    if (admissible) {
      for (size_t i = 0; i < n; ++i) gamma[i] = sum[i] / static_cast<double>(horizon);
      const double value = EvalPhi(objective, gamma);
      if (!found || value > best.psi) {
        found = true;
        best.psi = value;
        best.gamma_star = gamma;
        best.optimizer.clear();
        for (size_t s = 0; s < horizon; ++s) best.optimizer.push_back(*slots[s][pos[s]].actions);
      }
    }
    size_t s = horizon;
    bool done = true;
    while (s > 0) {
      --s;
      if (++pos[s] < slots[s].size()) {
        done = false;
        break;
      }
      pos[s] = 0;
    }
    if (done) break;
  }
  if (!found) {
    throw Error(ErrorCode::kAssumptionViolation,
                "no admissible sequence in frame " + std::to_string(frame.k));
  }
  return best;
}

LookaheadResult PsiFrame(const Frame& frame, const GameSpec& game,
                         LookaheadFamily family, const PhiSpec& objective) {
  return PsiFrame(frame, game, family, objective, GuardLimit());
}

double FrameAveragePsi(std::span<const Frame> frames, const GameSpec& game,
                       LookaheadFamily family, const PhiSpec& objective) {
  if (frames.empty()) throw Error(ErrorCode::kInvalidInput, "K must be >= 1");
  CompensatedSum total;
  for (const auto& f : frames) total.Add(PsiFrame(f, game, family, objective).psi);
  return total.Total() / static_cast<double>(frames.size());
}

}  // namespace regret_manager
