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

#ifndef REGRET_MANAGER_LOOKAHEAD_H_
#define REGRET_MANAGER_LOOKAHEAD_H_

#include <cstdint>
#include <span>
#include <vector>

#include "regret_manager/game.h"
#include "regret_manager/phi.h"

namespace regret_manager {

// T consecutive rounds kT..(k+1)T-1 of an event/baseline path.
struct Frame {
  std::int64_t k = 0;
  std::vector<EventVector> events;
  std::vector<ActionVector> baselines;
};

enum class LookaheadFamily {
  // Frame-average utilities must dominate frame-average baseline utilities.
  kRegret,
  // Every slot restricted to joint actions no worse than its baseline.
  kConservative,
  // No regret constraint at all (relaxation used in tests).
  kUnconstrained,
};

struct LookaheadResult {
  double psi = 0;
  std::vector<ActionVector> optimizer;
  // Frame-average utilities of `optimizer`; phi(gamma_star) == psi.
  std::vector<double> gamma_star;
  LookaheadFamily family = LookaheadFamily::kRegret;
  std::uint64_t sequences_evaluated = 0;
};

// Best value of `objective` over the frame-average utilities of all action
// sequences allowed by `family`, by exhaustive enumeration. The all-baseline
// sequence is always admissible, so the result is always defined. Ties keep
// the first sequence in lexicographic enumeration order. Throws
// Error(kTooLarge) when the search exceeds `guard_limit` sequences.
LookaheadResult PsiFrame(const Frame& frame, const GameSpec& game,
                         LookaheadFamily family, const PhiSpec& objective,
                         std::uint64_t guard_limit);
LookaheadResult PsiFrame(const Frame& frame, const GameSpec& game,
                         LookaheadFamily family, const PhiSpec& objective);

// (1/K) sum_k psi_T[k] over the given frames.
double FrameAveragePsi(std::span<const Frame> frames, const GameSpec& game,
                       LookaheadFamily family, const PhiSpec& objective);

}  // namespace regret_manager

#endif  // REGRET_MANAGER_LOOKAHEAD_H_
