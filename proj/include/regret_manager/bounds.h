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

#ifndef REGRET_MANAGER_BOUNDS_H_
#define REGRET_MANAGER_BOUNDS_H_

#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "regret_manager/harness.h"
#include "regret_manager/lookahead.h"
#include "regret_manager/manager.h"
#include "regret_manager/phi.h"
#include "regret_manager/trace.h"

namespace regret_manager {

// Floating-point allowance for every inequality check.
inline constexpr double kBoundSlack = 1e-9;

// Outcome of one inequality checked at one or more times. Slack is
// lhs - rhs for ">=" checks (rhs - lhs for "<="), so negative is a
// violation; a check passes when worst_slack >= -kBoundSlack.
struct BoundCheck {
  std::string name;
  bool passed = true;
  double worst_slack = std::numeric_limits<double>::infinity();
  // Elapsed rounds t (1-based) at the worst point and first violation.
  std::int64_t worst_t = -1;
  std::int64_t first_violation_t = -1;
  // 0-based player of the first violation, -1 for vector-valued checks.
  int player = -1;
  std::int64_t points = 0;
  std::string detail;
  // Named quantities behind the verdict (lhs, rhs, psi_bar, ...).
  std::map<std::string, double> values;
};

// Parameters a checker needs beyond the trace itself.
struct BoundContext {
  GameSpec game;
  ManagerConfig manager;
  DriftConstants constants;
};

BoundContext MakeBoundContext(const Scenario& scenario);

// Frames k = 0..K-1 of size T built from the trace's (omega, b) path.
std::vector<Frame> FramesFromTrace(const Trace& trace, int frame_size,
                                   std::int64_t num_frames);

// ubar_i(t) >= xbar_i(t) - Q_i(t)/t.
BoundCheck CheckQueueRegretBound(const Trace& trace);
// ||Q(t)||/t <= sqrt((2B + 2VC)/t).
BoundCheck CheckWeightedQueueNorm(const Trace& trace, double b, double c, double v);
// ubar_i(t) - xbar_i(t) >= -sqrt((2B + 2VC)/t).
BoundCheck CheckWeightedRegretEnvelope(const Trace& trace, double b, double c, double v);
// sum_i theta_i ubar_i(KT) >= psi_bar - TB/V over the regret family.
BoundCheck CheckWeightedLookahead(const Trace& trace, const GameSpec& game,
                         std::span<const double> theta, int frame_size,
                         std::int64_t num_frames, double b, double v);
// sqrt(||Q||^2 + ||Z||^2)/t <= sqrt((2C' + 2V phi_max)/t).
BoundCheck CheckConcaveQueueNorm(const Trace& trace, double c_prime, double v,
                          double phi_max);
BoundCheck CheckConcaveRegretEnvelope(const Trace& trace, double c_prime, double v,
                          double phi_max);
// phi(ubar(t)) >= (1/t) sum phi(gamma) - L sqrt((2C' + 2V phi_max)/t).
BoundCheck CheckConcaveJensen(const Trace& trace, const PhiSpec& phi,
                          double c_prime, double v);
// (1/KT) sum phi(gamma) >= psi_bar - TC'/V, and the combined form
// phi(ubar(KT)) >= psi_bar - TC'/V - L sqrt((2C' + 2V phi_max)/KT).
std::vector<BoundCheck> CheckConcaveLookahead(const Trace& trace, const GameSpec& game,
                                      const PhiSpec& phi, int frame_size,
                                      std::int64_t num_frames, double c_prime,
                                      double v);
// ||ubar(t) - gammabar(t)|| == ||Z(t)||/t.
BoundCheck CheckProxyIdentity(const Trace& trace);
// u_i(t) >= x_i(t) exactly, every round.
BoundCheck CheckConservativePerRound(const Trace& trace);
// ||Z(t)||/t <= sqrt((2D + 2V phi_max)/t) and
// phi(ubar(t)) >= (1/t) sum phi(gamma) - L sqrt((2D + 2V phi_max)/t).
std::vector<BoundCheck> CheckConservativeEnvelope(const Trace& trace,
                                                  const PhiSpec& phi, double d,
                                                  double v);
// phi(ubar(KT)) >= psi_bar - DT/V - L sqrt((2D + 2V phi_max)/KT) over the
// conservative family, plus the (1/KT) sum phi(gamma) >= psi_bar - DT/V
// intermediate.
std::vector<BoundCheck> CheckConservativeFinal(const Trace& trace,
                                               const GameSpec& game,
                                               const PhiSpec& phi,
                                               int frame_size,
                                               std::int64_t num_frames,
                                               double d, double v);
// Greedy per-round choice is frame-optimal for a linear objective over the
// conservative family: sum theta ubar(KT) >= psi_bar.
BoundCheck CheckConservativeLinear(const Trace& trace, const GameSpec& game,
                                   std::span<const double> theta,
                                   int frame_size, std::int64_t num_frames);
// The suggestion's per-round objective, under the queue values the manager
// saw, is no worse than any candidate's: every joint action (feasible ones
// for conservative variants) when `game` is given, else the baseline.
BoundCheck CheckArgmaxDominance(const Trace& trace, const ManagerConfig& config,
                                const GameSpec* game = nullptr);
// Stored running averages agree with a recomputation to 1e-12.
BoundCheck CheckRunningAverages(const Trace& trace);

// Every checker applicable to the context's variant; oracle-based ones run
// once per entry of `frame_sizes` with K = floor(rounds / T).
std::vector<BoundCheck> CheckAllApplicable(const BoundContext& context,
                                           const Trace& trace,
                                           std::span<const int> frame_sizes);

bool AllPassed(std::span<const BoundCheck> checks);
nlohmann::json BoundCheckToJson(const BoundCheck& check);

// Final averages, queue extremes, constants and check verdicts.
nlohmann::json BuildSummary(const Scenario& scenario, const Trace& trace,
                            std::span<const BoundCheck> checks);

}  // namespace regret_manager

#endif  // REGRET_MANAGER_BOUNDS_H_
