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

#include "regret_manager/bounds.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "regret_manager/compensated_sum.h"
#include "regret_manager/error.h"
#include "regret_manager/scenario.h"

namespace regret_manager {
namespace {

double Norm(std::span<const double> v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::string Fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string WithFrame(const std::string& name, int frame_size) {
  return name + "[T=" + std::to_string(frame_size) + "]";
}

class Tracker {
 public:
  explicit Tracker(std::string name) { check_.name = std::move(name); }

  void Observe(double slack, std::int64_t t, int player,
               double tolerance = kBoundSlack) {
    ++check_.points;
    if (slack < check_.worst_slack) {
      check_.worst_slack = slack;
      check_.worst_t = t;
      if (check_.passed) check_.player = player;
    }
    if (check_.passed && slack < -tolerance) {
      check_.passed = false;
      check_.first_violation_t = t;
      check_.player = player;
    }
  }

  BoundCheck Finish(std::string detail = {}) {
    if (check_.points == 0) {
      check_.detail = detail.empty() ? "no rounds to check" : detail;
    } else if (!check_.passed) {
      check_.detail = "violated first at t=" +
                      std::to_string(check_.first_violation_t) +
                      (check_.player >= 0
                           ? " player " + std::to_string(check_.player + 1)
                           : std::string()) +
                      ", worst slack " + Fmt(check_.worst_slack) +
                      (detail.empty() ? "" : "; " + detail);
    } else {
      check_.detail = detail;
    }
    return std::move(check_);
  }

  BoundCheck& check() { return check_; }

 private:
  BoundCheck check_;
};

// Running sum of phi(gamma(tau)) so Jensen-type checks can use prefixes.
std::vector<double> PhiGammaPrefixMeans(const Trace& trace, const PhiSpec& phi) {
  std::vector<double> means;
  means.reserve(trace.rounds.size());
  CompensatedSum sum;
  for (size_t k = 0; k < trace.rounds.size(); ++k) {
    sum.Add(EvalPhi(phi, trace.rounds[k].gamma));
    means.push_back(sum.Total() / static_cast<double>(k + 1));
  }
  return means;
}

struct FrameTotals {
  double psi_bar = 0;
  std::int64_t rounds = 0;
};

FrameTotals LookaheadMean(const Trace& trace, const GameSpec& game,
                          LookaheadFamily family, const PhiSpec& objective,
                          int frame_size, std::int64_t num_frames) {
  const auto frames = FramesFromTrace(trace, frame_size, num_frames);
  return {FrameAveragePsi(frames, game, family, objective),
          static_cast<std::int64_t>(frame_size) * num_frames};
}

// One ">=" comparison at a single time.
BoundCheck SinglePoint(std::string name, double lhs, double rhs, std::int64_t t,
                       std::map<std::string, double> values,
                       double tolerance = kBoundSlack) {
  Tracker tracker(std::move(name));
  tracker.Observe(lhs - rhs, t, -1, tolerance);
  values["lhs"] = lhs;
  values["rhs"] = rhs;
  BoundCheck check = tracker.Finish("lhs " + Fmt(lhs) + " vs rhs " + Fmt(rhs));
  check.values = std::move(values);
  return check;
}

void RequireFrames(const Trace& trace, int frame_size, std::int64_t num_frames) {
  if (frame_size < 1 || num_frames < 1) {
    throw Error(ErrorCode::kInvalidInput, "lookahead checks need T >= 1 and K >= 1");
  }
  if (static_cast<std::int64_t>(trace.rounds.size()) <
      static_cast<std::int64_t>(frame_size) * num_frames) {
    throw Error(ErrorCode::kInvalidInput,
                "trace has " + std::to_string(trace.rounds.size()) +
                    " rounds, fewer than K*T = " +
                    std::to_string(frame_size * num_frames));
  }
}

}  // namespace

BoundContext MakeBoundContext(const Scenario& scenario) {
  return {scenario.game, scenario.manager,
          ComputeDriftConstants(scenario.game, scenario.manager)};
}

std::vector<Frame> FramesFromTrace(const Trace& trace, int frame_size,
                                   std::int64_t num_frames) {
  RequireFrames(trace, frame_size, num_frames);
  std::vector<Frame> frames(static_cast<size_t>(num_frames));
  for (std::int64_t k = 0; k < num_frames; ++k) {
    Frame& f = frames[static_cast<size_t>(k)];
    f.k = k;
    for (int s = 0; s < frame_size; ++s) {
      const auto& r = trace.rounds[static_cast<size_t>(k * frame_size + s)];
      f.events.push_back(r.omega);
      f.baselines.push_back(r.baseline);
    }
  }
  return frames;
}

BoundCheck CheckQueueRegretBound(const Trace& trace) {
  Tracker tracker("queue_regret_bound");
  for (const auto& r : trace.rounds) {
    const double t = static_cast<double>(r.t + 1);
    for (size_t i = 0; i < r.ubar.size(); ++i) {
      tracker.Observe(r.ubar[i] - r.xbar[i] + r.q[i] / t, r.t + 1, static_cast<int>(i));
    }
  }
  return tracker.Finish();
}

BoundCheck CheckWeightedQueueNorm(const Trace& trace, double b, double c, double v) {
  Tracker tracker("weighted_queue_norm");
  for (const auto& r : trace.rounds) {
    const double t = static_cast<double>(r.t + 1);
    tracker.Observe(std::sqrt((2 * b + 2 * v * c) / t) - Norm(r.q) / t, r.t + 1, -1);
  }
  return tracker.Finish();
}

BoundCheck CheckWeightedRegretEnvelope(const Trace& trace, double b, double c,
                                       double v) {
  Tracker tracker("weighted_regret_envelope");
  for (const auto& r : trace.rounds) {
    const double env = std::sqrt((2 * b + 2 * v * c) / static_cast<double>(r.t + 1));
    for (size_t i = 0; i < r.ubar.size(); ++i) {
      tracker.Observe(r.ubar[i] - r.xbar[i] + env, r.t + 1, static_cast<int>(i));
    }
  }
  return tracker.Finish();
}

BoundCheck CheckWeightedLookahead(const Trace& trace, const GameSpec& game,
                                  std::span<const double> theta, int frame_size,
                                  std::int64_t num_frames, double b, double v) {
  const std::string name = WithFrame("weighted_lookahead", frame_size);
  RequireFrames(trace, frame_size, num_frames);
  const PhiSpec objective = MakeWeightedSumPhi({theta.begin(), theta.end()}, game.utility_caps);
  const auto totals = LookaheadMean(trace, game, LookaheadFamily::kRegret, objective,
                                    frame_size, num_frames);
  const double lhs = Dot(theta, trace.rounds[totals.rounds - 1].ubar);
  std::map<std::string, double> values{{"psi_bar", totals.psi_bar},
                                       {"T", frame_size},
                                       {"K", static_cast<double>(num_frames)},
                                       {"V", v}};
  if (v <= 0) {
    Tracker tracker(name);
    BoundCheck check = tracker.Finish("V = 0: bound is vacuous");
    check.points = 1;
    values["lhs"] = lhs;
    check.values = values;
    return check;
  }
  return SinglePoint(name, lhs, totals.psi_bar - frame_size * b / v, totals.rounds, values);
}

BoundCheck CheckConcaveQueueNorm(const Trace& trace, double c_prime, double v,
                                 double phi_max) {
  Tracker tracker("concave_queue_norm");
  for (const auto& r : trace.rounds) {
    const double t = static_cast<double>(r.t + 1);
    const double norm = std::sqrt(Dot(r.q, r.q) + Dot(r.z, r.z));
    tracker.Observe(std::sqrt((2 * c_prime + 2 * v * phi_max) / t) - norm / t, r.t + 1, -1);
  }
  return tracker.Finish();
}

BoundCheck CheckConcaveRegretEnvelope(const Trace& trace, double c_prime, double v,
                                      double phi_max) {
  Tracker tracker("concave_regret_envelope");
  for (const auto& r : trace.rounds) {
    const double env =
        std::sqrt((2 * c_prime + 2 * v * phi_max) / static_cast<double>(r.t + 1));
    for (size_t i = 0; i < r.ubar.size(); ++i) {
      tracker.Observe(r.ubar[i] - r.xbar[i] + env, r.t + 1, static_cast<int>(i));
    }
  }
  return tracker.Finish();
}

namespace {

BoundCheck JensenCheck(std::string name, const Trace& trace, const PhiSpec& phi,
                       double drift, double v) {
  Tracker tracker(std::move(name));
  const double lip = LipschitzBound(phi);
  const double phi_max = PhiMax(phi);
  const auto means = PhiGammaPrefixMeans(trace, phi);
  for (size_t k = 0; k < trace.rounds.size(); ++k) {
    const auto& r = trace.rounds[k];
    const double t = static_cast<double>(r.t + 1);
    const double rhs = means[k] - lip * std::sqrt((2 * drift + 2 * v * phi_max) / t);
    tracker.Observe(EvalPhi(phi, r.ubar) - rhs, r.t + 1, -1);
  }
  return tracker.Finish();
}

}  // namespace

BoundCheck CheckConcaveJensen(const Trace& trace, const PhiSpec& phi,
                              double c_prime, double v) {
  return JensenCheck("concave_jensen", trace, phi, c_prime, v);
}

std::vector<BoundCheck> CheckConcaveLookahead(const Trace& trace, const GameSpec& game,
                                              const PhiSpec& phi, int frame_size,
                                              std::int64_t num_frames, double c_prime,
                                              double v) {
  RequireFrames(trace, frame_size, num_frames);
  const auto totals = LookaheadMean(trace, game, LookaheadFamily::kRegret, phi,
                                    frame_size, num_frames);
  const auto means = PhiGammaPrefixMeans(trace, phi);
  const double proxy_mean = means[totals.rounds - 1];
  const double phi_ubar = EvalPhi(phi, trace.rounds[totals.rounds - 1].ubar);
  std::map<std::string, double> values{{"psi_bar", totals.psi_bar},
                                       {"T", frame_size},
                                       {"K", static_cast<double>(num_frames)},
                                       {"V", v}};
  if (v <= 0) {
    std::vector<BoundCheck> out;
    for (const char* base : {"concave_proxy_lookahead", "concave_lookahead"}) {
      Tracker tracker(WithFrame(base, frame_size));
      BoundCheck check = tracker.Finish("V = 0: bound is vacuous");
      check.points = 1;
      check.values = values;
      out.push_back(std::move(check));
    }
    return out;
  }
  const double gap = frame_size * c_prime / v;
  const double env = LipschitzBound(phi) *
                     std::sqrt((2 * c_prime + 2 * v * PhiMax(phi)) /
                               static_cast<double>(totals.rounds));
  return {SinglePoint(WithFrame("concave_proxy_lookahead", frame_size), proxy_mean,
                      totals.psi_bar - gap, totals.rounds, values),
          SinglePoint(WithFrame("concave_lookahead", frame_size), phi_ubar,
                      totals.psi_bar - gap - env, totals.rounds, values)};
}

BoundCheck CheckProxyIdentity(const Trace& trace) {
  Tracker tracker("proxy_identity");
  std::vector<double> diff;
  for (const auto& r : trace.rounds) {
    const double t = static_cast<double>(r.t + 1);
    diff.resize(r.ubar.size());
    for (size_t i = 0; i < diff.size(); ++i) diff[i] = r.ubar[i] - r.gammabar[i];
    const double scale = std::max(1.0, Norm(r.z) / t);
    tracker.Observe(-std::abs(Norm(diff) - Norm(r.z) / t), r.t + 1, -1,
                    kBoundSlack * scale);
  }
  return tracker.Finish();
}

BoundCheck CheckConservativePerRound(const Trace& trace) {
  Tracker tracker("conservative_per_round");
  for (const auto& r : trace.rounds) {
    for (size_t i = 0; i < r.u.size(); ++i) {
      tracker.Observe(r.u[i] - r.x[i], r.t + 1, static_cast<int>(i), 0.0);
    }
  }
  return tracker.Finish();
}

std::vector<BoundCheck> CheckConservativeEnvelope(const Trace& trace,
                                                  const PhiSpec& phi, double d,
                                                  double v) {
  Tracker norm("conservative_z_norm");
  const double phi_max = PhiMax(phi);
  for (const auto& r : trace.rounds) {
    const double t = static_cast<double>(r.t + 1);
    norm.Observe(std::sqrt((2 * d + 2 * v * phi_max) / t) - Norm(r.z) / t, r.t + 1, -1);
  }
  return {norm.Finish(), JensenCheck("conservative_jensen", trace, phi, d, v)};
}

std::vector<BoundCheck> CheckConservativeFinal(const Trace& trace,
                                               const GameSpec& game,
                                               const PhiSpec& phi,
                                               int frame_size,
                                               std::int64_t num_frames,
                                               double d, double v) {
  RequireFrames(trace, frame_size, num_frames);
  const auto totals = LookaheadMean(trace, game, LookaheadFamily::kConservative, phi,
                                    frame_size, num_frames);
  const auto means = PhiGammaPrefixMeans(trace, phi);
  const double proxy_mean = means[totals.rounds - 1];
  const double phi_ubar = EvalPhi(phi, trace.rounds[totals.rounds - 1].ubar);
  std::map<std::string, double> values{{"psi_bar", totals.psi_bar},
                                       {"T", frame_size},
                                       {"K", static_cast<double>(num_frames)},
                                       {"V", v},
                                       {"D", d}};
  if (v <= 0) {
    std::vector<BoundCheck> out;
    for (const char* base : {"conservative_proxy_lookahead", "conservative_lookahead"}) {
      Tracker tracker(WithFrame(base, frame_size));
      BoundCheck check = tracker.Finish("V = 0: bound is vacuous");
      check.points = 1;
      check.values = values;
      out.push_back(std::move(check));
    }
    return out;
  }
  const double gap = d * frame_size / v;
  const double env = LipschitzBound(phi) *
                     std::sqrt((2 * d + 2 * v * PhiMax(phi)) /
                               static_cast<double>(totals.rounds));
  return {SinglePoint(WithFrame("conservative_proxy_lookahead", frame_size), proxy_mean,
                      totals.psi_bar - gap, totals.rounds, values),
          SinglePoint(WithFrame("conservative_lookahead", frame_size), phi_ubar,
                      totals.psi_bar - gap - env, totals.rounds, values)};
}

BoundCheck CheckConservativeLinear(const Trace& trace, const GameSpec& game,
                                   std::span<const double> theta,
                                   int frame_size, std::int64_t num_frames) {
  RequireFrames(trace, frame_size, num_frames);
  const PhiSpec objective = MakeWeightedSumPhi({theta.begin(), theta.end()}, game.utility_caps);
  const auto totals = LookaheadMean(trace, game, LookaheadFamily::kConservative,
                                    objective, frame_size, num_frames);
  const double lhs = Dot(theta, trace.rounds[totals.rounds - 1].ubar);
  return SinglePoint(WithFrame("conservative_linear_lookahead", frame_size), lhs,
                     totals.psi_bar, totals.rounds,
                     {{"psi_bar", totals.psi_bar},
                      {"T", frame_size},
                      {"K", static_cast<double>(num_frames)}});
}

BoundCheck CheckArgmaxDominance(const Trace& trace, const ManagerConfig& config,
                                const GameSpec* game) {
  Tracker tracker("argmax_dominance");
  if (config.variant == Variant::kBaseline) return tracker.Finish("baseline variant");
  const size_t n = trace.rounds.empty() ? 0 : trace.rounds[0].u.size();
  const bool conservative = config.variant == Variant::kConservativeLinear ||
                            config.variant == Variant::kConservativeConcave;
  std::vector<ActionVector> joint;
  if (game) joint = EnumerateJointActions(*game);
  std::vector<double> q(n, 0.0), z(n, 0.0), w(n);
  for (const auto& r : trace.rounds) {
    for (size_t i = 0; i < n; ++i) {
      switch (config.variant) {
        case Variant::kWeighted:
          w[i] = config.v * config.theta[i] + q[i];
          break;
        case Variant::kConcave:
          w[i] = q[i] + z[i];
          break;
        case Variant::kConservativeLinear:
          w[i] = config.theta[i];
          break;
        case Variant::kConservativeConcave:
          w[i] = z[i];
          break;
        case Variant::kBaseline:
          break;
      }
    }
    // With the game the suggestion is re-evaluated rather than trusting u.
    const double chosen =
        game ? Dot(w, EvaluateUtilities(*game, r.suggestion, r.omega)) : Dot(w, r.u);
    // Without the game only the baseline is a known candidate.
    double best = Dot(w, r.x);
    if (game) {
      for (const auto& a : joint) {
        const UtilityVector u = EvaluateUtilities(*game, a, r.omega);
        if (conservative) {
          bool feasible = true;
          for (size_t i = 0; i < n && feasible; ++i) feasible = u[i] >= r.x[i];
          if (!feasible) continue;
        }
        best = std::max(best, Dot(w, u));
      }
    }
    tracker.Observe(chosen - best, r.t + 1, -1,
                    kBoundSlack * std::max(1.0, std::abs(best)));
    q = r.q;
    z = r.z;
  }
  return tracker.Finish(game ? "against every candidate" : "against the baseline");
}

BoundCheck CheckRunningAverages(const Trace& trace) {
  const double gap = RunningAverageDiscrepancy(trace);
  Tracker tracker("running_averages");
  if (!trace.rounds.empty()) {
    tracker.Observe(-gap, static_cast<std::int64_t>(trace.rounds.size()), -1, 1e-12);
  }
  BoundCheck check = tracker.Finish("max discrepancy " + Fmt(gap));
  check.values["max_discrepancy"] = gap;
  return check;
}

std::vector<BoundCheck> CheckAllApplicable(const BoundContext& context,
                                           const Trace& trace,
                                           std::span<const int> frame_sizes) {
  const auto& cfg = context.manager;
  const auto& k = context.constants;
  const double v = cfg.v;
  std::vector<BoundCheck> out;
  out.push_back(CheckRunningAverages(trace));
  const auto rounds = static_cast<std::int64_t>(trace.rounds.size());
  auto frames_for = [&](int t_size) -> std::int64_t {
    return t_size >= 1 ? rounds / t_size : 0;
  };
  auto append = [&](std::vector<BoundCheck> more) {
    for (auto& c : more) out.push_back(std::move(c));
  };

  switch (cfg.variant) {
    case Variant::kBaseline:
      out.push_back(CheckQueueRegretBound(trace));
      out.push_back(CheckConservativePerRound(trace));
      break;
    case Variant::kWeighted:
      out.push_back(CheckQueueRegretBound(trace));
      out.push_back(CheckWeightedQueueNorm(trace, k.b, k.c, v));
      out.push_back(CheckWeightedRegretEnvelope(trace, k.b, k.c, v));
      out.push_back(CheckArgmaxDominance(trace, cfg, &context.game));
      for (int t_size : frame_sizes) {
        if (frames_for(t_size) < 1) continue;
        out.push_back(CheckWeightedLookahead(trace, context.game, cfg.theta, t_size,
                                             frames_for(t_size), k.b, v));
      }
      break;
    case Variant::kConcave: {
      const PhiSpec& phi = *cfg.phi;
      out.push_back(CheckQueueRegretBound(trace));
      out.push_back(CheckConcaveQueueNorm(trace, k.c_prime, v, PhiMax(phi)));
      out.push_back(CheckConcaveRegretEnvelope(trace, k.c_prime, v, PhiMax(phi)));
      out.push_back(CheckConcaveJensen(trace, phi, k.c_prime, v));
      out.push_back(CheckProxyIdentity(trace));
      out.push_back(CheckArgmaxDominance(trace, cfg, &context.game));
      for (int t_size : frame_sizes) {
        if (frames_for(t_size) < 1) continue;
        append(CheckConcaveLookahead(trace, context.game, phi, t_size,
                                     frames_for(t_size), k.c_prime, v));
      }
      break;
    }
    case Variant::kConservativeLinear:
      out.push_back(CheckConservativePerRound(trace));
      out.push_back(CheckArgmaxDominance(trace, cfg, &context.game));
      for (int t_size : frame_sizes) {
        if (frames_for(t_size) < 1) continue;
        out.push_back(CheckConservativeLinear(trace, context.game, cfg.theta, t_size,
                                              frames_for(t_size)));
      }
      break;
    case Variant::kConservativeConcave: {
      const PhiSpec& phi = *cfg.phi;
      out.push_back(CheckConservativePerRound(trace));
      out.push_back(CheckProxyIdentity(trace));
      append(CheckConservativeEnvelope(trace, phi, k.d, v));
      out.push_back(CheckArgmaxDominance(trace, cfg, &context.game));
      for (int t_size : frame_sizes) {
        if (frames_for(t_size) < 1) continue;
        append(CheckConservativeFinal(trace, context.game, phi, t_size,
                                      frames_for(t_size), k.d, v));
      }
      break;
    }
  }
  return out;
}

bool AllPassed(std::span<const BoundCheck> checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const BoundCheck& c) { return c.passed; });
}

nlohmann::json BoundCheckToJson(const BoundCheck& check) {
  nlohmann::json j = {{"name", check.name},
                      {"passed", check.passed},
                      {"points", check.points},
                      {"detail", check.detail}};
  // JSON has no infinity; an unconstrained check reports null slack.
  j["worst_slack"] = std::isfinite(check.worst_slack) ? nlohmann::json(check.worst_slack)
                                                      : nlohmann::json(nullptr);
  if (check.worst_t >= 0) j["worst_t"] = check.worst_t;
  if (check.first_violation_t >= 0) j["first_violation_t"] = check.first_violation_t;
  if (check.player >= 0) j["player"] = check.player + 1;
  if (!check.values.empty()) j["values"] = check.values;
  return j;
}

nlohmann::json BuildSummary(const Scenario& scenario, const Trace& trace,
                            std::span<const BoundCheck> checks) {
  using nlohmann::json;
  const int n = scenario.game.num_players;
  const DriftConstants k = ComputeDriftConstants(scenario.game, scenario.manager);
  json j;
  j["scenario"] = scenario.name;
  j["fingerprint"] = trace.fingerprint;
  j["variant"] = std::string(VariantName(scenario.manager.variant));
  j["V"] = scenario.manager.v;
  j["horizon"] = scenario.horizon;
  j["seed"] = scenario.seed;
  j["rounds"] = trace.rounds.size();

  std::vector<double> zeros(static_cast<size_t>(n), 0.0);
  const RoundRecord* last = trace.rounds.empty() ? nullptr : &trace.rounds.back();
  const auto& ubar = last ? last->ubar : zeros;
  const auto& xbar = last ? last->xbar : zeros;
  std::vector<double> gain(static_cast<size_t>(n));
  double ubar_sum = 0, xbar_sum = 0;
  for (int i = 0; i < n; ++i) {
    gain[i] = ubar[i] - xbar[i];
    ubar_sum += ubar[i];
    xbar_sum += xbar[i];
  }
  j["ubar"] = ubar;
  j["xbar"] = xbar;
  j["gain"] = gain;
  j["ubar_sum"] = ubar_sum;
  j["xbar_sum"] = xbar_sum;
  if (UsesZ(scenario.manager.variant)) j["gammabar"] = last ? last->gammabar : zeros;

  double max_q = 0, max_z = 0;
  for (const auto& r : trace.rounds) {
    max_q = std::max(max_q, Norm(r.q));
    max_z = std::max(max_z, Norm(r.z));
  }
  j["max_queue_norm"] = {{"Q", max_q}, {"Z", max_z}};
  j["final_queues"] = {{"Q", last ? last->q : zeros}, {"Z", last ? last->z : zeros}};

  json constants = {{"B", k.b}, {"C", k.c}, {"C_prime", k.c_prime}, {"D", k.d}};
  if (scenario.manager.phi) {
    const PhiSpec& phi = *scenario.manager.phi;
    constants["lipschitz"] = LipschitzBound(phi);
    constants["phi_max"] = PhiMax(phi);
    j["phi"] = PhiToJson(phi);
    j["phi_of_ubar"] = EvalPhi(phi, ubar);
  }
  if (!scenario.manager.theta.empty()) {
    j["weighted_ubar"] = Dot(scenario.manager.theta, ubar);
  }
  j["constants"] = constants;

  json list = json::array();
  for (const auto& c : checks) list.push_back(BoundCheckToJson(c));
  j["checks"] = list;
  j["all_passed"] = AllPassed(checks);
  return j;
}

}  // namespace regret_manager
