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

#include <cmath>
#include <map>
#include <sstream>

#include "doctest.h"
#include "regret_manager/error.h"
#include "regret_manager/harness.h"
#include "regret_manager/scenario.h"

namespace regret_manager {
namespace {

ManagerConfig WeightedConfig(double v) {
  ManagerConfig c;
  c.variant = Variant::kWeighted;
  c.v = v;
  c.theta = {1, 1};
  return c;
}

ManagerConfig BaselineConfig() {
  ManagerConfig c;
  c.variant = Variant::kBaseline;
  return c;
}

BaselinePolicySpec Constant(int a) {
  BaselinePolicySpec b;
  b.kind = BaselinePolicySpec::Kind::kConstant;
  b.action = a;
  return b;
}

EventGeneratorSpec Scripted(std::vector<EventVector> seq) {
  EventGeneratorSpec g;
  g.kind = EventGeneratorSpec::Kind::kScripted;
  g.sequence = std::move(seq);
  return g;
}

std::vector<EventVector> Draw(const EventGeneratorSpec& spec, int n, std::uint64_t seed) {
  EventStream s(spec, seed);
  std::vector<EventVector> out;
  for (int i = 0; i < n; ++i) out.push_back(s.Next());
  return out;
}

TEST_CASE("horizon 0 gives an empty trace") {
  auto sc = ExampleScenarioFor(ExampleId::kExample2, false, WeightedConfig(10), 0, 1);
  auto trace = RunSimulation(sc);
  CHECK(trace.rounds.empty());
  CHECK(trace.num_players == 2);
  CHECK(!trace.fingerprint.empty());
}

TEST_CASE("negative horizon is rejected") {
  auto sc = ExampleScenarioFor(ExampleId::kExample2, false, WeightedConfig(10), -1, 1);
  CHECK_THROWS_AS(RunSimulation(sc), Error);
}

TEST_CASE("seed determinism") {
  auto sc = ExampleScenarioFor(ExampleId::kExample2, true, WeightedConfig(50), 5000, 42);
  const auto a = RunSimulation(sc);
  const auto b = RunSimulation(sc);
  CHECK(a == b);
  sc.seed = 43;
  const auto c = RunSimulation(sc);
  CHECK(c.rounds.size() == a.rounds.size());
  CHECK(!(c == a));
  CHECK(c.fingerprint != a.fingerprint);
}

TEST_CASE("example 1 without sharing and no manager reproduces the closed form") {
  auto sc = ExampleScenarioFor(ExampleId::kExample1, false, BaselineConfig(), 1'000'000, 20260101);
  const auto trace = RunSimulation(sc);
  REQUIRE(trace.rounds.size() == 1'000'000u);
  const auto& last = trace.rounds.back();
  CHECK(std::abs(last.ubar[0] - 2.2) <= 0.02);
  CHECK(std::abs(last.ubar[1] - 3.6) <= 0.02);
  // Suggestions are the baseline, so u and x coincide.
  CHECK(last.ubar == last.xbar);
  CHECK(RunningAverageDiscrepancy(trace) <= 1e-12);
}

TEST_CASE("three scripted rounds with a weighted manager match a hand table") {
  Scenario sc = ExampleScenarioFor(ExampleId::kExample1, true, WeightedConfig(1), 3, 9);
  sc.events = Scripted({{2.2, 10}, {2.2, 2}, {2.2, 10}});
  sc.baselines = {Constant(2), Constant(2)};
  const auto trace = RunSimulation(sc);
  REQUIRE(trace.rounds.size() == 3);
  const std::vector<ActionVector> alpha = {{1, 2}, {1, 2}, {2, 2}};
  const std::vector<std::vector<double>> q = {{2.8, 0}, {1.6, 0}, {1.6, 0}};
  const std::vector<std::vector<double>> ubar = {
      {2.2, 10}, {2.2, 6}, {9.4 / 3, 17.0 / 3}};
  const std::vector<std::vector<double>> xbar = {{5, 5}, {3, 3}, {11.0 / 3, 11.0 / 3}};
  for (size_t t = 0; t < 3; ++t) {
    const auto& r = trace.rounds[t];
    CHECK(r.t == static_cast<std::int64_t>(t));
    CHECK(r.baseline == ActionVector{2, 2});
    CHECK(r.suggestion == alpha[t]);
    for (size_t i = 0; i < 2; ++i) {
      CHECK(r.q[i] == doctest::Approx(q[t][i]).epsilon(1e-12));
      CHECK(r.ubar[i] == doctest::Approx(ubar[t][i]).epsilon(1e-12));
      CHECK(r.xbar[i] == doctest::Approx(xbar[t][i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("trace CSV round trip") {
  ManagerConfig cc;
  cc.variant = Variant::kConservativeConcave;
  cc.v = 100;
  cc.phi = MakeLogOffsetPhi({1, 1}, 1, {10, 10});
  auto sc = ExampleScenarioFor(ExampleId::kExample2, true, cc, 500, 5);
  const auto trace = RunSimulation(sc);
  std::stringstream ss;
  WriteTraceCsv(trace, ss);
  const std::string text = ss.str();
  CHECK(text.rfind("# fingerprint " + trace.fingerprint + "\n", 0) == 0);
  CHECK(text.find("\nt,omega_1,omega_2,b_1,b_2,alpha_1,alpha_2,u_1,u_2,x_1,x_2,Q_1,Q_2,"
                   "Z_1,Z_2,gamma_1,gamma_2,ubar_1,ubar_2,xbar_1,xbar_2") != std::string::npos);
  std::stringstream in(text);
  const auto back = ReadTraceCsv(in);
  CHECK(back.rounds == trace.rounds);
  CHECK(back.num_players == trace.num_players);
  CHECK(back.event_dim == trace.event_dim);
  std::stringstream again;
  WriteTraceCsv(back, again);
  CHECK(again.str() == text);

  std::stringstream bad("t,omega_1\n0,abc\n");
  CHECK_THROWS_AS(ReadTraceCsv(bad), Error);
}

TEST_CASE("property: running averages match the raw columns") {
  for (auto id : {ExampleId::kExample1, ExampleId::kExample2, ExampleId::kExample3}) {
    auto sc = ExampleScenarioFor(id, true, WeightedConfig(20), 20000, 3);
    const auto trace = RunSimulation(sc);
    CHECK(RunningAverageDiscrepancy(trace) <= 1e-12);
    // Independent long double recomputation at a few prefixes.
    long double su = 0, sx = 0;
    for (size_t t = 0; t < trace.rounds.size(); ++t) {
      su += trace.rounds[t].u[0];
      sx += trace.rounds[t].x[0];
      if ((t + 1) % 4999 == 0) {
        CHECK(std::abs(static_cast<double>(su / (t + 1)) - trace.rounds[t].ubar[0]) <= 1e-12);
        CHECK(std::abs(static_cast<double>(sx / (t + 1)) - trace.rounds[t].xbar[0]) <= 1e-12);
      }
    }
  }
}

TEST_CASE("singleton feasible sets leave the conservative manager at the baseline") {
  Scenario sc;
  sc.name = "forced";
  sc.game = MakeLocationGame(2, {{1}, {2}}, {{1}, {2}}, {10, 10});
  EventGeneratorSpec g;
  g.kind = EventGeneratorSpec::Kind::kIid;
  g.coordinates = {{{2.2, 1}}, {{10, 0.2}, {2, 0.8}}};
  sc.events = g;
  sc.baselines = {Constant(1), Constant(2)};
  sc.manager.variant = Variant::kConservativeConcave;
  sc.manager.v = 100;
  sc.manager.phi = MakeLogOffsetPhi({1, 1}, 1, {10, 10});
  sc.horizon = 1000;
  sc.seed = 8;
  const auto trace = RunSimulation(sc);
  for (const auto& r : trace.rounds) {
    REQUIRE(r.suggestion == r.baseline);
    REQUIRE(r.u == r.x);
  }
  CHECK(trace.rounds.back().ubar == trace.rounds.back().xbar);
}

TEST_CASE("iid generator frequencies") {
  EventGeneratorSpec g;
  g.kind = EventGeneratorSpec::Kind::kIid;
  g.coordinates = {{{2.2, 1}}, {{10, 0.2}, {2, 0.8}}};
  const auto draws = Draw(g, 200000, 77);
  int tens = 0;
  for (const auto& w : draws) {
    REQUIRE(w[0] == 2.2);
    REQUIRE((w[1] == 10 || w[1] == 2));
    tens += w[1] == 10;
  }
  CHECK(std::abs(tens / 200000.0 - 0.2) < 0.005);

  EventGeneratorSpec joint;
  joint.kind = EventGeneratorSpec::Kind::kIid;
  joint.joint = {{{1, 1}, 0.25}, {{2, 0}, 0.75}};
  int ones = 0;
  for (const auto& w : Draw(joint, 100000, 78)) {
    REQUIRE((w == EventVector{1, 1} || w == EventVector{2, 0}));
    ones += w[0] == 1;
  }
  CHECK(std::abs(ones / 100000.0 - 0.25) < 0.006);
}

TEST_CASE("markov generator transition frequencies") {
  EventGeneratorSpec g;
  g.kind = EventGeneratorSpec::Kind::kMarkov;
  g.transition = {{0.9, 0.1}, {0.3, 0.7}};
  g.state_events = {{0}, {1}};
  const auto draws = Draw(g, 200000, 79);
  CHECK(draws[0] == EventVector{0});
  std::map<std::pair<int, int>, int> counts;
  std::map<int, int> from;
  for (size_t t = 1; t < draws.size(); ++t) {
    const int a = static_cast<int>(draws[t - 1][0]);
    const int b = static_cast<int>(draws[t][0]);
    counts[{a, b}]++;
    from[a]++;
  }
  CHECK(std::abs(counts[{0, 1}] / static_cast<double>(from[0]) - 0.1) < 0.01);
  CHECK(std::abs(counts[{1, 0}] / static_cast<double>(from[1]) - 0.3) < 0.01);
}

TEST_CASE("piecewise and scripted generators") {
  EventGeneratorSpec a = Scripted({{1}});
  EventGeneratorSpec b = Scripted({{2}, {3}});
  EventGeneratorSpec p;
  p.kind = EventGeneratorSpec::Kind::kPiecewise;
  p.durations = {2, 3};
  p.segments = {a, b};
  std::vector<double> seen;
  for (const auto& w : Draw(p, 10, 1)) seen.push_back(w[0]);
  // Each segment resumes its own stream when it comes round again.
  CHECK(seen == std::vector<double>{1, 1, 2, 3, 2, 1, 1, 3, 2, 3});

  CHECK_THROWS_AS(ValidateEventGenerator(Scripted({}), 1), Error);
  CHECK_THROWS_AS(ValidateEventGenerator(Scripted({{1, 2}}), 1), Error);
  EventGeneratorSpec bad;
  bad.kind = EventGeneratorSpec::Kind::kIid;
  bad.coordinates = {{{1, 0.5}, {2, 0.4}}};
  CHECK_THROWS_AS(ValidateEventGenerator(bad, 1), Error);
  EventGeneratorSpec zero = p;
  zero.durations = {0, 3};
  CHECK_THROWS_AS(ValidateEventGenerator(zero, 1), Error);
}

TEST_CASE("greedy baseline reads only what its player observes") {
  const auto ex = MakeExample(ExampleId::kExample1, false);
  BaselinePolicy p(ex.baselines[0], ex.game, 0, 1);
  const int first = p.Decide(Observe(ex.game, 0, {2.2, 10}));
  for (double hidden : {0.0, 2.0, 10.0, 100.0}) {
    BaselinePolicy q(ex.baselines[0], ex.game, 0, 1);
    CHECK(q.Decide(Observe(ex.game, 0, {2.2, hidden})) == first);
  }
}

TEST_CASE("random baseline stays inside the action set") {
  auto game = MakeLocationGame(3, {{1, 3}, {2}}, {{1, 2, 3}, {1, 2, 3}}, {10, 10});
  BaselinePolicySpec spec;
  spec.kind = BaselinePolicySpec::Kind::kRandom;
  BaselinePolicy p(spec, game, 0, 5);
  std::map<int, int> counts;
  for (int t = 0; t < 1000; ++t) counts[p.Decide(Observe(game, 0, {1, 1, 1}))]++;
  CHECK(counts.size() == 2);
  CHECK(counts.count(1) == 1);
  CHECK(counts.count(3) == 1);
  CHECK_THROWS_AS(ValidateBaselinePolicy(Constant(3), game, 1), Error);
}

TEST_CASE("simulator refuses rounds past the horizon") {
  auto sc = ExampleScenarioFor(ExampleId::kExample2, false, WeightedConfig(1), 1, 1);
  Simulator sim(sc);
  sim.BeginRound();
  sim.CompleteRound({sim.PolicyDecision(0), sim.PolicyDecision(1)});
  CHECK(sim.done());
  try {
    sim.BeginRound();
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kWrongPhase);
  }
}

}  // namespace
}  // namespace regret_manager
