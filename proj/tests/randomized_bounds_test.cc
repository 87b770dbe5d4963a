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

#include <map>

#include "doctest.h"
#include "random_scenarios.h"
#include "regret_manager/bounds.h"
#include "regret_manager/scenario.h"

namespace regret_manager {
namespace {

TEST_CASE("property: every check holds on 100 random small scenarios") {
  testing::RandomScenarioFactory factory(20260101);
  const std::vector<int> frames = {1, 2};
  std::map<std::string, int> variants;
  int piecewise = 0;
  for (int k = 0; k < 100; ++k) {
    const Scenario s = factory.Next(2000);
    CAPTURE(s.name);
    CAPTURE(CanonicalScenarioText(s));
    variants[std::string(VariantName(s.manager.variant))]++;
    piecewise += s.events.kind == EventGeneratorSpec::Kind::kPiecewise;
    const Trace trace = RunSimulation(s);
    REQUIRE(trace.rounds.size() == 2000);
    for (const auto& c : CheckAllApplicable(MakeBoundContext(s), trace, frames)) {
      CAPTURE(c.name);
      CAPTURE(c.detail);
      CHECK(c.passed);
    }
    // The scenario survives serialization unchanged.
    CHECK(ScenarioFingerprint(ParseScenario(ScenarioToJson(s))) == ScenarioFingerprint(s));
  }
  // The draw covers every variant and the non-ergodic generator.
  CHECK(variants.size() == 5);
  CHECK(piecewise >= 10);
}

}  // namespace
}  // namespace regret_manager
