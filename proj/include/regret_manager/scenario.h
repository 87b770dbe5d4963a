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

#ifndef REGRET_MANAGER_SCENARIO_H_
#define REGRET_MANAGER_SCENARIO_H_

#include <string>

#include "json.hpp"
#include "regret_manager/harness.h"

namespace regret_manager {

// Scenario files are JSON. Unknown keys are rejected; every schema error is
// reported as Error(kSchema) whose message starts with the JSON path of the
// offending field (e.g. "$.manager.phi.kind"). Semantic problems found by
// ValidateScenario() surface as Error(kInvalidInput).
Scenario ParseScenario(const nlohmann::json& doc);
Scenario LoadScenarioFile(const std::string& path);

// Canonical form: keys sorted, integral reals written as integers, optional
// sections omitted when absent or equal to an example's defaults.
nlohmann::json ScenarioToJson(const Scenario& scenario);
std::string CanonicalScenarioText(const Scenario& scenario);

// 16 hex digits of FNV-1a over the canonical text without `outputs`.
std::string ScenarioFingerprint(const Scenario& scenario);

// Builds the scenario for a built-in example with its default generator and
// baseline policies.
Scenario ExampleScenarioFor(ExampleId id, bool share, ManagerConfig manager,
                            std::int64_t horizon, std::uint64_t seed);

nlohmann::json PhiToJson(const PhiSpec& phi);
PhiSpec PhiFromJson(const nlohmann::json& j, const std::vector<double>& caps,
                    const std::string& path);

}  // namespace regret_manager

#endif  // REGRET_MANAGER_SCENARIO_H_
