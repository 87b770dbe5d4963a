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

#include "commands.h"

#include <csignal>
#include <cmath>
#include <map>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <system_error>

#include "regret_manager/bounds.h"
#include "regret_manager/error.h"
#include "regret_manager/harness.h"
#include "regret_manager/location_game.h"
#include "regret_manager/scenario.h"
#include "regret_manager/server.h"
#include "regret_manager/trace.h"

namespace regret_manager::cli {
namespace {

namespace fs = std::filesystem;

// Accepts "1000", "1e6" and similar integral spellings.
std::int64_t ParseHorizon(const std::string& text) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !std::isfinite(v) || v < 0 || v != std::floor(v) || v > 9.0e15) {
    throw Error(ErrorCode::kSchema, "--horizon: expected a non-negative integer, got '" + text + "'");
  }
  return static_cast<std::int64_t>(v);
}

std::string ScenarioStem(const Scenario& s, const std::string& path) {
  if (!s.name.empty()) return s.name;
  return fs::path(path).stem().string();
}

void PrintChecks(const std::vector<BoundCheck>& checks) {
  for (const auto& c : checks) {
    std::printf("  %s %-36s %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                c.detail.c_str());
  }
}

void WriteJson(const nlohmann::json& j, const std::string& path) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidInput, "cannot write " + path);
  out << j.dump(2) << "\n";
}

void WriteTrace(const Trace& trace, const std::string& path) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  WriteTraceCsvFile(trace, path);
}

void ReportError(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    std::fprintf(stderr, "error [%s]: %s\n", std::string(ErrorCodeName(err->code())).c_str(),
                 err->what());
  } else {
    std::fprintf(stderr, "error: %s\n", e.what());
  }
}

}  // namespace

int RunCommand(const RunOptions& options) {
  Scenario scenario;
  try {
    scenario = LoadScenarioFile(options.scenario);
    if (options.horizon) scenario.horizon = ParseHorizon(*options.horizon);
    if (options.seed) scenario.seed = *options.seed;
    ValidateScenario(scenario);
  } catch (const std::exception& e) {
    ReportError(e);
    return kExitValidation;
  }
  try {
    const std::string stem = ScenarioStem(scenario, options.scenario);
    std::string trace_path = scenario.outputs.trace;
    std::string summary_path = scenario.outputs.summary;
    const std::string dir = options.out_dir.value_or("out");
    if (options.out_dir || trace_path.empty()) trace_path = (fs::path(dir) / (stem + ".trace.csv")).string();
    if (options.out_dir || summary_path.empty()) {
      summary_path = (fs::path(dir) / (stem + ".summary.json")).string();
    }

    const Trace trace = RunSimulation(scenario);
    std::vector<BoundCheck> checks;
    if (options.checks) {
      checks = CheckAllApplicable(MakeBoundContext(scenario), trace, options.frame_sizes);
    }
    const nlohmann::json summary = BuildSummary(scenario, trace, checks);
    if (options.write_trace) WriteTrace(trace, trace_path);
    WriteJson(summary, summary_path);

    std::printf("scenario %s  variant %s  V %g  rounds %zu  seed %llu\n", stem.c_str(),
                std::string(VariantName(scenario.manager.variant)).c_str(), scenario.manager.v,
                trace.rounds.size(), static_cast<unsigned long long>(scenario.seed));
    const auto& ubar = summary["ubar"];
    const auto& xbar = summary["xbar"];
    for (size_t i = 0; i < ubar.size(); ++i) {
      std::printf("  player %zu  ubar %.6f  xbar %.6f  gain %+.6f\n", i + 1,
                  ubar[i].get<double>(), xbar[i].get<double>(),
                  ubar[i].get<double>() - xbar[i].get<double>());
    }
    std::printf("  ubar_sum %.6f  xbar_sum %.6f\n", summary["ubar_sum"].get<double>(),
                summary["xbar_sum"].get<double>());
    PrintChecks(checks);
    if (options.write_trace) std::printf("trace   %s\n", trace_path.c_str());
    std::printf("summary %s\n", summary_path.c_str());
    return kExitOk;
  } catch (const std::exception& e) {
    ReportError(e);
    return kExitRuntime;
  }
}

int ReproduceCommand(const ReproduceOptions& options) {
  std::int64_t horizon = 0;
  try {
    horizon = ParseHorizon(options.horizon);
  } catch (const std::exception& e) {
    ReportError(e);
    return kExitValidation;
  }
  constexpr double kTolerance = 0.02;
  bool all_ok = true;
  std::printf("%-18s %10s %10s %8s %8s  %s\n", "configuration", "ubar_1", "ubar_2", "ref_1",
              "ref_2", "status");
  try {
    std::uint64_t index = 0;
    for (ExampleId id : {ExampleId::kExample1, ExampleId::kExample2, ExampleId::kExample3}) {
      for (bool share : {false, true}) {
        ManagerConfig baseline;
        baseline.variant = Variant::kBaseline;
        const Scenario s = ExampleScenarioFor(id, share, baseline, horizon, options.seed + index++);
        const ExampleScenario ex = MakeExample(id, share);
        const Trace trace = RunSimulation(s);
        std::vector<double> ubar(ex.expected.size(), 0.0);
        if (!trace.rounds.empty()) ubar = trace.rounds.back().ubar;
        bool ok = !trace.rounds.empty();
        for (size_t i = 0; i < ubar.size(); ++i) ok = ok && std::abs(ubar[i] - ex.expected[i]) <= kTolerance;
        all_ok = all_ok && ok;
        std::printf("%-18s %10.5f %10.5f %8.4g %8.4g  %s\n", s.name.c_str(), ubar[0], ubar[1],
                    ex.expected[0], ex.expected[1], ok ? "PASS" : "FAIL");
        if (options.out_dir) {
          WriteJson(BuildSummary(s, trace, {}),
                    (fs::path(*options.out_dir) / (s.name + ".summary.json")).string());
        }
      }
    }
  } catch (const std::exception& e) {
    ReportError(e);
    return kExitRuntime;
  }
  std::printf("tolerance +/-%.2f at horizon %lld: %s\n", kTolerance,
              static_cast<long long>(horizon), all_ok ? "all pass" : "FAILURES");
  return all_ok ? kExitOk : kExitRuntime;
}

int VerifyCommand(const VerifyOptions& options) {
  Scenario scenario;
  Trace trace;
  try {
    scenario = LoadScenarioFile(options.scenario);
    trace = ReadTraceCsvFile(options.trace);
  } catch (const std::exception& e) {
    ReportError(e);
    return kExitValidation;
  }
  try {
    Scenario as_run = scenario;
    as_run.horizon = static_cast<std::int64_t>(trace.rounds.size());
    if (trace.fingerprint != ScenarioFingerprint(scenario) &&
        trace.fingerprint != ScenarioFingerprint(as_run)) {
      std::fprintf(stderr,
                   "warning: trace fingerprint %s does not match the scenario (seed or "
                   "horizon overrides?); checking against the scenario's game and manager\n",
                   trace.fingerprint.c_str());
    }
    const auto checks = CheckAllApplicable(MakeBoundContext(scenario), trace, options.frame_sizes);
    std::printf("trace %s  rounds %zu  variant %s  V %g\n", options.trace.c_str(),
                trace.rounds.size(), std::string(VariantName(scenario.manager.variant)).c_str(),
                scenario.manager.v);
    PrintChecks(checks);
    bool ok = AllPassed(checks);
    if (options.summary) WriteJson(BuildSummary(as_run, trace, checks), *options.summary);

    if (!options.v_sweep.empty()) {
      // slack = lhs - rhs; gap = lhs - psi_bar, the distance to the oracle
      // before the O(1/V) allowance. Larger V shrinks the allowance, so
      // slack tends to fall while gap should rise towards 0.
      std::printf("V sweep over %zu rounds (lookahead checks only)\n", trace.rounds.size());
      std::printf("  %10s %4s %14s %14s %14s %14s %14s  %s\n", "V", "T", "lhs", "psi_bar", "rhs",
                  "slack", "gap", "status");
      for (int t_size : options.frame_sizes) {
        std::map<std::string, std::vector<std::pair<double, double>>> series;
        for (double v : options.v_sweep) {
          Scenario swept = as_run;
          swept.manager.v = v;
          const Trace run = RunSimulation(swept);
          const auto sweep_checks = CheckAllApplicable(MakeBoundContext(swept), run, std::vector<int>{t_size});
          for (const auto& c : sweep_checks) {
            if (c.name.find("lookahead[") == std::string::npos) continue;
            const auto value = [&](const char* key) {
              return c.values.count(key) ? c.values.at(key) : NAN;
            };
            const double gap = value("lhs") - value("psi_bar");
            std::printf("  %10g %4d %14.8f %14.8f %14.8f %14.8f %14.8f  %s %s\n", v, t_size,
                        value("lhs"), value("psi_bar"), value("rhs"), c.worst_slack, gap,
                        c.passed ? "PASS" : "FAIL", c.name.c_str());
            ok = ok && c.passed;
            series[c.name].emplace_back(c.worst_slack, gap);
          }
        }
        for (const auto& [name, points] : series) {
          bool slack_falls = true, gap_rises = true;
          for (size_t k = 1; k < points.size(); ++k) {
            slack_falls = slack_falls && points[k].first <= points[k - 1].first;
            gap_rises = gap_rises && points[k].second >= points[k - 1].second;
          }
          std::printf("  %s: gap to psi_bar %s in V; slack %s in V\n", name.c_str(),
                      gap_rises ? "improves monotonically" : "is not monotone",
                      slack_falls ? "shrinks monotonically" : "is not monotone");
        }
      }
    }
    std::printf("%s\n", ok ? "all checks pass" : "CHECK FAILURES");
    return ok ? kExitOk : kExitRuntime;
  } catch (const std::exception& e) {
    ReportError(e);
    return kExitRuntime;
  }
}

int ServeCommand(const ServeOptions& options) {
  Scenario scenario;
  try {
    scenario = LoadScenarioFile(options.scenario);
    if (options.human_player) scenario.human_player = *options.human_player - 1;
    if (!scenario.human_player) {
      throw Error(ErrorCode::kInvalidInput,
                  "serve needs a human player (scenario human_player or --human)");
    }
    ValidateScenario(scenario);
  } catch (const std::exception& e) {
    ReportError(e);
    return kExitValidation;
  }

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  ServerOptions server_options;
  server_options.address = options.address;
  server_options.port = options.port;
  server_options.autoplay_seconds = options.autoplay_seconds;
  SessionServer server(scenario, server_options);
  unsigned short port = 0;
  try {
    port = server.Start();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: cannot listen on %s:%u: %s\n", options.address.c_str(),
                 static_cast<unsigned>(options.port), e.what());
    return kExitRuntime;
  }
  if (options.port_file) {
    std::ofstream(*options.port_file) << port << "\n";
  }
  std::printf("serving on http://%s:%u (human player %d)\n", options.address.c_str(),
              static_cast<unsigned>(port), *scenario.human_player + 1);
  std::fflush(stdout);
  int received = 0;
  sigwait(&signals, &received);
  server.Stop();
  return kExitOk;
}

int CanonCommand(const CanonOptions& options) {
  try {
    std::fputs(CanonicalScenarioText(LoadScenarioFile(options.scenario)).c_str(), stdout);
    return kExitOk;
  } catch (const std::exception& e) {
    ReportError(e);
    return kExitValidation;
  }
}

}  // namespace regret_manager::cli
