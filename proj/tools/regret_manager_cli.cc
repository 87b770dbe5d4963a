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

#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.h"

namespace cli = regret_manager::cli;

int main(int argc, char** argv) {
  CLI::App app{"Game manager that shares information without creating regret."};
  app.require_subcommand(1);

  cli::RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario, write its trace and summary.");
  run_cmd->add_option("scenario", run.scenario, "Scenario JSON file")->required();
  run_cmd->add_option("--horizon", run.horizon, "Override the horizon (accepts 1e6)");
  run_cmd->add_option("--seed", run.seed, "Override the seed");
  run_cmd->add_option("--out", run.out_dir, "Output directory (default: out)");
  run_cmd->add_option("--T", run.frame_sizes, "Frame sizes for lookahead checks")->delimiter(',');
  bool no_checks = false, no_trace = false;
  run_cmd->add_flag("--no-checks", no_checks, "Skip bound checks");
  run_cmd->add_flag("--no-trace", no_trace, "Skip writing the trace CSV");

  cli::ReproduceOptions reproduce;
  auto* rep_cmd = app.add_subcommand("reproduce", "Run the six location-game configurations.");
  rep_cmd->add_option("--horizon", reproduce.horizon, "Rounds per configuration");
  rep_cmd->add_option("--seed", reproduce.seed, "Base seed");
  rep_cmd->add_option("--out", reproduce.out_dir, "Write per-configuration summaries here");

  cli::VerifyOptions verify;
  auto* ver_cmd = app.add_subcommand("verify", "Check every applicable bound on a trace.");
  ver_cmd->add_option("trace", verify.trace, "Trace CSV from `run`")->required();
  ver_cmd->add_option("--scenario", verify.scenario, "Scenario the trace came from")->required();
  ver_cmd->add_option("--T", verify.frame_sizes, "Frame sizes, e.g. 1,2")->delimiter(',');
  ver_cmd->add_option("--V-sweep", verify.v_sweep, "Re-run at these V values")->delimiter(',');
  ver_cmd->add_option("--summary", verify.summary, "Write a JSON report here");

  cli::ServeOptions serve;
  auto* serve_cmd = app.add_subcommand("serve", "Host interactive sessions over HTTP/WebSocket.");
  serve_cmd->add_option("scenario", serve.scenario, "Scenario JSON file")->required();
  serve_cmd->add_option("--port", serve.port, "TCP port (0 picks one)");
  serve_cmd->add_option("--address", serve.address, "Bind address");
  serve_cmd->add_option("--human", serve.human_player, "Human seat (1-based)");
  serve_cmd->add_option("--autoplay", serve.autoplay_seconds,
                        "Play the human's scenario policy after this many idle seconds");
  serve_cmd->add_option("--port-file", serve.port_file, "Write the bound port here");

  cli::CanonOptions canon;
  auto* canon_cmd = app.add_subcommand("canon", "Print a scenario in canonical form.");
  canon_cmd->add_option("scenario", canon.scenario, "Scenario JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitValidation;
  }

  if (*run_cmd) {
    run.checks = !no_checks;
    run.write_trace = !no_trace;
    return cli::RunCommand(run);
  }
  if (*rep_cmd) return cli::ReproduceCommand(reproduce);
  if (*ver_cmd) return cli::VerifyCommand(verify);
  if (*serve_cmd) return cli::ServeCommand(serve);
  if (*canon_cmd) return cli::CanonCommand(canon);
  return cli::kExitValidation;
}
