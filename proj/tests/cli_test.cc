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

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>

#include "doctest.h"
#include "regret_manager/scenario.h"
#include "regret_manager/trace.h"

namespace regret_manager {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string output;
};

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

class Workspace {
 public:
  Workspace() {
    dir_ = fs::temp_directory_path() /
           ("rm_cli_" + std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
    fs::create_directories(dir_);
  }
  ~Workspace() { fs::remove_all(dir_); }
  const fs::path& dir() const { return dir_; }

  // Runs the CLI with `args`, capturing stdout and stderr together.
  Result Cli(const std::string& args) const {
    const fs::path log = dir_ / "cli.log";
    const std::string cmd = std::string(REGRET_MANAGER_CLI) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, Slurp(log)};
  }

 private:
  fs::path dir_;
};

TEST_CASE("run writes a trace and a summary") {
  Workspace ws;
  const auto r = ws.Cli("run scenarios/example2_weighted.json --horizon 2000 --T 1,2 --out " +
                        ws.dir().string());
  CHECK(r.code == 0);
  CHECK(r.output.find("PASS weighted_lookahead[T=2]") != std::string::npos);
  CHECK(r.output.find("FAIL") == std::string::npos);
  const fs::path trace = ws.dir() / "example2_weighted.trace.csv";
  const fs::path summary = ws.dir() / "example2_weighted.summary.json";
  REQUIRE(fs::exists(trace));
  REQUIRE(fs::exists(summary));
  const auto j = nlohmann::json::parse(Slurp(summary));
  CHECK(j.at("rounds") == 2000);
  CHECK(j.at("all_passed") == true);
  const Trace t = ReadTraceCsvFile(trace.string());
  CHECK(t.rounds.size() == 2000);
  Scenario s = LoadScenarioFile("scenarios/example2_weighted.json");
  s.horizon = 2000;
  CHECK(t.fingerprint == ScenarioFingerprint(s));
  CHECK(t.rounds == RunSimulation(s).rounds);
}

TEST_CASE("run is deterministic byte for byte") {
  Workspace ws;
  const std::string a = (ws.dir() / "a").string();
  const std::string b = (ws.dir() / "b").string();
  CHECK(ws.Cli("run scenarios/markov_matrix_game.json --horizon 5000 --no-checks --out " + a).code == 0);
  CHECK(ws.Cli("run scenarios/markov_matrix_game.json --horizon 5000 --no-checks --out " + b).code == 0);
  const std::string ta = Slurp(fs::path(a) / "markov_matrix_game.trace.csv");
  CHECK(!ta.empty());
  CHECK(ta == Slurp(fs::path(b) / "markov_matrix_game.trace.csv"));
  // A different seed gives a different file.
  const std::string c = (ws.dir() / "c").string();
  CHECK(ws.Cli("run scenarios/markov_matrix_game.json --horizon 5000 --seed 1 --no-checks --out " + c).code == 0);
  CHECK(ta != Slurp(fs::path(c) / "markov_matrix_game.trace.csv"));
}

TEST_CASE("horizon 0 gives an empty trace") {
  Workspace ws;
  const auto r = ws.Cli("run scenarios/example2_weighted.json --horizon 0 --out " + ws.dir().string());
  CHECK(r.code == 0);
  const Trace t = ReadTraceCsvFile((ws.dir() / "example2_weighted.trace.csv").string());
  CHECK(t.rounds.empty());
}

TEST_CASE("validation errors exit 2") {
  Workspace ws;
  auto r = ws.Cli("run missing.json --out " + ws.dir().string());
  CHECK(r.code == 2);
  CHECK(r.output.find("missing.json") != std::string::npos);

  const fs::path bad = ws.dir() / "bad.json";
  std::ofstream(bad) << R"({"game": {"example": "example2"}, "horizon": 5,
    "manager": {"variant": "weighted", "V": 1, "theta": [1, 1], "speed": 2}})";
  r = ws.Cli("run " + bad.string() + " --out " + ws.dir().string());
  CHECK(r.code == 2);
  CHECK(r.output.find("$.manager.speed") != std::string::npos);

  CHECK(ws.Cli("run scenarios/example2_weighted.json --horizon abc").code == 2);
  CHECK(ws.Cli("run scenarios/example2_weighted.json --horizon -5").code == 2);
  CHECK(ws.Cli("run").code == 2);
  CHECK(ws.Cli("frobnicate").code == 2);
  CHECK(ws.Cli("canon missing.json").code == 2);
  CHECK(ws.Cli("serve scenarios/example2_serve.json --human 3 --port 0").code == 2);
  CHECK(ws.Cli("serve scenarios/example2_weighted.json --port 0").code == 2);
}

TEST_CASE("verify passes a clean trace and fails a tampered one") {
  Workspace ws;
  REQUIRE(ws.Cli("run scenarios/example2_concave_log.json --horizon 3000 --no-checks --out " +
                 ws.dir().string()).code == 0);
  const fs::path trace = ws.dir() / "example2_concave_log.trace.csv";
  const fs::path report = ws.dir() / "report.json";
  auto r = ws.Cli("verify " + trace.string() +
                  " --scenario scenarios/example2_concave_log.json --T 1,2 --V-sweep 10,100 --summary " +
                  report.string());
  CHECK(r.code == 0);
  CHECK(r.output.find("all checks pass") != std::string::npos);
  CHECK(r.output.find("gap to psi_bar") != std::string::npos);
  CHECK(nlohmann::json::parse(Slurp(report)).at("all_passed") == true);

  Trace t = ReadTraceCsvFile(trace.string());
  t.rounds[1000].z[0] += 5;
  const fs::path tampered = ws.dir() / "tampered.csv";
  WriteTraceCsvFile(t, tampered.string());
  r = ws.Cli("verify " + tampered.string() + " --scenario scenarios/example2_concave_log.json");
  CHECK(r.code == 1);
  CHECK(r.output.find("FAIL proxy_identity") != std::string::npos);

  std::ofstream(ws.dir() / "junk.csv") << "not,a,trace\n";
  CHECK(ws.Cli("verify " + (ws.dir() / "junk.csv").string() +
               " --scenario scenarios/example2_concave_log.json").code == 2);
}

TEST_CASE("canon prints the canonical form") {
  Workspace ws;
  const auto r = ws.Cli("canon scenarios/nonergodic_piecewise.json");
  CHECK(r.code == 0);
  CHECK(r.output == CanonicalScenarioText(LoadScenarioFile("scenarios/nonergodic_piecewise.json")));
}

TEST_CASE("reproduce prints one row per configuration") {
  Workspace ws;
  const auto r = ws.Cli("reproduce --horizon 300000");
  CHECK(r.code == 0);
  for (const char* name : {"example1_noshare", "example1_share", "example2_noshare",
                           "example2_share", "example3_noshare", "example3_share"}) {
    CHECK(r.output.find(name) != std::string::npos);
  }
  CHECK(r.output.find("all pass") != std::string::npos);
}

TEST_CASE("serve reports a busy port") {
  Workspace ws;
  const fs::path port_file = ws.dir() / "port";
  const fs::path pid_file = ws.dir() / "pid";
  const std::string launch = std::string(REGRET_MANAGER_CLI) +
                             " serve scenarios/example2_serve.json --port 0 --port-file " +
                             port_file.string() + " > /dev/null 2>&1 & echo $! > " + pid_file.string();
  REQUIRE(std::system(launch.c_str()) == 0);
  std::string port;
  for (int k = 0; k < 100 && port.empty(); ++k) {
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
    const std::string text = Slurp(port_file);
    if (text.find('\n') != std::string::npos) port = text.substr(0, text.find('\n'));
  }
  REQUIRE(!port.empty());
  const auto r = ws.Cli("serve scenarios/example2_serve.json --port " + port);
  CHECK(r.code == 1);
  CHECK(r.output.find("cannot listen") != std::string::npos);
  const std::string pid = Slurp(pid_file);
  CHECK(std::system(("kill -TERM " + pid).c_str()) == 0);
}

}  // namespace
}  // namespace regret_manager
