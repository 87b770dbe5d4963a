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

#ifndef REGRET_MANAGER_TOOLS_COMMANDS_H_
#define REGRET_MANAGER_TOOLS_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace regret_manager::cli {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitValidation = 2;

struct RunOptions {
  std::string scenario;
  std::optional<std::string> horizon;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::vector<int> frame_sizes = {1};
  bool checks = true;
  bool write_trace = true;
};

struct ReproduceOptions {
  std::string horizon = "1000000";
  std::uint64_t seed = 20260101;
  std::optional<std::string> out_dir;
};

struct VerifyOptions {
  std::string trace;
  std::string scenario;
  std::vector<int> frame_sizes = {1};
  std::vector<double> v_sweep;
  std::optional<std::string> summary;
};

struct ServeOptions {
  std::string scenario;
  std::string address = "127.0.0.1";
  unsigned short port = 8080;
  std::optional<int> human_player;  // 1-based
  double autoplay_seconds = 0;
  std::optional<std::string> port_file;
};

struct CanonOptions {
  std::string scenario;
};

int RunCommand(const RunOptions& options);
int ReproduceCommand(const ReproduceOptions& options);
int VerifyCommand(const VerifyOptions& options);
int ServeCommand(const ServeOptions& options);
int CanonCommand(const CanonOptions& options);

}  // namespace regret_manager::cli

#endif  // REGRET_MANAGER_TOOLS_COMMANDS_H_
