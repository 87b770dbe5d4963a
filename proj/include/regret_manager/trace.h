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

#ifndef REGRET_MANAGER_TRACE_H_
#define REGRET_MANAGER_TRACE_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "regret_manager/compensated_sum.h"
#include "regret_manager/game.h"
#include "regret_manager/manager.h"

namespace regret_manager {

// Row t of a trace. Queues are the values after round t's update, i.e.
// Q(t+1), Z(t+1); averages cover rounds 0..t, i.e. ubar(t+1) etc. Proxy
// columns are zero for variants without proxies.
struct RoundRecord {
  std::int64_t t = 0;
  EventVector omega;
  ActionVector baseline;
  ActionVector suggestion;
  UtilityVector u;
  UtilityVector x;
  std::vector<double> q;
  std::vector<double> z;
  std::vector<double> gamma;
  std::vector<double> ubar;
  std::vector<double> xbar;
  std::vector<double> gammabar;
  double objective = 0;

  bool operator==(const RoundRecord&) const = default;
};

struct Trace {
  std::string fingerprint;
  int num_players = 0;
  int event_dim = 0;
  std::vector<RoundRecord> rounds;

  bool operator==(const Trace&) const = default;
};

// Appends rounds and maintains the running averages with compensated sums.
class TraceBuilder {
 public:
  TraceBuilder(std::string fingerprint, int num_players, int event_dim);

  const RoundRecord& Append(const EventVector& omega, const ActionVector& baseline,
                            const StepOutput& step, const ManagerState& state_after);

  const Trace& trace() const { return trace_; }
  Trace Release() { return std::move(trace_); }

 private:
  Trace trace_;
  std::vector<CompensatedSum> u_sum_, x_sum_, gamma_sum_;
};

// CSV with header
//   t,omega_1..M,b_1..N,alpha_1..N,u_1..N,x_1..N,Q_1..N,Z_1..N,gamma_1..N,
//   ubar_1..N,xbar_1..N,gammabar_1..N,objective
// Reals are written with 17 significant digits, so ReadTraceCsv() restores
// every double exactly.
void WriteTraceCsv(const Trace& trace, std::ostream& out);
void WriteTraceCsvFile(const Trace& trace, const std::string& path);
Trace ReadTraceCsv(std::istream& in);
Trace ReadTraceCsvFile(const std::string& path);

// Recomputes every running average from the raw columns and returns the
// largest absolute difference to the stored averages.
double RunningAverageDiscrepancy(const Trace& trace);

std::string FormatDouble(double value);

}  // namespace regret_manager

#endif  // REGRET_MANAGER_TRACE_H_
