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

#include "regret_manager/trace.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "regret_manager/error.h"

namespace regret_manager {
namespace {

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double ParseDouble(const std::string& s, std::int64_t row) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw Error(ErrorCode::kSchema,
                "trace row " + std::to_string(row) + ": bad number '" + s + "'");
  }
  return v;
}

int ParseInt(const std::string& s, std::int64_t row) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0') {
    throw Error(ErrorCode::kSchema,
                "trace row " + std::to_string(row) + ": bad integer '" + s + "'");
  }
  return static_cast<int>(v);
}

}  // namespace

std::string FormatDouble(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

TraceBuilder::TraceBuilder(std::string fingerprint, int num_players, int event_dim)
    : u_sum_(static_cast<size_t>(num_players)),
      x_sum_(static_cast<size_t>(num_players)),
      gamma_sum_(static_cast<size_t>(num_players)) {
  trace_.fingerprint = std::move(fingerprint);
  trace_.num_players = num_players;
  trace_.event_dim = event_dim;
}

const RoundRecord& TraceBuilder::Append(const EventVector& omega,
                                        const ActionVector& baseline,
                                        const StepOutput& step,
                                        const ManagerState& state_after) {
  const auto n = static_cast<size_t>(trace_.num_players);
  RoundRecord r;
  r.t = static_cast<std::int64_t>(trace_.rounds.size());
  r.omega = omega;
  r.baseline = baseline;
  r.suggestion = step.suggestion;
  r.u = step.u;
  r.x = step.x;
  r.q = state_after.q;
  r.z = state_after.z;
  r.gamma = step.gamma.empty() ? std::vector<double>(n, 0.0) : step.gamma;
  r.objective = step.objective;
  const double count = static_cast<double>(r.t + 1);
  r.ubar.resize(n);
  r.xbar.resize(n);
  r.gammabar.resize(n);
  for (size_t i = 0; i < n; ++i) {
    u_sum_[i].Add(r.u[i]);
    x_sum_[i].Add(r.x[i]);
    gamma_sum_[i].Add(r.gamma[i]);
    r.ubar[i] = u_sum_[i].Total() / count;
    r.xbar[i] = x_sum_[i].Total() / count;
    r.gammabar[i] = gamma_sum_[i].Total() / count;
  }
  trace_.rounds.push_back(std::move(r));
  return trace_.rounds.back();
}

void WriteTraceCsv(const Trace& trace, std::ostream& out) {
  const int n = trace.num_players;
  const int m = trace.event_dim;
  out << "# fingerprint " << trace.fingerprint << "\n";
  out << "t";
  for (int j = 1; j <= m; ++j) out << ",omega_" << j;
  for (const char* name : {"b", "alpha", "u", "x", "Q", "Z", "gamma", "ubar",
                           "xbar", "gammabar"}) {
    for (int i = 1; i <= n; ++i) out << "," << name << "_" << i;
  }
  out << ",objective\n";
  std::string line;
  for (const auto& r : trace.rounds) {
    line.clear();
    line += std::to_string(r.t);
    for (double w : r.omega) line += "," + FormatDouble(w);
    for (int b : r.baseline) line += "," + std::to_string(b);
    for (int a : r.suggestion) line += "," + std::to_string(a);
    for (const auto* col : {&r.u, &r.x, &r.q, &r.z, &r.gamma, &r.ubar, &r.xbar,
                            &r.gammabar}) {
      for (double v : *col) line += "," + FormatDouble(v);
    }
    line += "," + FormatDouble(r.objective);
    out << line << "\n";
  }
}

void WriteTraceCsvFile(const Trace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidInput, "cannot write " + path);
  WriteTraceCsv(trace, out);
  if (!out) throw Error(ErrorCode::kInvalidInput, "failed writing " + path);
}

Trace ReadTraceCsv(std::istream& in) {
  Trace trace;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kSchema, "empty trace file");
  if (line.rfind("# fingerprint ", 0) == 0) {
    trace.fingerprint = line.substr(14);
    if (!std::getline(in, line)) throw Error(ErrorCode::kSchema, "trace has no header");
  }
  const auto header = SplitCsv(line);
  int m = 0, n = 0;
  for (const auto& h : header) {
    if (h.rfind("omega_", 0) == 0) ++m;
    if (h.rfind("b_", 0) == 0) ++n;
  }
  const size_t expected = 1 + static_cast<size_t>(m) + 10 * static_cast<size_t>(n) + 1;
  if (header.empty() || header[0] != "t" || n == 0 || header.size() != expected) {
    throw Error(ErrorCode::kSchema, "unrecognised trace header");
  }
  trace.num_players = n;
  trace.event_dim = m;
  std::int64_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = SplitCsv(line);
    if (cells.size() != expected) {
      throw Error(ErrorCode::kSchema,
                  "trace row " + std::to_string(row) + " has " +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(expected));
    }
    RoundRecord r;
    size_t c = 0;
    r.t = std::strtoll(cells[c++].c_str(), nullptr, 10);
    for (int j = 0; j < m; ++j) r.omega.push_back(ParseDouble(cells[c++], row));
    for (int i = 0; i < n; ++i) r.baseline.push_back(ParseInt(cells[c++], row));
    for (int i = 0; i < n; ++i) r.suggestion.push_back(ParseInt(cells[c++], row));
    for (auto* col : {&r.u, &r.x, &r.q, &r.z, &r.gamma, &r.ubar, &r.xbar,
                      &r.gammabar}) {
      for (int i = 0; i < n; ++i) col->push_back(ParseDouble(cells[c++], row));
    }
    r.objective = ParseDouble(cells[c++], row);
    trace.rounds.push_back(std::move(r));
    ++row;
  }
  return trace;
}

Trace ReadTraceCsvFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidInput, "cannot read " + path);
  return ReadTraceCsv(in);
}

double RunningAverageDiscrepancy(const Trace& trace) {
  // Extended-precision naive sums: a different route from the builder's
  // compensated doubles.
  const auto n = static_cast<size_t>(trace.num_players);
  std::vector<long double> u(n, 0.0L), x(n, 0.0L), g(n, 0.0L);
  double worst = 0;
  for (size_t t = 0; t < trace.rounds.size(); ++t) {
    const auto& r = trace.rounds[t];
    const long double count = static_cast<long double>(t + 1);
    for (size_t i = 0; i < n; ++i) {
      u[i] += r.u[i];
      x[i] += r.x[i];
      g[i] += r.gamma[i];
      worst = std::max({worst,
                        static_cast<double>(std::fabs(u[i] / count - r.ubar[i])),
                        static_cast<double>(std::fabs(x[i] / count - r.xbar[i])),
                        static_cast<double>(std::fabs(g[i] / count - r.gammabar[i]))});
    }
  }
  return worst;
}

}  // namespace regret_manager
