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

#include "regret_manager/phi.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "regret_manager/error.h"

namespace regret_manager {
namespace {

constexpr double kBoxTolerance = 1e-12;

void CheckLengths(const PhiSpec& phi, std::size_t n) {
  if (n != phi.caps.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "vector length " + std::to_string(n) + " does not match phi (" +
                    std::to_string(phi.caps.size()) + ")");
  }
}

}  // namespace

PhiSpec MakeWeightedSumPhi(std::vector<double> theta, std::vector<double> caps) {
  PhiSpec phi;
  phi.kind = PhiSpec::Kind::kWeightedSum;
  phi.theta = std::move(theta);
  phi.caps = std::move(caps);
  return phi;
}

PhiSpec MakeLogOffsetPhi(std::vector<double> theta, double delta,
                         std::vector<double> caps) {
  PhiSpec phi;
  phi.kind = PhiSpec::Kind::kLogOffset;
  phi.theta = std::move(theta);
  phi.delta = delta;
  phi.caps = std::move(caps);
  if (delta > 0 && delta < 1) {
    double low = 0;
    for (double t : phi.theta) low += t * std::log(delta);
    phi.shift = -low;
  }
  return phi;
}

PhiSpec MakeMinUtilityPhi(std::vector<double> caps) {
  PhiSpec phi;
  phi.kind = PhiSpec::Kind::kMinUtility;
  phi.caps = std::move(caps);
  return phi;
}

std::string_view PhiKindName(PhiSpec::Kind kind) {
  switch (kind) {
    case PhiSpec::Kind::kWeightedSum:
      return "weighted_sum";
    case PhiSpec::Kind::kLogOffset:
      return "log_offset";
    case PhiSpec::Kind::kMinUtility:
      return "min_utility";
  }
  return "unknown";
}

void ValidatePhi(const PhiSpec& phi, bool require_nonnegative) {
  if (phi.caps.empty()) {
    throw Error(ErrorCode::kInvalidInput, "phi needs at least one coordinate");
  }
  for (double c : phi.caps) {
    if (!(c > 0) || !std::isfinite(c)) {
      throw Error(ErrorCode::kInvalidInput, "phi caps must be finite and > 0");
    }
  }
  if (phi.kind != PhiSpec::Kind::kMinUtility &&
      phi.theta.size() != phi.caps.size()) {
    throw Error(ErrorCode::kInvalidInput, "phi theta length != N");
  }
  for (double t : phi.theta) {
    if (!std::isfinite(t)) {
      throw Error(ErrorCode::kInvalidInput, "phi theta must be finite");
    }
  }
  if (phi.kind == PhiSpec::Kind::kLogOffset) {
    if (!(phi.delta > 0)) {
      throw Error(ErrorCode::kInvalidInput, "log_offset needs delta > 0");
    }
    for (double t : phi.theta) {
      if (t < 0) throw Error(ErrorCode::kInvalidInput, "log_offset needs theta >= 0");
    }
  }
  if (require_nonnegative) {
    if (phi.kind == PhiSpec::Kind::kWeightedSum) {
      for (double t : phi.theta) {
        if (t < 0) {
          throw Error(ErrorCode::kInvalidInput,
                      "weighted_sum phi must have theta >= 0 to be non-negative");
        }
      }
    }
    if (phi.kind == PhiSpec::Kind::kLogOffset) {
      std::vector<double> zero(phi.caps.size(), 0.0);
      if (EvalPhi(phi, zero) < -kBoxTolerance) {
        throw Error(ErrorCode::kInvalidInput,
                    "log_offset phi is negative at the origin; raise delta or shift");
      }
    }
  }
}

double EvalPhi(const PhiSpec& phi, std::span<const double> gamma) {
  CheckLengths(phi, gamma.size());
  std::vector<double> g(gamma.begin(), gamma.end());
  for (size_t i = 0; i < g.size(); ++i) {
    const double slack = kBoxTolerance * std::max(1.0, phi.caps[i]);
    if (!(g[i] >= -slack && g[i] <= phi.caps[i] + slack)) {
      throw Error(ErrorCode::kInvalidInput,
                  "proxy coordinate " + std::to_string(i + 1) + " = " +
                      std::to_string(g[i]) + " outside [0, " +
                      std::to_string(phi.caps[i]) + "]");
    }
    g[i] = std::clamp(g[i], 0.0, phi.caps[i]);
  }
  switch (phi.kind) {
    case PhiSpec::Kind::kWeightedSum: {
      double s = 0;
      for (size_t i = 0; i < g.size(); ++i) s += phi.theta[i] * g[i];
      return s;
    }
    case PhiSpec::Kind::kLogOffset: {
      double s = phi.shift;
      for (size_t i = 0; i < g.size(); ++i) s += phi.theta[i] * std::log(phi.delta + g[i]);
      return s;
    }
    case PhiSpec::Kind::kMinUtility:
      return *std::min_element(g.begin(), g.end());
  }
  return 0;
}

std::vector<double> ProxyArgmax(const PhiSpec& phi, std::span<const double> z,
                                double v) {
  CheckLengths(phi, z.size());
  if (!(v >= 0)) throw Error(ErrorCode::kInvalidInput, "V must be >= 0");
  const size_t n = z.size();
  std::vector<double> g(n);
  switch (phi.kind) {
    case PhiSpec::Kind::kWeightedSum:
      // Linear: each coordinate goes to a face.
      for (size_t i = 0; i < n; ++i) g[i] = v * phi.theta[i] >= z[i] ? phi.caps[i] : 0.0;
      break;
    case PhiSpec::Kind::kLogOffset:
      // Separable and concave: stationary point V*theta/(delta+g) = z,
      // clamped. Non-positive z makes the coordinate non-decreasing.
      for (size_t i = 0; i < n; ++i) {
        if (z[i] <= 0) {
          g[i] = phi.caps[i];
        } else {
          g[i] = std::clamp(v * phi.theta[i] / z[i] - phi.delta, 0.0, phi.caps[i]);
        }
      }
      break;
    case PhiSpec::Kind::kMinUtility: {
      // At an optimum with min level m, coordinates with z_i > 0 sit at m and
      // the rest at their caps, so the objective is linear in
      // m in [0, min cap] with slope V - sum_{z_i>0} z_i.
      double slope = v;
      for (size_t i = 0; i < n; ++i) {
        if (z[i] > 0) slope -= z[i];
      }
      const double level =
          slope >= 0 ? *std::min_element(phi.caps.begin(), phi.caps.end()) : 0.0;
      for (size_t i = 0; i < n; ++i) g[i] = z[i] > 0 ? level : phi.caps[i];
      break;
    }
  }
  return g;
}

double LipschitzBound(const PhiSpec& phi) {
  switch (phi.kind) {
    case PhiSpec::Kind::kWeightedSum: {
      double s = 0;
      for (double t : phi.theta) s += t * t;
      return std::sqrt(s);
    }
    case PhiSpec::Kind::kLogOffset: {
      double s = 0;
      for (double t : phi.theta) s += (t / phi.delta) * (t / phi.delta);
      return std::sqrt(s);
    }
    case PhiSpec::Kind::kMinUtility:
      return 1.0;
  }
  return std::numeric_limits<double>::infinity();
}

double PhiMax(const PhiSpec& phi) {
  switch (phi.kind) {
    case PhiSpec::Kind::kWeightedSum: {
      double s = 0;
      for (size_t i = 0; i < phi.theta.size(); ++i) {
        s += std::max(phi.theta[i], 0.0) * phi.caps[i];
      }
      return s;
    }
    case PhiSpec::Kind::kLogOffset:
    case PhiSpec::Kind::kMinUtility:
      return EvalPhi(phi, phi.caps);
  }
  return 0;
}

}  // namespace regret_manager
