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

#ifndef REGRET_MANAGER_PHI_H_
#define REGRET_MANAGER_PHI_H_

#include <span>
#include <string_view>
#include <vector>

namespace regret_manager {

// Concave objectives over the box prod_i [0, caps_i]:
//   kWeightedSum  sum_i theta_i * g_i
//   kLogOffset    shift + sum_i theta_i * log(delta + g_i),  theta_i >= 0
//   kMinUtility   min_i g_i
// For kLogOffset with delta < 1, `shift` is set so the function is
// non-negative on the box.
struct PhiSpec {
  enum class Kind { kWeightedSum, kLogOffset, kMinUtility };
  Kind kind = Kind::kWeightedSum;
  std::vector<double> theta;
  double delta = 1.0;
  double shift = 0.0;
  std::vector<double> caps;
};

PhiSpec MakeWeightedSumPhi(std::vector<double> theta, std::vector<double> caps);
PhiSpec MakeLogOffsetPhi(std::vector<double> theta, double delta,
                         std::vector<double> caps);
PhiSpec MakeMinUtilityPhi(std::vector<double> caps);

std::string_view PhiKindName(PhiSpec::Kind kind);

// Throws Error(kInvalidInput) for malformed parameters. With
// `require_nonnegative`, also rejects objectives that go negative on the
// box (negative weights), which the concave manager's analysis excludes.
void ValidatePhi(const PhiSpec& phi, bool require_nonnegative);

// Throws Error(kInvalidInput) if `gamma` is outside the box. Coordinates
// within 1e-12 relative of a face are clamped onto it.
double EvalPhi(const PhiSpec& phi, std::span<const double> gamma);

// Global maximiser of V*phi(g) - sum_i z_i g_i over the box. Ties go to the
// upper face (u_i^max).
std::vector<double> ProxyArgmax(const PhiSpec& phi, std::span<const double> z,
                                double v);

// Euclidean Lipschitz constant of phi on the box.
double LipschitzBound(const PhiSpec& phi);

// Maximum of phi over the box.
double PhiMax(const PhiSpec& phi);

}  // namespace regret_manager

#endif  // REGRET_MANAGER_PHI_H_
