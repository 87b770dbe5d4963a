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

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "regret_manager/error.h"
#include "regret_manager/phi.h"

namespace rm = regret_manager;

namespace {

double Objective(const rm::PhiSpec& phi, const std::vector<double>& g,
                 const std::vector<double>& z, double v) {
  double s = v * rm::EvalPhi(phi, g);
  for (size_t i = 0; i < g.size(); ++i) s -= z[i] * g[i];
  return s;
}

std::vector<double> RandomBoxPoint(const rm::PhiSpec& phi, std::mt19937_64& rng) {
  std::vector<double> g(phi.caps.size());
  for (size_t i = 0; i < g.size(); ++i) {
    g[i] = std::uniform_real_distribution<double>(0, phi.caps[i])(rng);
  }
  return g;
}

double Norm(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// A mix of kinds, dimensions and caps for the property sweeps.
std::vector<rm::PhiSpec> SampleSpecs() {
  return {
      rm::MakeWeightedSumPhi({1, 1}, {10, 10}),
      rm::MakeWeightedSumPhi({0.5, 2, 0}, {4, 6, 3}),
      rm::MakeLogOffsetPhi({1, 1}, 1, {10, 10}),
      rm::MakeLogOffsetPhi({2, 0.5, 1}, 0.5, {4, 6, 3}),
      rm::MakeLogOffsetPhi({1}, 0.1, {5}),
      rm::MakeMinUtilityPhi({10, 4}),
      rm::MakeMinUtilityPhi({3, 5, 4}),
  };
}

}  // namespace

TEST_CASE("eval_phi examples") {
  CHECK(rm::EvalPhi(rm::MakeWeightedSumPhi({1, 1}, {10, 10}),
                    std::vector<double>{3.6, 3.5}) == doctest::Approx(7.1).epsilon(1e-15));
  CHECK(rm::EvalPhi(rm::MakeMinUtilityPhi({10, 10}), std::vector<double>{2, 5}) == 2);
  CHECK(rm::EvalPhi(rm::MakeLogOffsetPhi({1, 1}, 1, {10, 10}),
                    std::vector<double>{0, 0}) == 0);
}

TEST_CASE("eval_phi rejects points outside the box") {
  auto phi = rm::MakeWeightedSumPhi({1, 1}, {10, 10});
  CHECK_THROWS_AS(rm::EvalPhi(phi, std::vector<double>{-0.5, 1}), rm::Error);
  CHECK_THROWS_AS(rm::EvalPhi(phi, std::vector<double>{1, 10.5}), rm::Error);
  CHECK_THROWS_AS(rm::EvalPhi(phi, std::vector<double>{1}), rm::Error);
  try {
    rm::EvalPhi(phi, std::vector<double>{11, 0});
  } catch (const rm::Error& e) {
    CHECK(e.code() == rm::ErrorCode::kInvalidInput);
  }
}

TEST_CASE("proxy_argmax examples") {
  auto lin = rm::MakeWeightedSumPhi({1, 1}, {10, 10});
  CHECK(rm::ProxyArgmax(lin, std::vector<double>{3, 30}, 10) ==
        std::vector<double>{10, 0});
  // Tie goes to the cap.
  CHECK(rm::ProxyArgmax(lin, std::vector<double>{10, 10.5}, 10) ==
        std::vector<double>{10, 0});

  auto log1 = rm::MakeLogOffsetPhi({1}, 1, {10});
  auto g = rm::ProxyArgmax(log1, std::vector<double>{1}, 4);
  CHECK(g[0] == doctest::Approx(3).epsilon(1e-15));
  // Grid oracle at step 1e-4 over [0, 10].
  double best = -1e300, best_x = -1;
  for (int k = 0; k <= 100000; ++k) {
    const double x = k * 1e-4;
    const double f = Objective(log1, {x}, {1}, 4);
    if (f > best) best = f, best_x = x;
  }
  CHECK(best_x == doctest::Approx(3).epsilon(1e-4));
  CHECK(Objective(log1, g, {1}, 4) >= best - 1e-12);
}

TEST_CASE("proxy_argmax with V = 0 and Z = 0 returns the upper corner") {
  for (const auto& phi : SampleSpecs()) {
    std::vector<double> z(phi.caps.size(), 0.0);
    auto g = rm::ProxyArgmax(phi, z, 0);
    CHECK(g == phi.caps);
  }
}

TEST_CASE("proxy_argmax rejects bad input") {
  auto phi = rm::MakeWeightedSumPhi({1, 1}, {10, 10});
  CHECK_THROWS_AS(rm::ProxyArgmax(phi, std::vector<double>{1}, 1), rm::Error);
  CHECK_THROWS_AS(rm::ProxyArgmax(phi, std::vector<double>{1, 1}, -1), rm::Error);
}

TEST_CASE("lipschitz_bound and phi_max examples") {
  CHECK(rm::LipschitzBound(rm::MakeWeightedSumPhi({1, 1}, {10, 10})) ==
        doctest::Approx(std::sqrt(2.0)));
  CHECK(rm::LipschitzBound(rm::MakeMinUtilityPhi({10, 4})) == 1);
  CHECK(rm::LipschitzBound(rm::MakeLogOffsetPhi({2}, 1, {10})) == doctest::Approx(2));

  CHECK(rm::PhiMax(rm::MakeWeightedSumPhi({1, 1}, {10, 10})) == 20);
  CHECK(rm::PhiMax(rm::MakeMinUtilityPhi({10, 4})) == 4);
  CHECK(rm::PhiMax(rm::MakeLogOffsetPhi({1, 1}, 1, {9, 9})) ==
        doctest::Approx(2 * std::log(10.0)));
}

TEST_CASE("validate_phi") {
  CHECK_NOTHROW(rm::ValidatePhi(rm::MakeLogOffsetPhi({1, 1}, 1, {4, 4}), true));
  // delta < 1 gets a shift so phi stays non-negative.
  auto shifted = rm::MakeLogOffsetPhi({1, 1}, 0.5, {4, 4});
  CHECK_NOTHROW(rm::ValidatePhi(shifted, true));
  CHECK(rm::EvalPhi(shifted, std::vector<double>{0, 0}) == doctest::Approx(0).epsilon(1e-12));
  CHECK_THROWS_AS(rm::ValidatePhi(rm::MakeLogOffsetPhi({1}, 0, {4}), false), rm::Error);
  CHECK_THROWS_AS(rm::ValidatePhi(rm::MakeLogOffsetPhi({-1}, 1, {4}), false), rm::Error);
  CHECK_THROWS_AS(rm::ValidatePhi(rm::MakeWeightedSumPhi({1}, {4, 4}), false), rm::Error);
  CHECK_THROWS_AS(rm::ValidatePhi(rm::MakeWeightedSumPhi({-1, 1}, {4, 4}), true), rm::Error);
  CHECK_NOTHROW(rm::ValidatePhi(rm::MakeWeightedSumPhi({-1, 1}, {4, 4}), false));
  CHECK_THROWS_AS(rm::ValidatePhi(rm::MakeMinUtilityPhi({0, 4}), false), rm::Error);
  CHECK_THROWS_AS(rm::ValidatePhi(rm::MakeMinUtilityPhi({}), false), rm::Error);
}

TEST_CASE("property: proxy_argmax beats random and grid points") {
  std::mt19937_64 rng(101);
  for (const auto& phi : SampleSpecs()) {
    const size_t n = phi.caps.size();
    for (int draw = 0; draw < 20; ++draw) {
      std::vector<double> z(n);
      for (auto& zi : z) zi = std::uniform_real_distribution<double>(-5, 30)(rng);
      const double v = std::uniform_real_distribution<double>(0, 40)(rng);
      const auto g = rm::ProxyArgmax(phi, z, v);
      for (size_t i = 0; i < n; ++i) {
        REQUIRE(g[i] >= 0);
        REQUIRE(g[i] <= phi.caps[i]);
      }
      const double at_g = Objective(phi, g, z, v);
      const int samples = draw < 2 ? 10000 : 500;
      for (int s = 0; s < samples; ++s) {
        REQUIRE(at_g >= Objective(phi, RandomBoxPoint(phi, rng), z, v) - 1e-9);
      }
      // 10 points per axis including both ends.
      std::vector<int> idx(n, 0);
      while (true) {
        std::vector<double> p(n);
        for (size_t i = 0; i < n; ++i) p[i] = phi.caps[i] * idx[i] / 9.0;
        REQUIRE(at_g >= Objective(phi, p, z, v) - 1e-9);
        size_t k = 0;
        while (k < n && ++idx[k] == 10) idx[k++] = 0;
        if (k == n) break;
      }
    }
  }
}

TEST_CASE("property: lipschitz certificate") {
  std::mt19937_64 rng(202);
  for (const auto& phi : SampleSpecs()) {
    const double l = rm::LipschitzBound(phi);
    for (int s = 0; s < 10000; ++s) {
      auto a = RandomBoxPoint(phi, rng);
      auto b = RandomBoxPoint(phi, rng);
      REQUIRE(std::abs(rm::EvalPhi(phi, a) - rm::EvalPhi(phi, b)) <=
              l * Norm(a, b) + 1e-12);
    }
  }
}

TEST_CASE("property: concavity and Jensen") {
  std::mt19937_64 rng(303);
  for (const auto& phi : SampleSpecs()) {
    for (int s = 0; s < 10000; ++s) {
      auto a = RandomBoxPoint(phi, rng);
      auto b = RandomBoxPoint(phi, rng);
      for (double lam : {0.25, 0.5, 0.75}) {
        std::vector<double> m(a.size());
        for (size_t i = 0; i < a.size(); ++i) m[i] = lam * a[i] + (1 - lam) * b[i];
        REQUIRE(rm::EvalPhi(phi, m) >=
                lam * rm::EvalPhi(phi, a) + (1 - lam) * rm::EvalPhi(phi, b) - 1e-12);
      }
    }
    // Jensen over a batch: phi of the mean dominates the mean of phi.
    std::vector<double> mean(phi.caps.size(), 0.0);
    double mean_phi = 0;
    const int m = 1000;
    for (int s = 0; s < m; ++s) {
      auto p = RandomBoxPoint(phi, rng);
      for (size_t i = 0; i < p.size(); ++i) mean[i] += p[i] / m;
      mean_phi += rm::EvalPhi(phi, p) / m;
    }
    for (size_t i = 0; i < mean.size(); ++i) mean[i] = std::min(mean[i], phi.caps[i]);
    CHECK(rm::EvalPhi(phi, mean) >= mean_phi - 1e-9);
  }
}

TEST_CASE("property: phi is non-negative and bounded by phi_max on the box") {
  std::mt19937_64 rng(404);
  for (const auto& phi : SampleSpecs()) {
    const double top = rm::PhiMax(phi);
    for (int s = 0; s < 2000; ++s) {
      const double f = rm::EvalPhi(phi, RandomBoxPoint(phi, rng));
      REQUIRE(f >= -1e-12);
      REQUIRE(f <= top + 1e-12);
    }
  }
}
