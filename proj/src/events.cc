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

#include "regret_manager/events.h"

#include <cmath>
#include <string>

#include "regret_manager/error.h"

namespace regret_manager {
namespace {

constexpr double kProbabilityTolerance = 1e-9;

std::size_t SubtreeSize(const EventGeneratorSpec& spec) {
  std::size_t size = 1;
  for (const auto& child : spec.segments) size += SubtreeSize(child);
  return size;
}

void CheckDistribution(double total, const std::string& what) {
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    throw Error(ErrorCode::kInvalidInput,
                what + " probabilities sum to " + std::to_string(total));
  }
}

void CheckLength(const EventVector& w, int event_dim, const std::string& what) {
  if (w.size() != static_cast<size_t>(event_dim)) {
    throw Error(ErrorCode::kInvalidInput,
                what + " has length " + std::to_string(w.size()) +
                    ", expected " + std::to_string(event_dim));
  }
}

template <typename Entry, typename Prob>
std::size_t Sample(const std::vector<Entry>& table, Prob prob, double r) {
  double cumulative = 0;
  for (std::size_t k = 0; k < table.size(); ++k) {
    cumulative += prob(table[k]);
    if (r < cumulative) return k;
  }
  // r landed in the rounding gap at the top: take the last positive entry.
  for (std::size_t k = table.size(); k > 0; --k) {
    if (prob(table[k - 1]) > 0) return k - 1;
  }
  return table.size() - 1;
}

}  // namespace

std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void ValidateEventGenerator(const EventGeneratorSpec& spec, int event_dim) {
  using Kind = EventGeneratorSpec::Kind;
  switch (spec.kind) {
    case Kind::kIid: {
      if (spec.coordinates.empty() == spec.joint.empty()) {
        throw Error(ErrorCode::kInvalidInput,
                    "iid generator needs exactly one of coordinates/joint");
      }
      if (!spec.coordinates.empty()) {
        if (spec.coordinates.size() != static_cast<size_t>(event_dim)) {
          throw Error(ErrorCode::kInvalidInput,
                      "iid coordinate tables do not match event_dim");
        }
        for (size_t j = 0; j < spec.coordinates.size(); ++j) {
          double total = 0;
          for (const auto& wv : spec.coordinates[j]) {
            if (wv.probability < 0) {
              throw Error(ErrorCode::kInvalidInput, "negative probability");
            }
            total += wv.probability;
          }
          CheckDistribution(total, "coordinate " + std::to_string(j + 1));
        }
      } else {
        double total = 0;
        for (const auto& we : spec.joint) {
          if (we.probability < 0) {
            throw Error(ErrorCode::kInvalidInput, "negative probability");
          }
          CheckLength(we.values, event_dim, "joint support point");
          total += we.probability;
        }
        CheckDistribution(total, "joint table");
      }
      break;
    }
    case Kind::kMarkov: {
      const size_t states = spec.state_events.size();
      if (states == 0 || spec.transition.size() != states) {
        throw Error(ErrorCode::kInvalidInput,
                    "markov generator needs one transition row per state");
      }
      if (spec.initial_state < 0 ||
          static_cast<size_t>(spec.initial_state) >= states) {
        throw Error(ErrorCode::kInvalidInput, "markov initial_state invalid");
      }
      for (size_t s = 0; s < states; ++s) {
        CheckLength(spec.state_events[s], event_dim, "markov state event");
        if (spec.transition[s].size() != states) {
          throw Error(ErrorCode::kInvalidInput, "markov row length mismatch");
        }
        double total = 0;
        for (double p : spec.transition[s]) {
          if (p < 0) throw Error(ErrorCode::kInvalidInput, "negative probability");
          total += p;
        }
        CheckDistribution(total, "markov row " + std::to_string(s));
      }
      break;
    }
    case Kind::kPiecewise: {
      if (spec.segments.empty() || spec.segments.size() != spec.durations.size()) {
        throw Error(ErrorCode::kInvalidInput,
                    "piecewise generator needs matching durations/segments");
      }
      for (size_t k = 0; k < spec.segments.size(); ++k) {
        if (spec.durations[k] <= 0) {
          throw Error(ErrorCode::kInvalidInput, "segment duration must be > 0");
        }
        ValidateEventGenerator(spec.segments[k], event_dim);
      }
      break;
    }
    case Kind::kScripted: {
      if (spec.sequence.empty()) {
        throw Error(ErrorCode::kInvalidInput, "scripted sequence is empty");
      }
      for (const auto& w : spec.sequence) CheckLength(w, event_dim, "scripted event");
      break;
    }
  }
}

EventStream::EventStream(const EventGeneratorSpec& spec, std::uint64_t seed)
    : spec_(spec), rng_(DeriveSeed(seed, 0)) {
  const std::size_t nodes = SubtreeSize(spec_);
  cursor_.assign(nodes, 0);
  elapsed_.assign(nodes, 0);
  markov_state_.assign(nodes, 0);
  // Pre-order walk to seed each Markov node's initial state.
  std::vector<std::pair<const EventGeneratorSpec*, std::size_t>> stack{{&spec_, 0}};
  while (!stack.empty()) {
    auto [node, id] = stack.back();
    stack.pop_back();
    markov_state_[id] = node->initial_state;
    std::size_t child = id + 1;
    for (const auto& seg : node->segments) {
      stack.push_back({&seg, child});
      child += SubtreeSize(seg);
    }
  }
}

EventVector EventStream::Next() { return Draw(spec_, 0); }

EventVector EventStream::Draw(const EventGeneratorSpec& spec, std::size_t node) {
  using Kind = EventGeneratorSpec::Kind;
  switch (spec.kind) {
    case Kind::kIid: {
      if (!spec.coordinates.empty()) {
        EventVector w(spec.coordinates.size());
        for (size_t j = 0; j < w.size(); ++j) {
          const auto& table = spec.coordinates[j];
          const double r = Uniform01(rng_);
          w[j] = table[Sample(table, [](const WeightedValue& v) {
                         return v.probability;
                       }, r)].value;
        }
        return w;
      }
      const double r = Uniform01(rng_);
      return spec.joint[Sample(spec.joint, [](const WeightedEvent& e) {
                          return e.probability;
                        }, r)].values;
    }
    case Kind::kMarkov: {
      int& state = markov_state_[node];
      EventVector w = spec.state_events[static_cast<size_t>(state)];
      const auto& row = spec.transition[static_cast<size_t>(state)];
      state = static_cast<int>(
          Sample(row, [](double p) { return p; }, Uniform01(rng_)));
      return w;
    }
    case Kind::kPiecewise: {
      auto& segment = cursor_[node];
      auto& elapsed = elapsed_[node];
      if (elapsed >= spec.durations[static_cast<size_t>(segment)]) {
        elapsed = 0;
        segment = (segment + 1) % static_cast<std::int64_t>(spec.segments.size());
      }
      std::size_t child = node + 1;
      for (std::int64_t k = 0; k < segment; ++k) {
        child += SubtreeSize(spec.segments[static_cast<size_t>(k)]);
      }
      ++elapsed;
      return Draw(spec.segments[static_cast<size_t>(segment)], child);
    }
    case Kind::kScripted: {
      auto& pos = cursor_[node];
      EventVector w = spec.sequence[static_cast<size_t>(pos)];
      pos = (pos + 1) % static_cast<std::int64_t>(spec.sequence.size());
      return w;
    }
  }
  return {};
}

}  // namespace regret_manager
