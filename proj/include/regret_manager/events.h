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

#ifndef REGRET_MANAGER_EVENTS_H_
#define REGRET_MANAGER_EVENTS_H_

#include <cstdint>
#include <random>
#include <vector>

#include "regret_manager/game.h"

namespace regret_manager {

// Stream seeds are derived from the scenario seed with SplitMix64 so that
// events and each player's policy draw from independent generators.
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream);

// Uniform draw in [0, 1) from the top 53 bits; portable across standard
// libraries, unlike std::uniform_real_distribution.
double Uniform01(std::mt19937_64& rng);

struct WeightedValue {
  double value = 0;
  double probability = 0;

  bool operator==(const WeightedValue&) const = default;
};

struct WeightedEvent {
  EventVector values;
  double probability = 0;

  bool operator==(const WeightedEvent&) const = default;
};

// Description of an event process. Plain value; EventStream runs it.
struct EventGeneratorSpec {
  enum class Kind { kIid, kMarkov, kPiecewise, kScripted };
  Kind kind = Kind::kIid;

  // kIid: either independent per-coordinate tables or one joint table.
  std::vector<std::vector<WeightedValue>> coordinates;
  std::vector<WeightedEvent> joint;

  // kMarkov: transition[s][s'] rows sum to 1; state_events[s] is emitted in
  // state s.
  std::vector<std::vector<double>> transition;
  std::vector<EventVector> state_events;
  int initial_state = 0;

  // kPiecewise: segment k runs `durations[k]` rounds of `segments[k]`, then
  // the list repeats from the start.
  std::vector<std::int64_t> durations;
  std::vector<EventGeneratorSpec> segments;

  // kScripted: explicit sequence, repeated cyclically.
  std::vector<EventVector> sequence;

  bool operator==(const EventGeneratorSpec&) const = default;
};

// Throws Error(kInvalidInput) on malformed specs (probabilities not summing
// to 1, empty sequences, dimension mismatches).
void ValidateEventGenerator(const EventGeneratorSpec& spec, int event_dim);

class EventStream {
 public:
  EventStream(const EventGeneratorSpec& spec, std::uint64_t seed);

  EventVector Next();

 private:
  EventVector Draw(const EventGeneratorSpec& spec, std::size_t node);

  EventGeneratorSpec spec_;
  std::mt19937_64 rng_;
  // Per-node cursors, indexed by a pre-order numbering of the spec tree.
  std::vector<std::int64_t> cursor_;
  std::vector<std::int64_t> elapsed_;
  std::vector<int> markov_state_;
};

}  // namespace regret_manager

#endif  // REGRET_MANAGER_EVENTS_H_
