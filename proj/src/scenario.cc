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

#include "regret_manager/scenario.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "regret_manager/error.h"

namespace regret_manager {
namespace {

using nlohmann::json;

[[noreturn]] void SchemaError(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kSchema, path + ": " + what);
}

std::string At(const std::string& path, const std::string& key) {
  return path + "." + key;
}

std::string At(const std::string& path, std::size_t index) {
  return path + "[" + std::to_string(index) + "]";
}

void RequireObject(const json& j, const std::string& path) {
  if (!j.is_object()) SchemaError(path, "expected an object");
}

void AllowKeys(const json& j, const std::string& path,
               std::initializer_list<const char*> keys) {
  RequireObject(j, path);
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) SchemaError(At(path, key), "unknown field");
  }
}

const json& Field(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) SchemaError(At(path, key), "missing required field");
  return j.at(key);
}

double AsNumber(const json& j, const std::string& path) {
  if (!j.is_number()) SchemaError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) SchemaError(path, "expected a finite number");
  return v;
}

std::int64_t AsInteger(const json& j, const std::string& path) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  const double v = AsNumber(j, path);
  if (v != std::floor(v) || std::abs(v) > 9.0e15) SchemaError(path, "expected an integer");
  return static_cast<std::int64_t>(v);
}

std::uint64_t AsUnsigned(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  const std::int64_t v = AsInteger(j, path);
  if (v < 0) SchemaError(path, "expected a non-negative integer");
  return static_cast<std::uint64_t>(v);
}

std::string AsString(const json& j, const std::string& path) {
  if (!j.is_string()) SchemaError(path, "expected a string");
  return j.get<std::string>();
}

bool AsBool(const json& j, const std::string& path) {
  if (!j.is_boolean()) SchemaError(path, "expected a boolean");
  return j.get<bool>();
}

const json& AsArray(const json& j, const std::string& path) {
  if (!j.is_array()) SchemaError(path, "expected an array");
  return j;
}

std::vector<double> AsNumbers(const json& j, const std::string& path) {
  std::vector<double> out;
  const auto& arr = AsArray(j, path);
  for (std::size_t k = 0; k < arr.size(); ++k) out.push_back(AsNumber(arr[k], At(path, k)));
  return out;
}

std::vector<int> AsInts(const json& j, const std::string& path) {
  std::vector<int> out;
  const auto& arr = AsArray(j, path);
  for (std::size_t k = 0; k < arr.size(); ++k) {
    out.push_back(static_cast<int>(AsInteger(arr[k], At(path, k))));
  }
  return out;
}

std::vector<std::vector<int>> AsIntLists(const json& j, const std::string& path) {
  std::vector<std::vector<int>> out;
  const auto& arr = AsArray(j, path);
  for (std::size_t k = 0; k < arr.size(); ++k) out.push_back(AsInts(arr[k], At(path, k)));
  return out;
}

std::vector<std::vector<double>> AsNumberLists(const json& j, const std::string& path) {
  std::vector<std::vector<double>> out;
  const auto& arr = AsArray(j, path);
  for (std::size_t k = 0; k < arr.size(); ++k) out.push_back(AsNumbers(arr[k], At(path, k)));
  return out;
}

// Integral values within the exact range are written as JSON integers so a
// hand-written "V": 1000 survives a round trip unchanged.
json Num(double v) {
  if (v == std::floor(v) && std::abs(v) < 9.0e15) {
    return json(static_cast<std::int64_t>(v));
  }
  return json(v);
}

json Nums(const std::vector<double>& values) {
  json arr = json::array();
  for (double v : values) arr.push_back(Num(v));
  return arr;
}

json NumLists(const std::vector<std::vector<double>>& values) {
  json arr = json::array();
  for (const auto& v : values) arr.push_back(Nums(v));
  return arr;
}

// ---- game ----

GameSpec ParseGame(const json& j, const std::string& path,
                   std::optional<ExampleRef>& example) {
  RequireObject(j, path);
  if (j.contains("example")) {
    AllowKeys(j, path, {"example", "share"});
    const std::string id = AsString(j.at("example"), At(path, "example"));
    const auto parsed = ParseExampleId(id);
    if (!parsed) SchemaError(At(path, "example"), "unknown example id '" + id + "'");
    const bool share = j.contains("share") && AsBool(j.at("share"), At(path, "share"));
    example = ExampleRef{*parsed, share};
    return MakeExample(*parsed, share).game;
  }
  AllowKeys(j, path, {"num_players", "event_dim", "observation_sets", "action_sets",
                      "utility_caps", "utility"});
  GameSpec g;
  g.num_players = static_cast<int>(AsInteger(Field(j, path, "num_players"), At(path, "num_players")));
  g.event_dim = static_cast<int>(AsInteger(Field(j, path, "event_dim"), At(path, "event_dim")));
  g.observation_sets = AsIntLists(Field(j, path, "observation_sets"), At(path, "observation_sets"));
  g.action_sets = AsIntLists(Field(j, path, "action_sets"), At(path, "action_sets"));
  g.utility_caps = AsNumbers(Field(j, path, "utility_caps"), At(path, "utility_caps"));
  const std::string upath = At(path, "utility");
  const json& u = Field(j, path, "utility");
  AllowKeys(u, upath, {"name", "params"});
  g.utility_name = AsString(Field(u, upath, "name"), At(upath, "name"));
  if (u.contains("params")) {
    RequireObject(u.at("params"), At(upath, "params"));
    g.utility_params = u.at("params");
  }
  if (!HasUtility(g.utility_name)) {
    SchemaError(At(upath, "name"), "unknown utility function '" + g.utility_name + "'");
  }
  if (g.num_players <= 0 || g.event_dim <= 0) {
    SchemaError(path, "num_players and event_dim must be positive");
  }
  if (g.action_sets.size() != static_cast<size_t>(g.num_players) ||
      g.observation_sets.size() != static_cast<size_t>(g.num_players) ||
      g.utility_caps.size() != static_cast<size_t>(g.num_players)) {
    SchemaError(path, "observation_sets, action_sets and utility_caps need N entries");
  }
  try {
    BindUtility(g);
  } catch (const Error& e) {
    SchemaError(At(upath, "params"), e.what());
  }
  return g;
}

json GameToJson(const GameSpec& g, const std::optional<ExampleRef>& example) {
  if (example) {
    json j = {{"example", std::string(ExampleName(example->id))}};
    if (example->share) j["share"] = true;
    return j;
  }
  json obs = json::array(), acts = json::array();
  for (const auto& s : g.observation_sets) obs.push_back(s);
  for (const auto& a : g.action_sets) acts.push_back(a);
  json u = {{"name", g.utility_name}};
  if (!g.utility_params.empty()) u["params"] = g.utility_params;
  return {{"num_players", g.num_players},
          {"event_dim", g.event_dim},
          {"observation_sets", obs},
          {"action_sets", acts},
          {"utility_caps", Nums(g.utility_caps)},
          {"utility", u}};
}

// ---- generator ----

EventGeneratorSpec ParseGenerator(const json& j, const std::string& path) {
  RequireObject(j, path);
  EventGeneratorSpec g;
  const std::string kind = AsString(Field(j, path, "kind"), At(path, "kind"));
  if (kind == "iid") {
    g.kind = EventGeneratorSpec::Kind::kIid;
    AllowKeys(j, path, {"kind", "coordinates", "joint"});
    if (j.contains("coordinates") == j.contains("joint")) {
      SchemaError(path, "iid generator needs exactly one of 'coordinates' or 'joint'");
    }
    if (j.contains("coordinates")) {
      const std::string cpath = At(path, "coordinates");
      const auto& arr = AsArray(j.at("coordinates"), cpath);
      for (std::size_t c = 0; c < arr.size(); ++c) {
        std::vector<WeightedValue> table;
        const auto& entries = AsArray(arr[c], At(cpath, c));
        for (std::size_t k = 0; k < entries.size(); ++k) {
          const std::string epath = At(At(cpath, c), k);
          AllowKeys(entries[k], epath, {"value", "probability"});
          table.push_back({AsNumber(Field(entries[k], epath, "value"), At(epath, "value")),
                           AsNumber(Field(entries[k], epath, "probability"),
                                    At(epath, "probability"))});
        }
        g.coordinates.push_back(std::move(table));
      }
    } else {
      const std::string jpath = At(path, "joint");
      const auto& arr = AsArray(j.at("joint"), jpath);
      for (std::size_t k = 0; k < arr.size(); ++k) {
        const std::string epath = At(jpath, k);
        AllowKeys(arr[k], epath, {"values", "probability"});
        g.joint.push_back({AsNumbers(Field(arr[k], epath, "values"), At(epath, "values")),
                           AsNumber(Field(arr[k], epath, "probability"),
                                    At(epath, "probability"))});
      }
    }
  } else if (kind == "markov") {
    g.kind = EventGeneratorSpec::Kind::kMarkov;
    AllowKeys(j, path, {"kind", "transition", "state_events", "initial_state"});
    g.transition = AsNumberLists(Field(j, path, "transition"), At(path, "transition"));
    g.state_events = AsNumberLists(Field(j, path, "state_events"), At(path, "state_events"));
    if (j.contains("initial_state")) {
      g.initial_state = static_cast<int>(AsInteger(j.at("initial_state"), At(path, "initial_state")));
    }
  } else if (kind == "piecewise") {
    g.kind = EventGeneratorSpec::Kind::kPiecewise;
    AllowKeys(j, path, {"kind", "segments"});
    const std::string spath = At(path, "segments");
    const auto& arr = AsArray(Field(j, path, "segments"), spath);
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const std::string epath = At(spath, k);
      AllowKeys(arr[k], epath, {"duration", "generator"});
      g.durations.push_back(AsInteger(Field(arr[k], epath, "duration"), At(epath, "duration")));
      g.segments.push_back(ParseGenerator(Field(arr[k], epath, "generator"), At(epath, "generator")));
    }
  } else if (kind == "scripted") {
    g.kind = EventGeneratorSpec::Kind::kScripted;
    AllowKeys(j, path, {"kind", "sequence"});
    g.sequence = AsNumberLists(Field(j, path, "sequence"), At(path, "sequence"));
  } else {
    SchemaError(At(path, "kind"), "unknown generator kind '" + kind + "'");
  }
  return g;
}

json GeneratorToJson(const EventGeneratorSpec& g) {
  using Kind = EventGeneratorSpec::Kind;
  switch (g.kind) {
    case Kind::kIid: {
      json j = {{"kind", "iid"}};
      if (!g.coordinates.empty()) {
        json coords = json::array();
        for (const auto& table : g.coordinates) {
          json t = json::array();
          for (const auto& v : table) t.push_back({{"value", Num(v.value)}, {"probability", Num(v.probability)}});
          coords.push_back(t);
        }
        j["coordinates"] = coords;
      } else {
        json joint = json::array();
        for (const auto& e : g.joint) joint.push_back({{"values", Nums(e.values)}, {"probability", Num(e.probability)}});
        j["joint"] = joint;
      }
      return j;
    }
    case Kind::kMarkov:
      return {{"kind", "markov"},
              {"transition", NumLists(g.transition)},
              {"state_events", NumLists(g.state_events)},
              {"initial_state", g.initial_state}};
    case Kind::kPiecewise: {
      json segs = json::array();
      for (size_t k = 0; k < g.segments.size(); ++k) {
        segs.push_back({{"duration", g.durations[k]}, {"generator", GeneratorToJson(g.segments[k])}});
      }
      return {{"kind", "piecewise"}, {"segments", segs}};
    }
    case Kind::kScripted:
      return {{"kind", "scripted"}, {"sequence", NumLists(g.sequence)}};
  }
  return json::object();
}

// ---- baselines ----

BaselinePolicySpec ParseBaseline(const json& j, const std::string& path) {
  RequireObject(j, path);
  BaselinePolicySpec p;
  const std::string kind = AsString(Field(j, path, "kind"), At(path, "kind"));
  if (kind == "constant") {
    p.kind = BaselinePolicySpec::Kind::kConstant;
    AllowKeys(j, path, {"kind", "action"});
    p.action = static_cast<int>(AsInteger(Field(j, path, "action"), At(path, "action")));
  } else if (kind == "scripted") {
    p.kind = BaselinePolicySpec::Kind::kScripted;
    AllowKeys(j, path, {"kind", "sequence"});
    p.sequence = AsInts(Field(j, path, "sequence"), At(path, "sequence"));
  } else if (kind == "greedy_observed") {
    p.kind = BaselinePolicySpec::Kind::kGreedyObserved;
    AllowKeys(j, path, {"kind", "assumed_others", "assumed_events"});
    p.assumed_others = AsInts(Field(j, path, "assumed_others"), At(path, "assumed_others"));
    p.assumed_events = AsNumbers(Field(j, path, "assumed_events"), At(path, "assumed_events"));
  } else if (kind == "random") {
    p.kind = BaselinePolicySpec::Kind::kRandom;
    AllowKeys(j, path, {"kind"});
  } else {
    SchemaError(At(path, "kind"), "unknown baseline kind '" + kind + "'");
  }
  return p;
}

json BaselineToJson(const BaselinePolicySpec& p) {
  using Kind = BaselinePolicySpec::Kind;
  switch (p.kind) {
    case Kind::kConstant:
      return {{"kind", "constant"}, {"action", p.action}};
    case Kind::kScripted:
      return {{"kind", "scripted"}, {"sequence", p.sequence}};
    case Kind::kGreedyObserved:
      return {{"kind", "greedy_observed"},
              {"assumed_others", p.assumed_others},
              {"assumed_events", Nums(p.assumed_events)}};
    case Kind::kRandom:
      return {{"kind", "random"}};
  }
  return json::object();
}

// ---- manager ----

ManagerConfig ParseManager(const json& j, const std::string& path,
                           const std::vector<double>& caps) {
  AllowKeys(j, path, {"variant", "V", "theta", "phi"});
  ManagerConfig m;
  const std::string name = AsString(Field(j, path, "variant"), At(path, "variant"));
  const auto variant = ParseVariant(name);
  if (!variant) SchemaError(At(path, "variant"), "unknown variant '" + name + "'");
  m.variant = *variant;
  if (j.contains("V")) m.v = AsNumber(j.at("V"), At(path, "V"));
  if (j.contains("theta")) m.theta = AsNumbers(j.at("theta"), At(path, "theta"));
  if (j.contains("phi")) m.phi = PhiFromJson(j.at("phi"), caps, At(path, "phi"));
  return m;
}

json ManagerToJson(const ManagerConfig& m) {
  json j = {{"variant", std::string(VariantName(m.variant))}, {"V", Num(m.v)}};
  if (!m.theta.empty()) j["theta"] = Nums(m.theta);
  if (m.phi) j["phi"] = PhiToJson(*m.phi);
  return j;
}

std::uint64_t Fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

nlohmann::json PhiToJson(const PhiSpec& phi) {
  json params = json::object();
  if (phi.kind != PhiSpec::Kind::kMinUtility) params["theta"] = Nums(phi.theta);
  if (phi.kind == PhiSpec::Kind::kLogOffset) params["delta"] = Num(phi.delta);
  return {{"kind", std::string(PhiKindName(phi.kind))}, {"params", params}};
}

PhiSpec PhiFromJson(const nlohmann::json& j, const std::vector<double>& caps,
                    const std::string& path) {
  AllowKeys(j, path, {"kind", "params"});
  const std::string kind = AsString(Field(j, path, "kind"), At(path, "kind"));
  const std::string ppath = At(path, "params");
  const json params = j.contains("params") ? j.at("params") : json::object();
  if (kind == "weighted_sum") {
    AllowKeys(params, ppath, {"theta"});
    return MakeWeightedSumPhi(AsNumbers(Field(params, ppath, "theta"), At(ppath, "theta")), caps);
  }
  if (kind == "log_offset") {
    AllowKeys(params, ppath, {"theta", "delta"});
    const double delta = params.contains("delta") ? AsNumber(params.at("delta"), At(ppath, "delta")) : 1.0;
    return MakeLogOffsetPhi(AsNumbers(Field(params, ppath, "theta"), At(ppath, "theta")), delta, caps);
  }
  if (kind == "min_utility") {
    AllowKeys(params, ppath, {});
    return MakeMinUtilityPhi(caps);
  }
  SchemaError(At(path, "kind"), "unknown phi kind '" + kind + "'");
}

Scenario ParseScenario(const nlohmann::json& doc) {
  const std::string root = "$";
  AllowKeys(doc, root, {"name", "game", "generator", "baselines", "manager", "horizon",
                        "seed", "human_player", "outputs"});
  Scenario s;
  if (doc.contains("name")) s.name = AsString(doc.at("name"), At(root, "name"));
  s.game = ParseGame(Field(doc, root, "game"), At(root, "game"), s.example);

  std::optional<ExampleScenario> defaults;
  if (s.example) defaults = MakeExample(s.example->id, s.example->share);
  if (doc.contains("generator")) {
    s.events = ParseGenerator(doc.at("generator"), At(root, "generator"));
  } else if (defaults) {
    s.events = defaults->events;
  } else {
    SchemaError(At(root, "generator"), "missing required field");
  }
  if (doc.contains("baselines")) {
    const std::string bpath = At(root, "baselines");
    const auto& arr = AsArray(doc.at("baselines"), bpath);
    for (std::size_t k = 0; k < arr.size(); ++k) s.baselines.push_back(ParseBaseline(arr[k], At(bpath, k)));
  } else if (defaults) {
    s.baselines = defaults->baselines;
  } else {
    SchemaError(At(root, "baselines"), "missing required field");
  }
  s.manager = ParseManager(Field(doc, root, "manager"), At(root, "manager"), s.game.utility_caps);
  s.horizon = AsInteger(Field(doc, root, "horizon"), At(root, "horizon"));
  if (s.horizon < 0) SchemaError(At(root, "horizon"), "must be >= 0");
  s.seed = doc.contains("seed") ? AsUnsigned(doc.at("seed"), At(root, "seed")) : 0;
  if (doc.contains("human_player")) {
    s.human_player = static_cast<int>(AsInteger(doc.at("human_player"), At(root, "human_player"))) - 1;
  }
  if (doc.contains("outputs")) {
    const std::string opath = At(root, "outputs");
    AllowKeys(doc.at("outputs"), opath, {"trace", "summary"});
    const json& o = doc.at("outputs");
    if (o.contains("trace")) s.outputs.trace = AsString(o.at("trace"), At(opath, "trace"));
    if (o.contains("summary")) s.outputs.summary = AsString(o.at("summary"), At(opath, "summary"));
  }
  ValidateScenario(s);
  return s;
}

Scenario LoadScenarioFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kSchema, path + ": cannot open scenario file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSchema, path + ": " + e.what());
  }
  return ParseScenario(doc);
}

nlohmann::json ScenarioToJson(const Scenario& s) {
  json j = json::object();
  if (!s.name.empty()) j["name"] = s.name;
  j["game"] = GameToJson(s.game, s.example);
  std::optional<ExampleScenario> defaults;
  if (s.example) defaults = MakeExample(s.example->id, s.example->share);
  if (!defaults || !(defaults->events == s.events)) j["generator"] = GeneratorToJson(s.events);
  if (!defaults || defaults->baselines != s.baselines) {
    json arr = json::array();
    for (const auto& b : s.baselines) arr.push_back(BaselineToJson(b));
    j["baselines"] = arr;
  }
  j["manager"] = ManagerToJson(s.manager);
  j["horizon"] = s.horizon;
  j["seed"] = s.seed;
  if (s.human_player) j["human_player"] = *s.human_player + 1;
  if (!s.outputs.trace.empty() || !s.outputs.summary.empty()) {
    json o = json::object();
    if (!s.outputs.trace.empty()) o["trace"] = s.outputs.trace;
    if (!s.outputs.summary.empty()) o["summary"] = s.outputs.summary;
    j["outputs"] = o;
  }
  return j;
}

std::string CanonicalScenarioText(const Scenario& scenario) {
  return ScenarioToJson(scenario).dump(2) + "\n";
}

std::string ScenarioFingerprint(const Scenario& scenario) {
  json j = ScenarioToJson(scenario);
  j.erase("outputs");
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(Fnv1a(j.dump())));
  return buf;
}

Scenario ExampleScenarioFor(ExampleId id, bool share, ManagerConfig manager,
                            std::int64_t horizon, std::uint64_t seed) {
  ExampleScenario ex = MakeExample(id, share);
  Scenario s;
  s.name = std::string(ExampleName(id)) + (share ? "_share" : "_noshare");
  s.example = ExampleRef{id, share};
  s.game = std::move(ex.game);
  s.events = std::move(ex.events);
  s.baselines = std::move(ex.baselines);
  s.manager = std::move(manager);
  s.horizon = horizon;
  s.seed = seed;
  return s;
}

}  // namespace regret_manager
