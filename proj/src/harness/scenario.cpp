// Copyright 2026 The ACE Authors
//
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

#include "ace/harness/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace ace::harness {

using nlohmann::json;

ProtocolChoice parse_protocol_choice(const std::string& s) {
  if (s == "ace") return ProtocolChoice::ace;
  if (s == "baseline") return ProtocolChoice::baseline;
  if (s == "both") return ProtocolChoice::both;
  throw ConfigError("protocol must be ace, baseline or both, got '" + s + "'");
}

std::vector<Protocol> expand(ProtocolChoice c) {
  switch (c) {
    case ProtocolChoice::ace: return {Protocol::ace};
    case ProtocolChoice::baseline: return {Protocol::baseline};
    case ProtocolChoice::both: return {Protocol::ace, Protocol::baseline};
  }
  return {};
}

std::string to_string(Statistic s) {
  switch (s) {
    case Statistic::none: return "none";
    case Statistic::decision_rate: return "decision_rate";
    case Statistic::mean_waves: return "mean_waves";
    case Statistic::fairness: return "fairness";
  }
  return "?";
}

namespace {

Statistic parse_statistic(const std::string& s) {
  for (auto st : {Statistic::none, Statistic::decision_rate, Statistic::mean_waves, Statistic::fairness})
    if (to_string(st) == s) return st;
  throw ConfigError("unknown statistic '" + s + "'");
}

sim::TraceLevel parse_trace_level(const std::string& s) {
  if (s == "lifecycle") return sim::TraceLevel::lifecycle;
  if (s == "messages") return sim::TraceLevel::messages;
  if (s == "full") return sim::TraceLevel::full;
  throw ConfigError("trace_level must be lifecycle, messages or full");
}

/// Typed access to one JSON object that rejects keys nobody asked for.
class Obj {
 public:
  Obj(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + ": expected an object");
  }
  ~Obj() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (const auto& [key, value] : j_.items())
      if (!seen_.contains(key)) throw ConfigError(path_ + "." + key + ": unknown key");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key);
  }
  const json& raw(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }
  std::string where(const std::string& key) const { return path_ + "." + key; }

  template <typename T>
  T get(const std::string& key, T fallback) {
    if (!has(key)) return fallback;
    return as<T>(key);
  }
  template <typename T>
  T need(const std::string& key) {
    if (!has(key)) throw ConfigError(where(key) + ": required");
    return as<T>(key);
  }

  /// Milliseconds in the document, microsecond ticks in memory.
  Duration ms(const std::string& key, Duration fallback) {
    if (!has(key)) return fallback;
    const auto& v = raw(key);
    if (!v.is_number()) throw ConfigError(where(key) + ": expected a number of milliseconds");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(where(key) + ": must be finite");
    return static_cast<Duration>(std::llround(x * kMillisecond));
  }

 private:
  template <typename T>
  T as(const std::string& key) {
    const auto& v = raw(key);
    try {
      if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) throw ConfigError(where(key) + ": expected a boolean");
      } else if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) throw ConfigError(where(key) + ": expected an integer");
        if (std::is_unsigned_v<T> && v.get<std::int64_t>() < 0) throw ConfigError(where(key) + ": must be >= 0");
      } else if constexpr (std::is_floating_point_v<T>) {
        if (!v.is_number()) throw ConfigError(where(key) + ": expected a number");
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) throw ConfigError(where(key) + ": expected a string");
      }
      return v.get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(where(key) + ": " + e.what());
    }
  }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

Behavior parse_behavior(const json& j, const std::string& path) {
  Obj o(j, path);
  Behavior b;
  b.active_from = o.ms("active_from_ms", 0);
  b.silent_leader = o.get("silent_leader", false);
  b.equivocate = o.get("equivocate", false);
  b.bogus_shares = o.get("bogus_shares", false);
  b.fresh_proposals = o.get("fresh_proposals", false);
  b.stale_certs = o.get("stale_certs", false);
  b.forge_certs = o.get("forge_certs", false);
  b.invalid_proposals = o.get("invalid_proposals", false);
  b.skip_safe_node = o.get("skip_safe_node", false);
  return b;
}

AttackSpec parse_attack(const json& j) {
  Obj o(j, "attack");
  AttackSpec a;
  if (o.has("byzantine")) {
    const auto& arr = o.raw("byzantine");
    if (!arr.is_array()) throw ConfigError("attack.byzantine: expected an array of party ids");
    for (const auto& p : arr) {
      if (!p.is_number_unsigned()) throw ConfigError("attack.byzantine: expected party ids");
      a.byzantine.push_back(p.get<PartyId>());
    }
  }
  if (o.has("behavior")) a.behavior = parse_behavior(o.raw("behavior"), "attack.behavior");
  if (o.has("correct_behavior"))
    a.correct_behavior = parse_behavior(o.raw("correct_behavior"), "attack.correct_behavior");
  a.drop = o.get("drop", 0.0);
  if (o.has("ddos")) {
    Obj d(o.raw("ddos"), "attack.ddos");
    DdosSpec s;
    s.rule = sim::parse_target_rule(d.get<std::string>("rule", "current_leader"));
    s.target = d.get<PartyId>("target", 0);
    s.added = d.ms("added_ms", 0);
    s.added_max = d.ms("added_max_ms", 0);
    s.from = d.ms("from_ms", 0);
    s.until = d.ms("until_ms", 0);
    a.ddos = s;
  }
  if (o.has("spikes")) {
    Obj s(o.raw("spikes"), "attack.spikes");
    SpikeSpec sp;
    sp.probability = s.get("probability", 0.0);
    sp.max = s.ms("max_ms", 0);
    a.spikes = sp;
  }
  if (o.has("crashes")) {
    const auto& arr = o.raw("crashes");
    if (!arr.is_array()) throw ConfigError("attack.crashes: expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      Obj c(arr[i], "attack.crashes[" + std::to_string(i) + "]");
      a.crashes.push_back(sim::CrashEvent{c.need<PartyId>("party"), c.ms("at_ms", 0)});
    }
  }
  return a;
}

}  // namespace

void validate(const Scenario& s) {
  s.config.validate();
  s.timeout.validate();
  s.delays.validate();
  if (s.horizon <= 0) throw ConfigError("horizon_ms must be positive");
  if (s.repetitions == 0) throw ConfigError("repetitions must be at least 1");
  if (s.value_bytes == 0 || s.value_bytes > s.config.max_payload)
    throw ConfigError("value_bytes must lie in [1, max_payload]");
  if (s.crash_echo && s.config.model != FailureModel::crash)
    throw ConfigError("crash_echo requires the crash failure model");
  const auto& a = s.attack;
  if (a.correct_behavior.any() && !a.correct_behavior.skip_safe_node)
    throw ConfigError("correct_behavior only supports the skip_safe_node mutation");
  if (a.ddos) {
    if (a.ddos->added < 0 || a.ddos->added_max < 0) throw ConfigError("ddos delays must be non-negative");
    if (a.ddos->added_max != 0 && a.ddos->added_max < a.ddos->added)
      throw ConfigError("ddos added_max_ms must be >= added_ms");
    if (a.ddos->rule == sim::TargetRule::fixed && a.ddos->target >= s.config.n)
      throw ConfigError("ddos target out of range");
  }
  if (a.spikes && (a.spikes->probability < 0.0 || a.spikes->probability > 1.0 || a.spikes->max < 0))
    throw ConfigError("spikes need probability in [0, 1] and max_ms >= 0");
  for (const auto& w : s.windows)
    if (w.from < 0 || w.to <= w.from || w.to > s.horizon) throw ConfigError("window '" + w.name + "' is not inside the horizon");

  sim::SimConfig sc;
  sc.config = s.config;
  sc.delays = s.delays;
  sc.byzantine = a.byzantine;
  sc.crashes = a.crashes;
  sc.byzantine_drop = a.drop;
  sc.validate();
}

Scenario parse_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
  }
  Scenario s;
  {
    Obj o(doc, "scenario");
    s.name = o.get<std::string>("name", "unnamed");
    {
      Obj c(o.raw("config"), "config");
      s.config.n = c.need<std::uint32_t>("n");
      s.config.f = c.need<std::uint32_t>("f");
      s.config.model = parse_failure_model(c.get<std::string>("model", "byzantine"));
      s.config.seed = c.get<std::uint64_t>("seed", 1);
      s.config.max_payload = c.get<std::size_t>("max_payload", kDefaultMaxPayload);
    }
    s.protocol = parse_protocol_choice(o.get<std::string>("protocol", "ace"));
    if (o.has("timeout")) {
      Obj t(o.raw("timeout"), "timeout");
      s.timeout.kind = parse_timeout_kind(t.get<std::string>("kind", "fixed"));
      s.timeout.base = t.ms("base_ms", s.timeout.base);
      s.timeout.up = t.get("up", s.timeout.up);
      s.timeout.down = t.get("down", s.timeout.down);
      s.timeout.floor = t.ms("floor_ms", s.timeout.floor);
      s.timeout.ceiling = t.ms("ceiling_ms", s.timeout.ceiling);
    }
    if (o.has("delays")) {
      Obj d(o.raw("delays"), "delays");
      s.delays.base = d.ms("base_ms", s.delays.base);
      s.delays.jitter = d.ms("jitter_ms", s.delays.jitter);
      s.delays.processing = d.ms("processing_ms", s.delays.processing);
      if (d.has("phases")) {
        const auto& arr = d.raw("phases");
        if (!arr.is_array()) throw ConfigError("delays.phases: expected an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
          Obj p(arr[i], "delays.phases[" + std::to_string(i) + "]");
          s.delays.phases.push_back(sim::DelayPhase{p.ms("start_ms", 0), p.ms("base_ms", 0)});
        }
      }
    }
    if (o.has("attack")) s.attack = parse_attack(o.raw("attack"));
    s.horizon = o.ms("horizon_ms", s.horizon);
    s.slots = o.get<std::uint64_t>("slots", 0);
    s.value_bytes = o.get<std::size_t>("value_bytes", s.value_bytes);
    s.repetitions = o.get<std::uint32_t>("repetitions", 1);
    s.crash_echo = o.get("crash_echo", false);
    s.trace_level = parse_trace_level(o.get<std::string>("trace_level", "lifecycle"));
    if (o.has("windows")) {
      const auto& arr = o.raw("windows");
      if (!arr.is_array()) throw ConfigError("windows: expected an array");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        Obj w(arr[i], "windows[" + std::to_string(i) + "]");
        s.windows.push_back(Window{w.need<std::string>("name"), w.ms("from_ms", 0), w.ms("to_ms", 0)});
      }
    }
    if (o.has("stats")) {
      Obj st(o.raw("stats"), "stats");
      s.stats.statistic = parse_statistic(st.need<std::string>("statistic"));
      s.stats.trials = st.get<std::uint64_t>("trials", 0);
      s.stats.rounds_per_run = st.get<std::uint64_t>("rounds_per_run", 0);
      s.stats.threshold = st.get("threshold", 0.0);
      s.stats.tolerance = st.get("tolerance", 0.0);
      s.stats.correct_only = st.get("correct_only", false);
    }
  }
  validate(s);
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read scenario file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

}  // namespace ace::harness
