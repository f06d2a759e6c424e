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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ace/baseline.hpp"
#include "ace/core.hpp"
#include "ace/sim/adversary.hpp"
#include "ace/sim/simulator.hpp"
#include "ace/smr.hpp"

namespace ace::harness {

enum class ProtocolChoice { ace, baseline, both };

ProtocolChoice parse_protocol_choice(const std::string& s);
std::vector<Protocol> expand(ProtocolChoice c);

struct DdosSpec {
  sim::TargetRule rule = sim::TargetRule::current_leader;
  PartyId target = 0;
  Duration added = 0;
  Duration added_max = 0;  // 0 = same as added
  Time from = 0;
  Time until = 0;          // 0 = until the horizon
};

struct SpikeSpec {
  double probability = 0.0;
  Duration max = 0;
};

struct AttackSpec {
  std::vector<PartyId> byzantine;
  Behavior behavior;
  Behavior correct_behavior;  // mutation switches for correct parties
  double drop = 0.0;
  std::optional<DdosSpec> ddos;
  std::optional<SpikeSpec> spikes;
  std::vector<sim::CrashEvent> crashes;
};

/// A named measurement interval, e.g. before and during an attack.
struct Window {
  std::string name;
  Time from = 0;
  Time to = 0;
};

enum class Statistic { none, decision_rate, mean_waves, fairness };

std::string to_string(Statistic s);

struct StatsSpec {
  Statistic statistic = Statistic::none;
  std::uint64_t trials = 0;        // waves, runs or slots depending on the statistic
  std::uint64_t rounds_per_run = 0;
  double threshold = 0.0;          // lower bound for rates, upper bound for mean waves
  double tolerance = 0.0;          // fairness: allowed deviation from 1/n
  bool correct_only = false;       // fairness: judge the correct-proposer fraction
};

struct Scenario {
  std::string name;
  Config config;
  ProtocolChoice protocol = ProtocolChoice::ace;
  TimeoutPolicy timeout;
  sim::DelayModel delays;
  AttackSpec attack;
  Time horizon = 60 * kSecond;
  std::uint64_t slots = 0;  // 0 = run to the horizon
  std::size_t value_bytes = 10000;
  std::uint32_t repetitions = 1;
  bool crash_echo = false;
  sim::TraceLevel trace_level = sim::TraceLevel::lifecycle;
  std::vector<Window> windows;
  StatsSpec stats;
};

/// Parses and validates a scenario document. Throws ConfigError with a
/// diagnostic on unknown keys, wrong types or out-of-range values.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path);

/// Full validation of an assembled scenario; parse_scenario calls it.
void validate(const Scenario& s);

}  // namespace ace::harness
