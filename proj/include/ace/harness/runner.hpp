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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ace/harness/checker.hpp"
#include "ace/harness/scenario.hpp"
#include "ace/sim/metrics.hpp"
#include "ace/sim/simulator.hpp"

namespace ace::harness {

struct RunOptions {
  std::optional<sim::TraceLevel> trace_level;  // overrides the scenario
  bool keep_trace = false;
  bool expect_termination = true;              // only meaningful with a slot count
};

struct RunResult {
  std::string scenario;
  Protocol protocol = Protocol::ace;
  std::uint64_t seed = 0;
  sim::RunStatus status = sim::RunStatus::horizon;
  Time end_time = 0;
  std::uint64_t events = 0;
  sim::Metrics metrics;
  CheckReport check;
  std::uint64_t trace_hash = 0;
  std::optional<sim::Trace> trace;
  std::vector<std::size_t> outputs_per_party;
};

/// Seed of repetition `rep` of a scenario run with master seed `seed`.
std::uint64_t repetition_seed(std::uint64_t seed, std::uint32_t rep);

/// Simulation settings shared by every run of a scenario.
sim::SimConfig sim_config(const Scenario& s, std::uint64_t seed);
std::unique_ptr<sim::Adversary> make_adversary(const Scenario& s);

/// Replicated-log run of a scenario.
RunResult run_smr(const Scenario& s, Protocol protocol, std::uint64_t seed, const RunOptions& opts = {});

struct SingleShotResult {
  std::uint64_t seed = 0;
  CheckReport check;
  /// Highest decision round over correct parties; 0 if one never decided.
  std::uint64_t universal_round = 0;
  /// Per finished round: did the elected (or view) instance yield a value.
  std::map<std::uint64_t, bool> round_outcomes;
  std::vector<std::optional<DecisionRecord>> decisions;
  std::uint64_t trace_hash = 0;
};

/// Single agreement instance. With `stop_when_decided` the run ends once
/// every correct party decided; otherwise it runs `round_limit` rounds.
SingleShotResult run_single_shot(const Scenario& s, Protocol protocol, std::uint64_t seed, std::uint64_t round_limit,
                                 bool stop_when_decided, const RunOptions& opts = {});

}  // namespace ace::harness
