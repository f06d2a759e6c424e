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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ace/harness/runner.hpp"
#include "ace/harness/scenario.hpp"

namespace ace::harness {

enum ExitCode : int { kExitOk = 0, kExitViolation = 1, kExitConfig = 2, kExitInsufficient = 3 };

/// Runs `count` independent jobs on a worker pool; job i writes slot i of
/// its output, so aggregation order never depends on scheduling.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& job);

// ---- run / compare --------------------------------------------------------

struct WindowStats {
  std::string name;
  double throughput = 0.0;  // bytes per simulated second
  double latency = 0.0;     // mean slot latency in ticks
};

struct ProtocolSummary {
  Protocol protocol = Protocol::ace;
  std::vector<RunResult> runs;
  double throughput_mean = 0.0;
  double throughput_stddev = 0.0;
  double latency_mean = 0.0;
  double latency_stddev = 0.0;
  std::vector<WindowStats> windows;  // means over repetitions
  std::size_t violations = 0;
};

struct ScenarioRun {
  std::uint64_t seed = 0;
  std::uint32_t repetitions = 1;
  ProtocolChoice protocol = ProtocolChoice::ace;
  bool keep_traces = false;
  unsigned threads = 0;  // 0 = hardware concurrency
};

std::vector<ProtocolSummary> run_scenario(const Scenario& s, const ScenarioRun& how);

/// Writes summary.csv, runs.jsonl and, for runs holding a trace,
/// trace-<protocol>-<repetition>.ndjson into `dir`.
void write_reports(const std::string& dir, const Scenario& s, const std::vector<ProtocolSummary>& summaries);

// ---- fuzz -----------------------------------------------------------------

struct FuzzOptions {
  std::uint64_t runs = 1000;
  std::uint64_t seed = 1;
  bool mutant = false;           // correct parties skip the voting rule
  std::optional<Scenario> base;  // n, f and slot count; defaults to n=4 f=1
  std::string out_dir;           // failing trace goes here when set
  unsigned threads = 0;
};

struct FuzzFinding {
  std::uint64_t run = 0;
  std::uint64_t seed = 0;
  std::string protocol;
  Violation violation;
};

struct FuzzOutcome {
  std::uint64_t runs = 0;
  std::uint64_t failed_runs = 0;
  std::vector<FuzzFinding> findings;  // first violation of each failing run
  std::uint64_t waves_checked = 0;
  std::uint64_t waves_complete = 0;
  std::uint64_t halting_slots = 0;
  std::uint64_t barriers_checked = 0;
  std::string trace_path;
};

/// The randomized scenario used for fuzz run `run`.
Scenario fuzz_scenario(const FuzzOptions& opts, std::uint64_t run, Protocol& protocol, std::uint64_t& seed);
FuzzOutcome fuzz(const FuzzOptions& opts);

// ---- stats ----------------------------------------------------------------

struct StatsOutcome {
  Statistic statistic = Statistic::none;
  std::uint64_t trials = 0;
  std::uint64_t required = 0;   // minimum trials for the configured margin
  double estimate = 0.0;
  double stderr_ = 0.0;
  double bound = 0.0;           // the analytic value the estimate is compared with
  double threshold = 0.0;
  bool sufficient = false;
  bool pass = false;
  std::vector<double> fractions;  // fairness: per-party decided-proposal fraction
  std::uint64_t violations = 0;
  std::uint64_t waves_checked = 0;
  std::uint64_t waves_complete = 0;
};

/// Minimum trials so that two standard errors fit inside the margin
/// between the analytic bound and the acceptance threshold.
std::uint64_t required_trials(double variance, double margin);

StatsOutcome compute_stats(const Scenario& s, std::uint64_t seed, std::uint64_t trials_override = 0,
                           unsigned threads = 0);

// ---- CLI entry points ------------------------------------------------------

struct CommonFlags {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> protocol;
  std::string out_dir;
  bool trace = false;
  std::optional<std::uint32_t> repetitions;
  std::uint64_t runs = 1000;
  std::uint64_t trials = 0;
  bool mutant = false;
  unsigned threads = 0;
};

int cmd_run(const CommonFlags& flags, std::ostream& out, std::ostream& err);
int cmd_compare(const CommonFlags& flags, std::ostream& out, std::ostream& err);
int cmd_fuzz(const CommonFlags& flags, std::ostream& out, std::ostream& err);
int cmd_stats(const CommonFlags& flags, std::ostream& out, std::ostream& err);

}  // namespace ace::harness
