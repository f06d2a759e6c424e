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

#include <cstdlib>
#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "ace/core.hpp"
#include "ace/harness/commands.hpp"

namespace {

using ace::harness::CommonFlags;

struct Parsed {
  CommonFlags flags;
  std::uint64_t seed = 0;
  std::string protocol;
  std::uint32_t repetitions = 0;
};

void add_common(CLI::App* cmd, Parsed& p, bool needs_scenario) {
  auto* opt = cmd->add_option("--scenario", p.flags.scenario, "scenario file (JSON)");
  if (needs_scenario) opt->required();
  cmd->add_option("--seed", p.seed, "master seed; defaults to $ACE_SEED, then the scenario seed");
  cmd->add_option("--protocol", p.protocol, "ace, baseline or both")
      ->check(CLI::IsMember({"ace", "baseline", "both"}));
  cmd->add_option("--out", p.flags.out_dir, "directory for CSV/JSON reports and traces");
  cmd->add_flag("--trace", p.flags.trace, "export the canonical NDJSON trace of every run");
  cmd->add_option("--repetitions", p.repetitions, "independent runs per protocol")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", p.flags.threads, "worker threads (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asynchronous consensus simulator: runs, fuzzes and measures leader-based agreement"};
  app.require_subcommand(1);
  Parsed p;
  auto* run = app.add_subcommand("run", "simulate a scenario and report throughput and latency");
  auto* fuzz = app.add_subcommand("fuzz", "randomized adversarial runs with invariant checking");
  auto* stats = app.add_subcommand("stats", "estimate the statistic a scenario designates");
  auto* compare = app.add_subcommand("compare", "run both protocols on a scenario side by side");
  add_common(run, p, true);
  add_common(fuzz, p, false);
  add_common(stats, p, true);
  add_common(compare, p, true);
  fuzz->add_option("--runs", p.flags.runs, "number of randomized runs")->check(CLI::NonNegativeNumber);
  fuzz->add_flag("--mutant", p.flags.mutant, "let correct parties skip the voting rule; expects findings");
  stats->add_option("--trials", p.flags.trials, "override the scenario trial count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ace::harness::kExitOk : ace::harness::kExitConfig;
  }

  CLI::App* used = app.get_subcommands().front();
  if (used->count("--seed")) {
    p.flags.seed = p.seed;
  } else if (const char* env = std::getenv("ACE_SEED"); env && *env) {
    try {
      std::size_t end = 0;
      p.flags.seed = std::stoull(env, &end, 0);
      if (env[end] != '\0') throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      std::cerr << "error: ACE_SEED is not an unsigned integer: " << env << "\n";
      return ace::harness::kExitConfig;
    }
  }
  if (used->count("--protocol")) p.flags.protocol = p.protocol;
  if (used->count("--repetitions")) p.flags.repetitions = p.repetitions;

  try {
    if (used == run) return ace::harness::cmd_run(p.flags, std::cout, std::cerr);
    if (used == fuzz) return ace::harness::cmd_fuzz(p.flags, std::cout, std::cerr);
    if (used == stats) return ace::harness::cmd_stats(p.flags, std::cout, std::cerr);
    return ace::harness::cmd_compare(p.flags, std::cout, std::cerr);
  } catch (const ace::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return ace::harness::kExitConfig;
  }
}
