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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ace/harness/commands.hpp"

namespace ace::harness {
namespace {

TEST(Scenario, ParsesFullDocument) {
  const auto s = parse_scenario(R"({"name":"x","config":{"n":7,"f":2,"model":"byzantine","seed":9},
    "protocol":"both","timeout":{"kind":"adaptive","base_ms":100,"floor_ms":10,"ceiling_ms":1000},
    "delays":{"base_ms":2,"jitter_ms":1,"processing_ms":3,"phases":[{"start_ms":10,"base_ms":4}]},
    "attack":{"byzantine":[5,6],"behavior":{"silent_leader":true},"ddos":{"rule":"fixed","target":1,"added_ms":50}},
    "horizon_ms":5000,"slots":4,"repetitions":2,"windows":[{"name":"w","from_ms":0,"to_ms":1000}]})");
  EXPECT_EQ(s.config.n, 7u);
  EXPECT_EQ(s.protocol, ProtocolChoice::both);
  EXPECT_EQ(s.timeout.kind, TimeoutKind::adaptive);
  EXPECT_EQ(s.delays.phases.at(0).start, 10 * kMillisecond);
  EXPECT_EQ(s.attack.byzantine.size(), 2u);
  EXPECT_EQ(s.attack.ddos->target, 1u);
  EXPECT_EQ(s.horizon, 5 * kSecond);
  EXPECT_EQ(s.windows.at(0).to, kSecond);
}

TEST(Scenario, RejectsBadDocuments) {
  const char* bad[] = {
      R"({"config":{"n":4,"f":1},"bogus":1})",                                // unknown key
      R"({"config":{"n":4,"f":2}})",                                          // n < 3f+1
      R"({"config":{"f":1}})",                                                // missing n
      R"({"config":{"n":"four","f":1}})",                                     // wrong type
      R"({"config":{"n":4,"f":1},"protocol":"raft"})",                        // unknown protocol
      R"({"config":{"n":4,"f":1},"attack":{"byzantine":[0,1]}})",             // more than f faulty
      R"({"config":{"n":4,"f":1},"attack":{"byzantine":[9]}})",               // party out of range
      R"({"config":{"n":4,"f":1},"attack":{"behavior":{"loud":true}}})",      // unknown behavior
      R"({"config":{"n":4,"f":1},"windows":[{"name":"w","from_ms":5,"to_ms":1}]})",
      R"({"config":{"n":4,"f":1},"timeout":{"kind":"fixed","base_ms":0}})",
      R"({"config":{"n":4,"f":1},"stats":{"statistic":"median"}})",
      R"([1,2])",
      R"({"config":)",
  };
  for (const char* doc : bad) EXPECT_THROW(parse_scenario(doc), ConfigError) << doc;
}

TEST(Scenario, ShippedCatalogLoads) {
  for (const auto& entry : std::filesystem::directory_iterator(ACE_SCENARIO_DIR))
    EXPECT_NO_THROW(load_scenario(entry.path().string())) << entry.path();
  EXPECT_THROW(load_scenario("/nonexistent/scenario.json"), ConfigError);
}

TEST(Stats, RequiredTrialsTwoSigmaRule) {
  EXPECT_EQ(required_trials(0.25, 0.05), 400u);
  EXPECT_EQ(required_trials(2.0, 0.4), 50u);
  EXPECT_EQ(required_trials(0.1875, 0.08), 118u);
  EXPECT_EQ(required_trials(0.25, 0.0), std::numeric_limits<std::uint64_t>::max());
}

TEST(Commands, ParallelForCoversEveryIndexOnce) {
  std::vector<int> hits(100, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_for(3, 2, [](std::size_t i) {
                 if (i == 1) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}

std::string scenario_path(const std::string& name) { return std::string(ACE_SCENARIO_DIR) + "/" + name + ".json"; }

TEST(Commands, StatsWithTooFewTrialsIsInsufficient) {
  CommonFlags f;
  f.scenario = scenario_path("fairness-sync");
  f.trials = 10;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_stats(f, out, err), kExitInsufficient);
}

TEST(Commands, StatsWithoutStatisticIsConfigError) {
  CommonFlags f;
  f.scenario = scenario_path("optimistic");
  std::ostringstream out, err;
  EXPECT_THROW(cmd_stats(f, out, err), ConfigError);
}

TEST(Commands, ZeroFuzzRunsPass) {
  CommonFlags f;
  f.runs = 0;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_fuzz(f, out, err), kExitOk);
}

TEST(Commands, MutantIsCaught) {
  FuzzOptions o;
  o.runs = 5;
  o.mutant = true;
  const auto r = fuzz(o);
  EXPECT_EQ(r.failed_runs, 5u);
  EXPECT_EQ(r.findings.front().violation.property, "agreement");
}

TEST(Commands, RunReportsAreByteIdentical) {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "ace-report-test";
  fs::remove_all(dir);
  CommonFlags f;
  f.scenario = scenario_path("crash-mode");
  f.seed = 42;
  f.protocol = "both";
  f.repetitions = 1;
  std::ostringstream out, err;
  f.out_dir = (dir / "a").string();
  ASSERT_EQ(cmd_run(f, out, err), kExitOk);
  f.out_dir = (dir / "b").string();
  ASSERT_EQ(cmd_run(f, out, err), kExitOk);
  for (const char* name : {"summary.csv", "runs.jsonl"}) {
    std::ifstream a(dir / "a" / name), b(dir / "b" / name);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    EXPECT_FALSE(sa.str().empty());
    EXPECT_EQ(sa.str(), sb.str()) << name;
  }
  std::ifstream csv(dir / "a" / "summary.csv");
  std::string header;
  std::getline(csv, header);
  EXPECT_NE(header.find("throughput_Bps"), std::string::npos);
  EXPECT_NE(header.find("mean_latency_ms"), std::string::npos);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace ace::harness
