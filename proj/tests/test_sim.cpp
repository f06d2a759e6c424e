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

#include <sstream>

#include "ace/harness/runner.hpp"
#include "ace/sim/adversary.hpp"
#include "ace/sim/metrics.hpp"
#include "ace/sim/simulator.hpp"

namespace ace {
namespace {

using harness::parse_scenario;

harness::Scenario jittery() {
  return parse_scenario(R"({"name":"j","config":{"n":4,"f":1,"seed":11},"horizon_ms":20000,"slots":3,
      "value_bytes":64,"delays":{"base_ms":3,"jitter_ms":20,"processing_ms":1},"trace_level":"full",
      "attack":{"spikes":{"probability":0.2,"max_ms":100}}})");
}

TEST(Simulator, SameSeedSameTraceHash) {
  const auto s = jittery();
  for (Protocol p : {Protocol::ace, Protocol::baseline}) {
    const auto a = harness::run_smr(s, p, 77);
    const auto b = harness::run_smr(s, p, 77);
    EXPECT_EQ(a.trace_hash, b.trace_hash);
    EXPECT_EQ(a.events, b.events);
    EXPECT_NE(a.trace_hash, harness::run_smr(s, p, 78).trace_hash);
  }
}

TEST(Simulator, NdjsonHasOneCanonicalLinePerEvent) {
  harness::RunOptions o;
  o.keep_trace = true;
  const auto r = harness::run_smr(jittery(), Protocol::ace, 5, o);
  ASSERT_TRUE(r.trace);
  std::ostringstream os;
  r.trace->write_ndjson(os);
  const std::string text = os.str();
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')), r.trace->events().size());
  EXPECT_EQ(text.substr(0, 6), "{\"a\":1");  // keys sorted, no whitespace
  EXPECT_EQ(text.find(' '), std::string::npos);
}

TEST(Simulator, DelaysFollowPhasesAndBound) {
  sim::DelayModel m;
  m.base = 5 * kMillisecond;
  m.jitter = 2 * kMillisecond;
  m.phases = {{0, 5 * kMillisecond}, {20 * kSecond, 10 * kMillisecond}, {40 * kSecond, 5 * kMillisecond}};
  EXPECT_EQ(m.base_at(0), 5 * kMillisecond);
  EXPECT_EQ(m.base_at(25 * kSecond), 10 * kMillisecond);
  EXPECT_EQ(m.base_at(45 * kSecond), 5 * kMillisecond);
  EXPECT_EQ(m.bound(), 19 * kMillisecond);
  m.jitter = -1;
  EXPECT_THROW(m.validate(), ConfigError);
}

TEST(Simulator, RejectsTooManyFaultyParties) {
  sim::SimConfig c;
  c.byzantine = {0, 1};
  EXPECT_THROW(sim::Simulator{c}, ConfigError);
  sim::SimConfig crash;
  crash.config = Config{3, 1, FailureModel::crash};
  crash.byzantine = {0};
  EXPECT_THROW(sim::Simulator{crash}, ConfigError);
}

TEST(Simulator, MessagesBetweenCorrectPartiesAreNeverDropped) {
  // Byzantine drops only suppress byzantine sends.
  const auto s = parse_scenario(R"({"name":"d","config":{"n":4,"f":1,"seed":1},"horizon_ms":60000,"slots":30,
      "value_bytes":64,"trace_level":"full","attack":{"byzantine":[2],"drop":0.9}})");
  harness::RunOptions o;
  o.keep_trace = true;
  const auto r = harness::run_smr(s, Protocol::ace, 3, o);
  using Key = std::tuple<PartyId, PartyId, MsgKind, AgreementId, std::uint64_t, std::int32_t>;
  std::map<Key, std::int64_t> sent, delivered;
  const Time cutoff = r.end_time - kSecond;  // later sends may still be in flight
  for (const auto& e : r.trace->events()) {
    if (e.party == 2 || e.peer == 2) continue;
    if (e.kind == sim::TraceKind::send && e.time < cutoff) ++sent[{e.party, e.peer, e.msg, e.agreement, e.round, e.step}];
    if (e.kind == sim::TraceKind::deliver) ++delivered[{e.peer, e.party, e.msg, e.agreement, e.round, e.step}];
  }
  ASSERT_FALSE(sent.empty());
  for (const auto& [k, c] : sent) EXPECT_LE(c, delivered[k]);
  EXPECT_TRUE(r.check.ok());
}

TEST(Adversary, SeesOnlyPublicLifecycleKinds) {
  using sim::TraceKind;
  for (auto k : {TraceKind::view_start, TraceKind::wave_start, TraceKind::slot_start, TraceKind::elect_resolve,
                 TraceKind::output})
    EXPECT_TRUE(sim::publicly_observable(k));
  for (auto k : {TraceKind::send, TraceKind::deliver, TraceKind::coin_reveal, TraceKind::engage_resolve,
                 TraceKind::decide, TraceKind::barrier_token})
    EXPECT_FALSE(sim::publicly_observable(k));
}

TEST(Adversary, FixedTargetDelaysOnlyItsLinks) {
  sim::TargetedDelay::Params p;
  p.rule = sim::TargetRule::fixed;
  p.fixed_target = 2;
  p.added_min = p.added_max = 500 * kMillisecond;
  sim::TargetedDelay adv(p);
  adv.bind(sim::AdversaryEnv{4, {true, true, true, true}, 1});
  sim::LinkObservation to_target{0, 0, 2, {}}, other{0, 0, 1, {}}, from_target{0, 2, 3, {}};
  EXPECT_EQ(adv.extra_delay(to_target), 500 * kMillisecond);
  EXPECT_EQ(adv.extra_delay(from_target), 500 * kMillisecond);
  EXPECT_EQ(adv.extra_delay(other), 0);
}

TEST(Metrics, ThroughputArithmetic) {
  // 600 slots of 10000 bytes committed evenly over 60 seconds.
  sim::MetricsCollector c(1, {true});
  for (AgreementId slot = 1; slot <= 600; ++slot) {
    const Time start = static_cast<Time>(slot - 1) * 100 * kMillisecond;
    sim::TraceEvent s;
    s.kind = sim::TraceKind::slot_start;
    s.party = 0;
    s.agreement = slot;
    s.time = start;
    c.on_event(s);
    sim::TraceEvent o = s;
    o.kind = sim::TraceKind::output;
    o.time = start + 50 * kMillisecond;
    o.round = slot;
    o.leader = 0;
    o.aux = 10000;
    c.on_event(o);
  }
  const auto m = c.finish(60 * kSecond);
  EXPECT_EQ(m.slots_committed, 600u);
  EXPECT_DOUBLE_EQ(m.throughput(0, 60 * kSecond), 100000.0);
  EXPECT_DOUBLE_EQ(m.mean_latency(0, 60 * kSecond), 50.0 * kMillisecond);
  EXPECT_DOUBLE_EQ(m.throughput(500 * kMillisecond, 2 * kSecond), 100000.0);  // whole buckets only
}

}  // namespace
}  // namespace ace
