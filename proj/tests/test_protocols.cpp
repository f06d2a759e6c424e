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

#include "ace/agreement.hpp"
#include "ace/baseline.hpp"
#include "ace/harness/runner.hpp"
#include "ace/smr.hpp"
#include "support.hpp"

namespace ace {
namespace {

using harness::parse_scenario;
using test::FakeNet;

// ---- ACE agreement --------------------------------------------------------

TEST(AceAgreement, RejectsInvalidOwnValueBeforeSending) {
  FakeNet net;
  SignatureLedger ledger;
  auto ctx = test::make_ctx(1, net, ledger);
  ctx.validity = [](const Value& v) { return v.payload() != "bad"; };
  CoinOracle oracle(1, ctx.config, ledger);
  AceAgreement a(ctx, 1, oracle);
  EXPECT_THROW(a.propose(ClosingState{}, Value("bad", 1)), std::invalid_argument);
  EXPECT_TRUE(net.sent.empty());
}

TEST(AceAgreement, SecondProposeIsAnError) {
  FakeNet net;
  SignatureLedger ledger;
  auto ctx = test::make_ctx(1, net, ledger);
  CoinOracle oracle(1, ctx.config, ledger);
  AceAgreement a(ctx, 1, oracle);
  a.propose(ClosingState{}, make_value(1, "v", 8));
  EXPECT_THROW(a.propose(ClosingState{}, make_value(1, "v", 8)), std::logic_error);
}

TEST(AceAgreement, WaveEngagesOneInstancePerParty) {
  FakeNet net;
  SignatureLedger ledger;
  auto ctx = test::make_ctx(2, net, ledger);
  CoinOracle oracle(1, ctx.config, ledger);
  AceAgreement a(ctx, 1, oracle);
  const Value own = make_value(2, "own", 8);
  a.propose(ClosingState{}, own);
  EXPECT_EQ(net.count(sim::TraceKind::engage_invoke), 4u);
  EXPECT_EQ(a.wave(), 1u);
  // Only the instance this party leads emits a proposal, carrying its value.
  const auto steps = net.of<StepMsg>();
  ASSERT_EQ(steps.size(), 4u);
  for (const auto& [to, m] : steps) {
    EXPECT_EQ(m.instance.leader, 2u);
    EXPECT_EQ(m.value, own);
  }
}

TEST(RoundBuffer, HoldsWithinLookaheadAndDropsStale) {
  RoundBuffer b(2, 3);
  const Payload msg = ShareMsg{};
  b.hold(1, 2, 0, msg);
  b.hold(1, 3, 0, msg);
  b.hold(1, 4, 0, msg);  // beyond lookahead
  b.hold(1, 1, 0, msg);  // not in the future
  EXPECT_EQ(b.size(), 2u);
  b.hold(1, 3, 1, msg);
  b.hold(1, 3, 2, msg);  // over the total cap
  EXPECT_EQ(b.size(), 3u);
  EXPECT_EQ(b.take(3).size(), 2u);  // round 2 dropped as stale on the way
  EXPECT_EQ(b.size(), 0u);
}

harness::Scenario scenario(const std::string& extra = "") {
  return parse_scenario(R"({"name":"t","config":{"n":4,"f":1,"seed":3},"horizon_ms":600000,"value_bytes":64)" +
                        extra + "}");
}

TEST(AceAgreement, FaultFreeDecidesInFirstWaveEverywhere) {
  const auto r = harness::run_single_shot(scenario(), Protocol::ace, 5, 0, true);
  EXPECT_TRUE(r.check.ok());
  EXPECT_EQ(r.universal_round, 1u);
  for (const auto& d : r.decisions) {
    ASSERT_TRUE(d);
    EXPECT_EQ(d->value, r.decisions[0]->value);
  }
}

TEST(AceAgreement, SinglePartyDecidesInWaveOne) {
  const auto s = parse_scenario(R"({"name":"solo","config":{"n":1,"f":0},"horizon_ms":10000})");
  const auto r = harness::run_single_shot(s, Protocol::ace, 1, 0, true);
  EXPECT_TRUE(r.check.ok());
  EXPECT_EQ(r.universal_round, 1u);
}

TEST(AceAgreement, EngageDoneGoesOnlyToTheInstanceLeader) {
  auto s = scenario(R"(,"trace_level":"messages")");
  sim::SimConfig cfg = harness::sim_config(s, 9);
  sim::Simulator sim(cfg);
  sim.install([&](const PartyContext& ctx) -> std::unique_ptr<Node> {
    return std::make_unique<SingleShotNode>(ctx, sim.oracle(), Protocol::ace, TimeoutPolicy{},
                                            make_value(ctx.self, "x", 8), 3);
  });
  std::map<std::tuple<PartyId, std::uint64_t, PartyId>, int> dones;
  sim.add_observer([&](const sim::TraceEvent& e) {
    if (e.kind != sim::TraceKind::send || e.msg != MsgKind::engage_done) return;
    EXPECT_EQ(e.peer, e.leader);
    ++dones[{e.party, e.round, e.leader}];
  });
  sim.run(60 * kSecond);
  EXPECT_FALSE(dones.empty());
  for (const auto& [key, count] : dones) EXPECT_EQ(count, 1);
}

TEST(AceAgreement, StallingAdversaryNeverBreaksAgreement) {
  const auto s = scenario(R"(,"attack":{"byzantine":[3],"behavior":{"silent_leader":true,"bogus_shares":true,
      "equivocate":true},"ddos":{"rule":"arbitrary_correct","added_ms":200,"added_max_ms":300}})");
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto r = harness::run_single_shot(s, Protocol::ace, seed, 0, true);
    ASSERT_TRUE(r.check.ok()) << r.check.violations.front().detail;
    EXPECT_GT(r.universal_round, 0u);
    EXPECT_EQ(r.check.waves_complete, r.check.waves_checked);
  }
}

// ---- baseline -------------------------------------------------------------

TEST(Baseline, RoundRobinLeaders) {
  EXPECT_EQ(get_leader(1, 4), 0u);
  EXPECT_EQ(get_leader(5, 4), 0u);
  EXPECT_EQ(get_leader(3, 4), 2u);
  EXPECT_EQ(get_leader(1, 4, 2), 2u);
  EXPECT_THROW(get_leader(0, 4), std::invalid_argument);
}

TEST(Baseline, TimeoutPolicies) {
  TimeoutPolicy adaptive;
  adaptive.kind = TimeoutKind::adaptive;
  TimeoutController up(adaptive), down(adaptive);
  up.record_outcome(true);
  down.record_outcome(false);
  EXPECT_EQ(up.get_timeout(2), 125 * kMillisecond);
  EXPECT_EQ(down.get_timeout(2), 80 * kMillisecond);

  TimeoutController fixed(TimeoutPolicy{});
  for (bool t : {true, true, false}) fixed.record_outcome(t);
  EXPECT_EQ(fixed.get_timeout(4), 100 * kMillisecond);

  adaptive.ceiling = 150 * kMillisecond;
  TimeoutController capped(adaptive);
  for (int i = 0; i < 10; ++i) capped.record_outcome(true);
  EXPECT_EQ(capped.get_timeout(11), 150 * kMillisecond);
}

TEST(Baseline, PolicyValidation) {
  TimeoutPolicy bad;
  bad.base = 0;
  EXPECT_THROW(bad.validate(), ConfigError);
  TimeoutPolicy outside;
  outside.kind = TimeoutKind::adaptive;
  outside.base = 20 * kSecond;
  EXPECT_THROW(outside.validate(), ConfigError);
  EXPECT_THROW(parse_timeout_kind("eager"), ConfigError);
}

TEST(Baseline, SynchronousDecisionInViewOneAfterSevenDelays) {
  auto s = scenario(R"(,"delays":{"base_ms":10,"processing_ms":0},"timeout":{"kind":"fixed","base_ms":500})");
  sim::Simulator sim(harness::sim_config(s, 1));
  sim.install([&](const PartyContext& ctx) -> std::unique_ptr<Node> {
    return std::make_unique<SingleShotNode>(ctx, sim.oracle(), Protocol::baseline, s.timeout,
                                            make_value(ctx.self, "x", 8), 0);
  });
  std::map<PartyId, Time> resolved;
  sim.add_observer([&](const sim::TraceEvent& e) {
    if (e.kind == sim::TraceKind::engage_resolve) resolved[e.party] = e.time;
  });
  sim.run(kSecond, [&] {
    for (PartyId p = 0; p < 4; ++p)
      if (!sim.node_as<SingleShotNode>(p).decision()) return false;
    return true;
  });
  // Six hops to the leader, whose step-4 message reaches itself at once;
  // the seventh carries it to everyone else.
  ASSERT_EQ(resolved.size(), 4u);
  EXPECT_EQ(resolved[0], 60 * kMillisecond);
  for (PartyId p = 1; p < 4; ++p) EXPECT_EQ(resolved[p], 70 * kMillisecond);
  for (PartyId p = 0; p < 4; ++p) {
    const auto& d = sim.node_as<SingleShotNode>(p).decision();
    ASSERT_TRUE(d);
    EXPECT_EQ(d->wave, 1u);
    EXPECT_EQ(d->value.proposer(), 0u);
  }
}

TEST(Baseline, SilentLeaderCostsOneTimeoutThenViewTwoDecides) {
  const auto s = scenario(R"(,"attack":{"byzantine":[0],"behavior":{"silent_leader":true}},
      "timeout":{"kind":"fixed","base_ms":300})");
  const auto r = harness::run_single_shot(s, Protocol::baseline, 2, 0, true);
  EXPECT_TRUE(r.check.ok());
  EXPECT_EQ(r.universal_round, 2u);
  EXPECT_EQ(r.round_outcomes.at(1), false);
}

// ---- SMR ------------------------------------------------------------------

TEST(Smr, EmptyProposalSequenceRejected) {
  FakeNet net;
  SignatureLedger ledger;
  auto ctx = test::make_ctx(0, net, ledger);
  CoinOracle oracle(1, ctx.config, ledger);
  EXPECT_THROW(SmrReplica(ctx, oracle, SmrOptions{}, std::vector<Value>{}), std::invalid_argument);
}

struct LoneReplica {
  LoneReplica() {
    ctx = test::make_ctx(3, net, ledger);
    oracle = std::make_unique<CoinOracle>(1, ctx.config, ledger);
    SmrOptions o;
    replica = std::make_unique<SmrReplica>(ctx, *oracle, o, std::vector<Value>{make_value(3, "mine", 8)});
    replica->start();
  }
  FakeNet net;
  SignatureLedger ledger;
  PartyContext ctx;
  std::unique_ptr<CoinOracle> oracle;
  std::unique_ptr<SmrReplica> replica;
};

TEST(Smr, FPlusOneMatchingDecidesSettleTheSlot) {
  LoneReplica r;
  const Value v = make_value(0, "slot1", 8);
  r.net.sent.clear();
  r.replica->on_message(0, DecideMsg{1, v});
  EXPECT_TRUE(r.net.of<DecideMsg>().empty());  // one DECIDE: pending
  r.replica->on_message(2, DecideMsg{1, v});
  const auto echoes = r.net.of<DecideMsg>();
  ASSERT_EQ(echoes.size(), 4u);
  EXPECT_EQ(echoes[0].second.value, v);
  EXPECT_EQ(r.net.count(sim::TraceKind::decide_quorum), 1u);
}

TEST(Smr, ConflictingDecideIsTalliedApart) {
  LoneReplica r;
  r.net.sent.clear();
  r.replica->on_message(0, DecideMsg{1, make_value(0, "a", 8)});
  r.replica->on_message(3, DecideMsg{1, make_value(3, "b", 8)});
  EXPECT_EQ(r.net.count(sim::TraceKind::decide_quorum), 0u);
  EXPECT_TRUE(r.net.of<DecideMsg>().empty());
}

TEST(Smr, FutureSlotDecideIsKeptForLater) {
  LoneReplica r;
  const Value v = make_value(1, "slot7", 8);
  r.replica->on_message(0, DecideMsg{7, v});
  r.replica->on_message(2, DecideMsg{7, v});
  EXPECT_EQ(r.net.count(sim::TraceKind::decide_quorum), 1u);
  EXPECT_EQ(r.replica->current_slot(), 1u);
  EXPECT_GT(r.replica->resource_gauge(7), 0u);
}

harness::Scenario smr_scenario(const std::string& extra = "") {
  return parse_scenario(
      R"({"name":"smr","config":{"n":4,"f":1,"seed":3},"horizon_ms":600000,"slots":5,"value_bytes":64)" + extra + "}");
}

TEST(Smr, AllSlotsOutputInOrderWithEqualLogs) {
  for (Protocol p : {Protocol::ace, Protocol::baseline}) {
    const auto s = smr_scenario(R"(,"attack":{"byzantine":[1],"behavior":{"equivocate":true,"bogus_shares":true}})");
    auto cfg = harness::sim_config(s, 4);
    sim::Simulator sim(cfg);
    SmrOptions o;
    o.protocol = p;
    o.max_slots = 5;
    sim.install([&](const PartyContext& ctx) -> std::unique_ptr<Node> {
      const PartyId self = ctx.self;
      return std::make_unique<SmrReplica>(ctx, sim.oracle(), o,
                                          [self](AgreementId a) { return make_value(self, std::to_string(a), 8); });
    });
    sim.run(s.horizon);
    const auto& ref = sim.node_as<SmrReplica>(0).outputs();
    ASSERT_EQ(ref.size(), 5u) << to_string(p);
    for (PartyId q : {0u, 2u, 3u}) {
      const auto& out = sim.node_as<SmrReplica>(q).outputs();
      ASSERT_EQ(out.size(), 5u);
      for (std::size_t i = 0; i < out.size(); ++i) {
        EXPECT_EQ(out[i].slot, i + 1);
        EXPECT_EQ(out[i].value, ref[i].value);
      }
      // Strong halting: every finished slot left nothing behind.
      for (AgreementId slot = 1; slot <= 5; ++slot) EXPECT_EQ(sim.node_as<SmrReplica>(q).resource_gauge(slot), 0u);
    }
    // A late message for a freed slot is dropped and allocates nothing.
    auto& rep = sim.node_as<SmrReplica>(2);
    rep.on_message(0, EngageDoneMsg{InstanceId{2, 1, 2}});
    EXPECT_EQ(rep.resource_gauge(2), 0u);
  }
}

TEST(Smr, CrashModeKeepsCommitting) {
  const auto s = parse_scenario(R"({"name":"crash","config":{"n":3,"f":1,"model":"crash","seed":2},
      "attack":{"crashes":[{"party":2,"at_ms":300}]},"crash_echo":true,"horizon_ms":60000,"slots":20,"value_bytes":64})");
  for (Protocol p : {Protocol::ace, Protocol::baseline}) {
    const auto r = harness::run_smr(s, p, 2);
    EXPECT_TRUE(r.check.ok()) << to_string(p);
    EXPECT_EQ(r.outputs_per_party[0], 20u);
    EXPECT_EQ(r.outputs_per_party[1], 20u);
  }
}

}  // namespace
}  // namespace ace
