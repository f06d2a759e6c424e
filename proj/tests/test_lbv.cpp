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

#include <memory>
#include <random>

#include "ace/lbv.hpp"
#include "support.hpp"

namespace ace {
namespace {

using test::FakeNet;

// Independent restatement of the HotStuff voting rule used as the oracle.
bool reference_rule(const StepMsg& p, const std::optional<QuorumCert>& lock, bool valid) {
  if (!valid || p.step != 1) return false;
  if (p.justify && (p.justify->instance.wave >= p.instance.wave || p.justify->value.digest() != p.value.digest()))
    return false;
  if (!lock) return true;
  if (!p.justify) return false;
  if (p.justify->value.digest() == lock->value.digest()) return true;
  const auto rank = [](const QuorumCert& c) {
    return std::tuple(c.instance.wave, c.step, -static_cast<std::int64_t>(c.instance.leader));
  };
  return rank(*p.justify) > rank(*lock);
}

const auto kAnyCert = [](const QuorumCert&) { return true; };
const auto kValid = [](const Value& v) { return v.payload() != "bad"; };

QuorumCert qc(std::uint64_t wave, int step, PartyId leader, const Value& v) {
  return QuorumCert{InstanceId{1, wave, leader}, step, v, {}};
}

TEST(SafeNode, UnlockedValidGenesis) {
  const StepMsg p{InstanceId{1, 1, 0}, 1, Value("v", 0), std::nullopt};
  EXPECT_TRUE(safe_node(p, ClosingState{}, kValid, kAnyCert));
}

TEST(SafeNode, RejectsInvalidValue) {
  const StepMsg p{InstanceId{1, 1, 0}, 1, Value("bad", 0), std::nullopt};
  EXPECT_FALSE(safe_node(p, ClosingState{}, kValid, kAnyCert));
}

TEST(SafeNode, LockedRejectsOlderConflictingJustification) {
  const Value v("v", 0), w("w", 1);
  ClosingState in;
  in.raise_lock(qc(3, 3, 0, v));
  const StepMsg p{InstanceId{1, 4, 1}, 1, w, qc(2, 3, 1, w)};
  EXPECT_FALSE(safe_node(p, in, kValid, kAnyCert));
}

TEST(SafeNode, LockedAcceptsItsOwnLockAsJustification) {
  const Value v("v", 0);
  ClosingState in;
  in.raise_lock(qc(3, 3, 0, v));
  const StepMsg p{InstanceId{1, 4, 2}, 1, v, qc(3, 3, 0, v)};
  EXPECT_TRUE(safe_node(p, in, kValid, kAnyCert));
}

TEST(SafeNode, LockedAcceptsHigherConflictingJustification) {
  const Value v("v", 0), w("w", 1);
  ClosingState in;
  in.raise_lock(qc(2, 3, 0, v));
  const StepMsg p{InstanceId{1, 4, 2}, 1, w, qc(3, 2, 1, w)};
  EXPECT_TRUE(safe_node(p, in, kValid, kAnyCert));
}

TEST(SafeNode, RejectsUnverifiableJustification) {
  const Value v("v", 0);
  const StepMsg p{InstanceId{1, 2, 0}, 1, v, qc(1, 3, 0, v)};
  EXPECT_FALSE(safe_node(p, ClosingState{}, kValid, [](const QuorumCert&) { return false; }));
}

TEST(SafeNode, MatchesReferenceOracleOnRandomThreeWaveTraces) {
  std::mt19937_64 rng(2024);
  const Value vals[] = {Value("v", 0), Value("w", 1), Value("bad", 2)};
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  int accepted = 0;
  for (int i = 0; i < 20000; ++i) {
    std::optional<QuorumCert> lock;
    if (pick(0, 3) > 0) lock = qc(pick(1, 3), pick(1, 3), pick(0, 3), vals[pick(0, 1)]);
    StepMsg p{InstanceId{1, static_cast<std::uint64_t>(pick(1, 4)), static_cast<PartyId>(pick(0, 3))},
              pick(0, 5) == 0 ? 2 : 1, vals[pick(0, 2)], std::nullopt};
    if (pick(0, 3) > 0) {
      const Value& jv = pick(0, 4) == 0 ? vals[pick(0, 1)] : p.value;
      p.justify = qc(pick(1, 4), pick(1, 3), pick(0, 3), jv);
    }
    ClosingState in;
    if (lock) in.raise_lock(*lock);
    const bool expected = reference_rule(p, lock, kValid(p.value));
    ASSERT_EQ(safe_node(p, in, kValid, kAnyCert), expected) << "sample " << i;
    accepted += expected;
  }
  // Both outcomes are exercised.
  EXPECT_GT(accepted, 1000);
  EXPECT_LT(accepted, 19000);
}

/// Four parties running one instance, delivered in lock-step rounds.
struct Cluster {
  explicit Cluster(InstanceId id, std::uint32_t n = 4, std::uint32_t f = 1) : nets(n) {
    for (PartyId p = 0; p < n; ++p) ctx.push_back(test::make_ctx(p, nets[p], ledger, n, f));
    for (PartyId p = 0; p < n; ++p)
      inst.push_back(std::make_unique<LbvInstance>(ctx[p], id, [](const InstanceId&) { return true; }));
  }

  /// Delivers everything sent so far; returns how many messages moved.
  std::size_t round() {
    ++rounds;
    std::vector<std::tuple<PartyId, PartyId, Payload>> batch;
    for (PartyId p = 0; p < nets.size(); ++p) {
      for (auto& s : nets[p].sent) batch.emplace_back(p, s.to, std::move(s.body));
      nets[p].sent.clear();
    }
    for (auto& [from, to, body] : batch) {
      if (blocked.contains(to)) continue;
      const auto ev = inst[to]->on_message(from, body);
      if (ev.engaged && !engaged_at.contains(to)) engaged_at[to] = rounds;
      if (ev.wedged) wedged[to] = *ev.wedged;
    }
    return batch.size();
  }

  void run() {
    while (round() > 0) {
    }
  }

  SignatureLedger ledger;
  std::vector<FakeNet> nets;
  std::vector<PartyContext> ctx;
  std::vector<std::unique_ptr<LbvInstance>> inst;
  int rounds = 0;
  std::set<PartyId> blocked;
  std::map<PartyId, int> engaged_at;
  std::map<PartyId, WedgeResult> wedged;
};

TEST(Lbv, LeaderEmitsProposalToAll) {
  Cluster c(InstanceId{1, 1, 0});
  const Value v = make_value(0, "mine", 16);
  c.inst[0]->engage(ClosingState{}, v);
  const auto steps = c.nets[0].of<StepMsg>();
  ASSERT_EQ(steps.size(), 4u);
  for (const auto& [to, m] : steps) {
    EXPECT_EQ(m.step, 1);
    EXPECT_EQ(m.value, v);
  }
}

TEST(Lbv, NonLeaderIsPassiveAtStart) {
  Cluster c(InstanceId{1, 1, 0});
  c.inst[2]->engage(ClosingState{}, make_value(2, "mine", 16));
  EXPECT_TRUE(c.nets[2].sent.empty());
}

TEST(Lbv, StepCertificateNeedsQuorum) {
  Cluster c(InstanceId{1, 1, 0});
  for (PartyId p = 0; p < 4; ++p) c.inst[p]->engage(ClosingState{}, make_value(p, "mine", 16));
  c.blocked = {0};
  c.round();  // step 1 reaches p1..p3, their votes queue
  auto votes = c.nets[1].of<VoteMsg>();
  ASSERT_EQ(votes.size(), 1u);
  auto* leader = c.inst[0].get();
  leader->on_message(1, votes[0].second);
  leader->on_message(2, c.nets[2].of<VoteMsg>()[0].second);
  EXPECT_TRUE(c.nets[0].of<StepMsg>().empty());  // two of three votes
  leader->on_message(3, c.nets[3].of<VoteMsg>()[0].second);
  const auto steps = c.nets[0].of<StepMsg>();
  ASSERT_EQ(steps.size(), 4u);
  EXPECT_EQ(steps.back().second.step, 2);
  ASSERT_TRUE(steps.back().second.justify);
  EXPECT_EQ(steps.back().second.justify->signers.size(), 3u);
}

TEST(Lbv, EngageResolvesAfterSevenOneWayDelays) {
  Cluster c(InstanceId{1, 1, 0});
  const Value v = make_value(0, "mine", 16);
  for (PartyId p = 0; p < 4; ++p) c.inst[p]->engage(ClosingState{}, make_value(p, "mine", 16));
  c.run();
  ASSERT_EQ(c.engaged_at.size(), 4u);
  for (PartyId p = 0; p < 4; ++p) {
    EXPECT_EQ(c.engaged_at[p], 7) << "party " << p;
    EXPECT_EQ(*c.inst[p]->engage_result(), v);
  }
}

TEST(Lbv, NoVotesAfterDecisionStep) {
  Cluster c(InstanceId{1, 1, 0});
  for (PartyId p = 0; p < 4; ++p) c.inst[p]->engage(ClosingState{}, make_value(p, "mine", 16));
  c.run();
  for (PartyId p = 0; p < 4; ++p) EXPECT_TRUE(c.nets[p].sent.empty());
}

TEST(Lbv, WedgeAfterCompletionReturnsValueEverywhere) {
  Cluster c(InstanceId{1, 1, 0});
  for (PartyId p = 0; p < 4; ++p) c.inst[p]->engage(ClosingState{}, make_value(p, "mine", 16));
  c.run();
  for (PartyId p = 0; p < 4; ++p) c.inst[p]->wedge_and_exchange();
  c.run();
  ASSERT_EQ(c.wedged.size(), 4u);
  for (auto& [p, w] : c.wedged) {
    ASSERT_TRUE(w.value) << "party " << p;
    EXPECT_EQ(*w.value, make_value(0, "mine", 16));
  }
}

TEST(Lbv, CompletenessWhenOnlyFPlusOneResolved) {
  // Parties 2 and 3 never see step 4; the exchange must still yield v.
  Cluster c(InstanceId{1, 1, 0});
  for (PartyId p = 0; p < 4; ++p) c.inst[p]->engage(ClosingState{}, make_value(p, "mine", 16));
  for (int r = 0; r < 6; ++r) c.round();
  std::erase_if(c.nets[0].sent, [](const test::Sent& s) { return s.to >= 2; });  // step 4 to p0, p1 only
  c.round();
  EXPECT_EQ(c.engaged_at.size(), 2u);
  for (PartyId p = 0; p < 4; ++p) c.inst[p]->wedge_and_exchange();
  c.run();
  ASSERT_EQ(c.wedged.size(), 4u);
  for (auto& [p, w] : c.wedged) EXPECT_TRUE(w.value) << "party " << p;
}

TEST(Lbv, WedgeWithoutDecisionCertIsBottom) {
  Cluster c(InstanceId{1, 1, 0});
  for (PartyId p = 1; p < 4; ++p) c.inst[p]->engage(ClosingState{}, std::nullopt);  // leader absent
  c.blocked = {0};
  for (PartyId p = 1; p < 4; ++p) c.inst[p]->wedge_and_exchange();
  c.run();
  ASSERT_EQ(c.wedged.size(), 3u);
  for (auto& [p, w] : c.wedged) EXPECT_FALSE(w.value);
}

TEST(Lbv, WedgeStopsEngage) {
  Cluster c(InstanceId{1, 1, 0});
  for (PartyId p = 0; p < 4; ++p) c.inst[p]->engage(ClosingState{}, make_value(p, "mine", 16));
  c.inst[3]->wedge_and_exchange();
  c.run();
  EXPECT_FALSE(c.engaged_at.contains(3));
}

TEST(Lbv, EquivocatingLeaderGetsOneVotePerParty) {
  Cluster c(InstanceId{1, 1, 0});
  c.ctx[0].behavior.equivocate = true;
  for (PartyId p = 0; p < 4; ++p) c.inst[p]->engage(ClosingState{}, make_value(p, "mine", 16));
  // Replay both versions of step 1 to every party.
  const auto steps = c.nets[0].of<StepMsg>();
  for (PartyId p = 1; p < 4; ++p)
    for (const auto& [to, m] : steps) c.inst[p]->on_message(0, m);
  for (PartyId p = 1; p < 4; ++p) EXPECT_EQ(c.nets[p].of<VoteMsg>().size(), 1u) << "party " << p;
}

}  // namespace
}  // namespace ace
