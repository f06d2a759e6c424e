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

#include "ace/barrier.hpp"
#include "ace/election.hpp"
#include "support.hpp"

namespace ace {
namespace {

using test::FakeNet;

struct Parties {
  explicit Parties(std::uint32_t n = 4, std::uint32_t f = 1) : nets(n) {
    for (PartyId p = 0; p < n; ++p) ctx.push_back(test::make_ctx(p, nets[p], ledger, n, f));
  }
  SignatureLedger ledger;
  std::vector<FakeNet> nets;
  std::vector<PartyContext> ctx;
};

const BarrierId kBid{BarrierScope::wave, 1, 1};

TEST(Barrier, ReadyBroadcastsOnce) {
  Parties ps;
  Barrier b(ps.ctx[1], kBid);
  b.ready();
  EXPECT_EQ(ps.nets[1].of<ShareMsg>().size(), 4u);
  b.ready();
  EXPECT_EQ(ps.nets[1].of<ShareMsg>().size(), 4u);
}

TEST(Barrier, ResolvesOnQuorumOfShares) {
  Parties ps;
  std::vector<std::unique_ptr<Barrier>> bs;
  for (PartyId p = 0; p < 4; ++p) bs.push_back(std::make_unique<Barrier>(ps.ctx[p], kBid));
  for (PartyId p : {0u, 1u, 3u}) bs[p]->ready();
  Barrier& me = *bs[2];
  EXPECT_FALSE(me.sync());
  EXPECT_FALSE(me.on_share(0, ShareMsg{kBid}));
  EXPECT_FALSE(me.on_share(1, ShareMsg{kBid}));
  EXPECT_FALSE(me.resolved());  // two shares: pending
  EXPECT_TRUE(me.on_share(3, ShareMsg{kBid}));
  const auto tokens = ps.nets[2].of<TokenMsg>();
  EXPECT_EQ(tokens.size(), 3u);  // to every other party
  EXPECT_EQ(tokens[0].second.signers.size(), 3u);
}

TEST(Barrier, ShareWithoutSignatureIsIgnored) {
  Parties ps;
  Barrier me(ps.ctx[2], kBid);
  me.sync();
  for (PartyId p : {0u, 1u, 3u}) EXPECT_FALSE(me.on_share(p, ShareMsg{kBid}));
  EXPECT_FALSE(me.resolved());
}

TEST(Barrier, TokenBeforeAnyShareForwardsAndResolves) {
  Parties ps;
  PartySet signers;
  for (PartyId p : {0u, 1u, 3u}) {
    ps.ctx[p].signer.sign(share_subject(kBid));
    signers.insert(p);
  }
  Barrier me(ps.ctx[2], kBid);
  me.sync();
  EXPECT_TRUE(me.on_token(0, TokenMsg{kBid, signers}));
  EXPECT_EQ(ps.nets[2].of<TokenMsg>().size(), 3u);
  EXPECT_TRUE(me.resolved());
}

TEST(Barrier, UndersizedOrForgedTokenRejected) {
  Parties ps;
  PartySet two, forged;
  for (PartyId p : {0u, 1u}) {
    ps.ctx[p].signer.sign(share_subject(kBid));
    two.insert(p);
    forged.insert(p);
  }
  forged.insert(3);  // p3 never signed
  Barrier me(ps.ctx[2], kBid);
  me.sync();
  EXPECT_FALSE(me.on_token(0, TokenMsg{kBid, two}));
  EXPECT_FALSE(me.on_token(0, TokenMsg{kBid, forged}));
  EXPECT_FALSE(me.resolved());
}

TEST(Barrier, ReadyAfterResolutionSendsNothing) {
  Parties ps;
  PartySet signers;
  for (PartyId p : {0u, 1u, 3u}) {
    ps.ctx[p].signer.sign(share_subject(kBid));
    signers.insert(p);
  }
  Barrier me(ps.ctx[2], kBid);
  me.sync();
  me.on_token(0, TokenMsg{kBid, signers});
  const auto before = ps.nets[2].sent.size();
  me.ready();
  EXPECT_EQ(ps.nets[2].sent.size(), before);
}

const CoinId kCoin{1, 1};

TEST(Election, ResolvesWithFPlusOneShares) {
  Parties ps;
  CoinOracle oracle(99, ps.ctx[0].config, ps.ledger);
  std::vector<std::unique_ptr<Election>> es;
  for (PartyId p = 0; p < 4; ++p) es.push_back(std::make_unique<Election>(ps.ctx[p], kCoin, oracle));
  es[2]->send_share();
  es[3]->send_share();
  EXPECT_EQ(ps.nets[2].of<CoinShareMsg>().size(), 4u);
  EXPECT_FALSE(es[0]->elect());
  EXPECT_FALSE(es[0]->on_share(0, CoinShareMsg{kCoin}));  // own share, self-delivered
  const auto one = es[0]->on_share(2, CoinShareMsg{kCoin});
  ASSERT_TRUE(one);
  EXPECT_LT(*one, 4u);
  es[1]->elect();
  es[1]->on_share(1, CoinShareMsg{kCoin});
  EXPECT_EQ(es[1]->on_share(3, CoinShareMsg{kCoin}), one);
}

TEST(Election, OneShareIsPending) {
  Parties ps;
  CoinOracle oracle(99, ps.ctx[0].config, ps.ledger);
  Election e(ps.ctx[0], kCoin, oracle);
  ps.ctx[1].signer.sign(coin_subject(kCoin));
  EXPECT_FALSE(e.on_share(1, CoinShareMsg{kCoin}));
  EXPECT_FALSE(e.outcome());
  EXPECT_EQ(oracle.revealed_count(), 0u);
}

TEST(Coin, DeterministicAndIndependentOfShareSubset) {
  Parties ps;
  for (PartyId p = 0; p < 4; ++p) ps.ctx[p].signer.sign(coin_subject(kCoin));
  CoinOracle a(7, ps.ctx[0].config, ps.ledger), b(7, ps.ctx[0].config, ps.ledger);
  PartySet s01, s23, all;
  for (PartyId p : {0u, 1u}) s01.insert(p);
  for (PartyId p : {2u, 3u}) s23.insert(p);
  for (PartyId p = 0; p < 4; ++p) all.insert(p);
  const auto x = a.reveal(kCoin, s01, 0);
  ASSERT_TRUE(x);
  EXPECT_EQ(a.reveal(kCoin, s23, 0), x);
  EXPECT_EQ(b.reveal(kCoin, all, 5), x);
}

TEST(Coin, AdversaryWithFSharesLearnsNothing) {
  Parties ps;
  CoinOracle oracle(7, ps.ctx[0].config, ps.ledger);
  for (std::uint64_t w = 1; w <= 100; ++w) {
    const CoinId id{1, w};
    ps.ctx[3].signer.sign(coin_subject(id));
    PartySet byz;
    byz.insert(3);
    EXPECT_FALSE(oracle.reveal(id, byz, 0));
    // Claiming shares of others without their signatures fails as well.
    byz.insert(0);
    EXPECT_FALSE(oracle.reveal(id, byz, 0));
  }
}

TEST(Coin, OutcomesRoughlyUniform) {
  Parties ps;
  for (std::uint64_t w = 1; w <= 4000; ++w)
    for (PartyId p : {0u, 1u}) ps.ctx[p].signer.sign(coin_subject(CoinId{5, w}));
  CoinOracle oracle(3, ps.ctx[0].config, ps.ledger);
  PartySet s;
  s.insert(0);
  s.insert(1);
  std::array<int, 4> hist{};
  for (std::uint64_t w = 1; w <= 4000; ++w) ++hist[*oracle.reveal(CoinId{5, w}, s, 0)];
  double chi2 = 0;
  for (int h : hist) chi2 += (h - 1000.0) * (h - 1000.0) / 1000.0;
  EXPECT_LT(chi2, 11.345);  // df=3, p=0.01
}

}  // namespace
}  // namespace ace
