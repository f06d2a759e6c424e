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

#include "ace/election.hpp"

namespace ace {

CoinOracle::CoinOracle(std::uint64_t seed, const Config& config, const SignatureLedger& ledger)
    : seed_(mix64(seed ^ 0x636f696e2d6b6579ull)), n_(config.n), threshold_(config.f + 1), ledger_(&ledger) {}

PartyId CoinOracle::coin_value(const CoinId& id) const {
  const std::uint64_t r = mix64(seed_ ^ mix64(id.digest()));
  // Multiply-shift reduction into [0, n).
  return static_cast<PartyId>((static_cast<unsigned __int128>(r) * n_) >> 64);
}

std::optional<PartyId> CoinOracle::reveal(const CoinId& id, const PartySet& shares, Time now) {
  if (shares.size() < threshold_) return std::nullopt;
  const auto subject = coin_subject(id);
  std::size_t valid = 0;
  for (PartyId p : shares.members())
    if (ledger_->verify(p, subject)) ++valid;
  if (valid < threshold_) return std::nullopt;
  const PartyId leader = coin_value(id);
  if (revealed_.insert(id).second && observer_) observer_(id, leader, now);
  return leader;
}

Election::Election(const PartyContext& ctx, CoinId id, CoinOracle& oracle) : ctx_(&ctx), id_(id), oracle_(&oracle) {}

void Election::send_share() {
  if (share_sent_) return;
  share_sent_ = true;
  ctx_->signer.sign(coin_subject(id_));
  ctx_->net->broadcast(CoinShareMsg{id_});
}

std::optional<PartyId> Election::elect() {
  if (invoked_) return std::nullopt;
  invoked_ = true;
  ctx_->trace(sim::TraceKind::elect_invoke, InstanceId{id_.agreement, id_.wave, kNoParty});
  send_share();
  return try_resolve();
}

std::optional<PartyId> Election::on_share(PartyId from, const CoinShareMsg& m) {
  if (m.id != id_ || outcome_) return std::nullopt;
  if (!ctx_->ledger->verify(from, coin_subject(id_))) return std::nullopt;
  if (!shares_.insert(from)) return std::nullopt;
  return try_resolve();
}

std::optional<PartyId> Election::try_resolve() {
  if (!invoked_ || outcome_ || shares_.size() < ctx_->quorums.election_shares) return std::nullopt;
  outcome_ = oracle_->reveal(id_, shares_, ctx_->net->now());
  if (outcome_) ctx_->trace(sim::TraceKind::elect_resolve, InstanceId{id_.agreement, id_.wave, *outcome_});
  return outcome_;
}

}  // namespace ace
