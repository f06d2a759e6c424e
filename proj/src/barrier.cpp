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

#include "ace/barrier.hpp"

namespace ace {

namespace {

std::uint64_t low_mask(const PartySet& s) {
  std::uint64_t mask = 0;
  for (PartyId p : s.members())
    if (p < 64) mask |= std::uint64_t{1} << p;
  return mask;
}

}  // namespace

Barrier::Barrier(const PartyContext& ctx, BarrierId id) : ctx_(&ctx), id_(id) {}

void Barrier::trace(sim::TraceKind kind, std::uint64_t aux) const {
  sim::TraceEvent e;
  e.time = ctx_->net->now();
  e.kind = kind;
  e.party = ctx_->self;
  e.agreement = id_.agreement;
  e.round = id_.index;
  e.step = static_cast<int>(id_.scope);
  e.digest = id_.digest();
  e.aux = aux;
  ctx_->net->record(e);
}

void Barrier::ready() {
  if (ready_sent_ || resolved_) return;
  ready_sent_ = true;
  trace(sim::TraceKind::barrier_ready);
  ctx_->signer.sign(share_subject(id_));
  ctx_->net->broadcast(ShareMsg{id_});
}

bool Barrier::sync() {
  if (sync_invoked_) return false;
  sync_invoked_ = true;
  return try_resolve();
}

bool Barrier::token_valid(const PartySet& signers) const {
  if (signers.size() < ctx_->config.quorum()) return false;
  const auto subject = share_subject(id_);
  for (PartyId p : signers.members())
    if (!ctx_->ledger->verify(p, subject)) return false;
  return true;
}

bool Barrier::on_share(PartyId from, const ShareMsg& m) {
  if (m.id != id_ || resolved_) return false;
  if (!ctx_->ledger->verify(from, share_subject(id_))) return false;
  if (!shares_.insert(from)) return false;
  return try_resolve();
}

bool Barrier::on_token(PartyId, const TokenMsg& m) {
  if (m.id != id_ || resolved_ || token_) return false;
  if (!token_valid(m.signers)) return false;
  token_ = m.signers;
  return try_resolve();
}

bool Barrier::try_resolve() {
  if (resolved_ || !sync_invoked_) return false;
  if (!token_ && shares_.size() >= ctx_->config.quorum()) {
    token_ = shares_;
    token_from_shares_ = true;
    trace(sim::TraceKind::barrier_token, low_mask(*token_));
  }
  if (!token_) return false;
  resolved_ = true;
  // A formed token is broadcast; a received one is forwarded. Both reach all
  // other parties.
  for (PartyId p = 0; p < ctx_->config.n; ++p)
    if (p != ctx_->self) ctx_->net->send(p, TokenMsg{id_, *token_});
  trace(sim::TraceKind::barrier_sync, token_from_shares_ ? 1 : 0);
  return true;
}

}  // namespace ace
