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

#include "ace/smr.hpp"

#include <stdexcept>

namespace ace {

namespace {

constexpr std::size_t kMaxPendingMessages = 1 << 18;

ProposalSource cycle(std::vector<Value> proposals) {
  if (proposals.empty()) throw std::invalid_argument("empty proposal sequence");
  return [list = std::make_shared<std::vector<Value>>(std::move(proposals))](AgreementId slot) {
    return (*list)[(slot - 1) % list->size()];
  };
}

bool slot_scoped(const Payload& body) {
  if (const auto* s = std::get_if<ShareMsg>(&body)) return s->id.scope == BarrierScope::slot;
  if (const auto* t = std::get_if<TokenMsg>(&body)) return t->id.scope == BarrierScope::slot;
  return false;
}

}  // namespace

std::string to_string(Protocol p) { return p == Protocol::ace ? "ace" : "baseline"; }

Protocol parse_protocol(const std::string& s) {
  if (s == "ace") return Protocol::ace;
  if (s == "baseline") return Protocol::baseline;
  throw ConfigError("unknown protocol '" + s + "'");
}

SmrReplica::SmrReplica(PartyContext ctx, CoinOracle& oracle, SmrOptions options, ProposalSource proposals)
    : ctx_(std::move(ctx)),
      oracle_(&oracle),
      options_(options),
      proposals_(std::move(proposals)),
      timeouts_(options.timeout) {
  if (!proposals_) throw std::invalid_argument("no proposals");
}

SmrReplica::SmrReplica(PartyContext ctx, CoinOracle& oracle, SmrOptions options, std::vector<Value> proposals)
    : SmrReplica(std::move(ctx), oracle, options, cycle(std::move(proposals))) {}

void SmrReplica::start() {
  if (slot_ != 0) return;
  start_slot(1);
}

SlotRecord& SmrReplica::record(AgreementId slot) {
  auto [it, fresh] = records_.try_emplace(slot);
  if (fresh) it->second.slot = slot;
  return it->second;
}

std::size_t SmrReplica::resource_gauge(AgreementId slot) const {
  std::size_t gauge = 0;
  if (slot == slot_ && (ace_ || view_ || slot_barrier_)) {
    gauge += ace_ ? ace_->resource_gauge() : 0;
    gauge += view_ ? view_->resource_gauge() : 0;
    gauge += slot_barrier_ ? 1 : 0;
  }
  gauge += records_.count(slot);
  if (auto it = pending_.find(slot); it != pending_.end()) gauge += it->second.size();
  return gauge;
}

void SmrReplica::start_slot(AgreementId slot) {
  slot_ = slot;
  slot_started_ = ctx_.net->now();
  decide_sent_ = false;
  barrier_passed_ = false;
  ctx_.trace(sim::TraceKind::slot_start, InstanceId{slot, 0, kNoParty});

  // Tallies and buffers of slots already behind us are stale.
  while (!records_.empty() && records_.begin()->first < slot) records_.erase(records_.begin());
  while (!pending_.empty() && pending_.begin()->first < slot) {
    pending_count_ -= pending_.begin()->second.size();
    pending_.erase(pending_.begin());
  }

  record(slot);
  slot_barrier_ = std::make_unique<Barrier>(ctx_, BarrierId{BarrierScope::slot, slot, slot});
  const Value own = proposals_(slot);
  if (options_.protocol == Protocol::ace) {
    ace_ = std::make_unique<AceAgreement>(ctx_, slot, *oracle_, options_.wave_lookahead);
    ace_->propose(ClosingState{}, own);
  } else {
    view_ = std::make_unique<ViewAgreement>(ctx_, slot, timeouts_, leader_offset_, options_.wave_lookahead);
    view_->propose(ClosingState{}, own);
  }

  if (auto it = pending_.find(slot); it != pending_.end()) {
    auto held = std::move(it->second);
    pending_count_ -= held.size();
    pending_.erase(it);
    for (auto& [from, body] : held) on_message(from, body);
  }
  progress();
}

void SmrReplica::on_message(PartyId from, const Payload& body) {
  if (finished_) return;
  if (const auto* d = std::get_if<DecideMsg>(&body)) {
    on_decide(from, *d);
    return;
  }
  const AgreementId slot = meta_of(body).agreement;
  if (slot_ == 0 || slot > slot_) {
    if (slot > slot_ + options_.slot_lookahead || pending_count_ >= kMaxPendingMessages) return;
    pending_[slot].emplace_back(from, body);
    ++pending_count_;
    return;
  }
  if (slot < slot_) return;  // freed
  route(from, body);
  progress();
}

void SmrReplica::route(PartyId from, const Payload& body) {
  if (slot_scoped(body)) {
    if (!slot_barrier_) return;
    bool passed = false;
    if (const auto* s = std::get_if<ShareMsg>(&body)) passed = slot_barrier_->on_share(from, *s);
    if (const auto* t = std::get_if<TokenMsg>(&body)) passed = slot_barrier_->on_token(from, *t);
    if (passed) barrier_passed_ = true;
    return;
  }
  if (ace_) ace_->on_message(from, body);
  if (view_) view_->on_message(from, body);
}

void SmrReplica::on_timer(TimerId id) {
  if (finished_ || !view_) return;
  if (view_->on_timer(id)) progress();
}

void SmrReplica::on_decide(PartyId from, const DecideMsg& m) {
  if (m.slot < slot_ || m.slot == 0 || m.slot > slot_ + options_.slot_lookahead || m.value.empty()) return;
  auto& rec = record(m.slot);
  auto& [value, senders] = rec.tally[m.value.digest()];
  if (value.empty()) value = m.value;
  if (!senders.insert(from)) return;
  const std::size_t threshold = options_.crash_echo ? 1 : ctx_.quorums.forward_decides;
  if (senders.size() != threshold) return;
  ctx_.trace(sim::TraceKind::decide_quorum, InstanceId{m.slot, 0, value.proposer()}, value.digest());
  if (!rec.decided) {
    rec.decided = true;
    rec.value = value;
  }
  if (m.slot == slot_) progress();
}

void SmrReplica::progress() {
  if (finished_ || slot_ == 0 || (!ace_ && !view_)) return;
  auto& rec = record(slot_);
  if (!rec.decided) {
    const auto& d = ace_ ? ace_->decision() : view_->decision();
    if (d) {
      rec.decided = true;
      rec.value = d->value;
    }
  }
  if (!rec.decided) return;
  if (!decide_sent_) {
    decide_sent_ = true;
    ctx_.net->broadcast(DecideMsg{slot_, *rec.value});
    if (options_.crash_echo) {
      barrier_passed_ = true;
    } else {
      slot_barrier_->ready();
      if (slot_barrier_->sync()) barrier_passed_ = true;
    }
  }
  if (barrier_passed_) free_slot();
}

void SmrReplica::free_slot() {
  const AgreementId slot = slot_;
  const std::size_t gauge = resource_gauge(slot);
  const Value value = *record(slot).value;
  ace_.reset();
  view_.reset();
  slot_barrier_.reset();
  records_.erase(slot);
  if (auto it = pending_.find(slot); it != pending_.end()) {
    pending_count_ -= it->second.size();
    pending_.erase(it);
  }
  ctx_.trace(sim::TraceKind::slot_free, InstanceId{slot, 0, kNoParty}, 0, gauge);

  // The rotation resumes after the proposer of the agreed value, so that
  // all correct parties start the next slot with the same leader.
  leader_offset_ = (static_cast<std::uint64_t>(value.proposer()) + 1) % ctx_.config.n;
  outputs_.push_back(OutputEntry{slot, value, slot_started_, ctx_.net->now()});
  ctx_.trace(sim::TraceKind::output, InstanceId{slot, 0, value.proposer()}, value.digest(), value.size());

  if (options_.max_slots != 0 && slot >= options_.max_slots) {
    finished_ = true;
    return;
  }
  start_slot(slot + 1);
}

SingleShotNode::SingleShotNode(PartyContext ctx, CoinOracle& oracle, Protocol protocol, TimeoutPolicy timeout,
                               Value proposal, std::uint64_t round_limit)
    : ctx_(std::move(ctx)), timeouts_(timeout), proposal_(std::move(proposal)), round_limit_(round_limit) {
  if (protocol == Protocol::ace)
    ace_ = std::make_unique<AceAgreement>(ctx_, 1, oracle);
  else
    view_ = std::make_unique<ViewAgreement>(ctx_, 1, timeouts_);
}

void SingleShotNode::start() {
  if (ace_) {
    ace_->set_wave_limit(round_limit_);
    ace_->propose(ClosingState{}, proposal_);
  } else {
    view_->set_view_limit(round_limit_);
    view_->propose(ClosingState{}, proposal_);
  }
}

void SingleShotNode::on_message(PartyId from, const Payload& body) {
  if (ace_) ace_->on_message(from, body);
  if (view_) view_->on_message(from, body);
}

void SingleShotNode::on_timer(TimerId id) {
  if (view_) view_->on_timer(id);
}

void SingleShotNode::stop() {
  if (ace_) ace_->stop();
  if (view_) view_->stop();
}

const std::optional<DecisionRecord>& SingleShotNode::decision() const {
  return ace_ ? ace_->decision() : view_->decision();
}

std::uint64_t SingleShotNode::round() const { return ace_ ? ace_->wave() : view_->view(); }

}  // namespace ace
