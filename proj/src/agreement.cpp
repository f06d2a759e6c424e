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

#include "ace/agreement.hpp"

#include <stdexcept>

namespace ace {

void RoundBuffer::hold(std::uint64_t current, std::uint64_t round, PartyId from, const Payload& body) {
  if (round <= current || round > current + lookahead_ || count_ >= max_messages_) return;
  held_[round].emplace_back(from, body);
  ++count_;
}

std::vector<std::pair<PartyId, Payload>> RoundBuffer::take(std::uint64_t round) {
  std::vector<std::pair<PartyId, Payload>> out;
  // Everything at or below `round` leaves the buffer; older rounds are stale.
  while (!held_.empty() && held_.begin()->first <= round) {
    auto node = held_.extract(held_.begin());
    count_ -= node.mapped().size();
    if (node.key() == round) out = std::move(node.mapped());
  }
  return out;
}

AceAgreement::AceAgreement(const PartyContext& ctx, AgreementId id, CoinOracle& oracle, std::uint64_t wave_lookahead)
    : ctx_(&ctx), id_(id), oracle_(&oracle), future_(wave_lookahead) {}

std::optional<PartyId> AceAgreement::chosen(std::uint64_t wave) const {
  auto it = chosen_.find(wave);
  if (it == chosen_.end()) return std::nullopt;
  return it->second;
}

std::size_t AceAgreement::resource_gauge() const {
  return 1 + instances_.size() + (barrier_ ? 1 : 0) + (election_ ? 1 : 0) + future_.size();
}

void AceAgreement::propose(const ClosingState& initial, const Value& own) {
  if (phase_ != WavePhase::idle || own_) throw std::logic_error("agreement already proposing");
  if (!check_validity(own, ctx_->validity)) throw std::invalid_argument("proposal is not externally valid");
  own_ = own;
  start_wave(initial);
}

void AceAgreement::start_wave(const ClosingState& state) {
  ++wave_;
  phase_ = WavePhase::engaging;
  ctx_->trace(sim::TraceKind::wave_start, InstanceId{id_, wave_, kNoParty}, state.digest());

  instances_.clear();
  engage_done_ = PartySet{};
  auto lineage = [this](const InstanceId& i) {
    auto it = chosen_.find(i.wave);
    return i.agreement == id_ && it != chosen_.end() && it->second == i.leader;
  };
  for (PartyId leader = 0; leader < ctx_->config.n; ++leader)
    instances_.emplace(leader, std::make_unique<LbvInstance>(*ctx_, InstanceId{id_, wave_, leader}, lineage));
  for (auto& [leader, inst] : instances_)
    inst->engage(state, leader == ctx_->self ? own_ : std::nullopt);

  barrier_ = std::make_unique<Barrier>(*ctx_, BarrierId{BarrierScope::wave, id_, wave_});
  election_ = std::make_unique<Election>(*ctx_, CoinId{id_, wave_}, *oracle_);
  phase_ = WavePhase::syncing;
  barrier_->sync();

  if (ctx_->acting(ctx_->behavior.bogus_shares)) {
    barrier_->ready();
    election_->send_share();
    for (PartyId leader = 0; leader < ctx_->config.n; ++leader)
      ctx_->net->send(leader, EngageDoneMsg{InstanceId{id_, wave_, leader}});
  }

  const auto wave = wave_;
  for (auto& [from, body] : future_.take(wave)) {
    if (wave_ != wave) break;  // a replayed message completed this wave
    dispatch(from, body);
  }
}

void AceAgreement::on_message(PartyId from, const Payload& body) {
  if (std::holds_alternative<DecideMsg>(body)) return;
  const auto round = meta_of(body).round;
  if (wave_ == 0 || round > wave_) {
    future_.hold(wave_, round, from, body);
    return;
  }
  if (round < wave_ || phase_ == WavePhase::done) return;
  dispatch(from, body);
}

void AceAgreement::dispatch(PartyId from, const Payload& body) {
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, StepMsg> || std::is_same_v<T, VoteMsg> || std::is_same_v<T, ClosingMsg>) {
          auto it = instances_.find(m.instance.leader);
          if (it == instances_.end() || m.instance.agreement != id_) return;
          handle(m.instance.leader, it->second->on_message(from, body));
        } else if constexpr (std::is_same_v<T, EngageDoneMsg>) {
          on_engage_done(from, m);
        } else if constexpr (std::is_same_v<T, ShareMsg>) {
          if (barrier_ && barrier_->on_share(from, m)) on_barrier_resolved();
        } else if constexpr (std::is_same_v<T, TokenMsg>) {
          if (barrier_ && barrier_->on_token(from, m)) on_barrier_resolved();
        } else if constexpr (std::is_same_v<T, CoinShareMsg>) {
          if (!election_ || phase_ != WavePhase::electing) {
            if (election_) election_->on_share(from, m);
            return;
          }
          if (auto leader = election_->on_share(from, m)) on_elected(*leader);
        }
      },
      body);
}

void AceAgreement::handle(PartyId leader, const LbvEvents& ev) {
  if (ev.engaged) on_engage_resolved(leader);
  if (ev.wedged) on_wedge_resolved(*ev.wedged);
}

void AceAgreement::on_engage_resolved(PartyId leader) {
  ctx_->net->send(leader, EngageDoneMsg{InstanceId{id_, wave_, leader}});
}

void AceAgreement::on_engage_done(PartyId from, const EngageDoneMsg& m) {
  if (m.instance.leader != ctx_->self || m.instance.wave != wave_ || m.instance.agreement != id_) return;
  if (!engage_done_.insert(from)) return;
  if (engage_done_.size() >= ctx_->quorums.engage_done && barrier_) barrier_->ready();
}

void AceAgreement::on_barrier_resolved() {
  if (phase_ != WavePhase::syncing) return;
  phase_ = WavePhase::electing;
  if (auto leader = election_->elect()) on_elected(*leader);
}

void AceAgreement::on_elected(PartyId leader) {
  if (phase_ != WavePhase::electing) return;
  phase_ = WavePhase::exchanging;
  chosen_[wave_] = leader;
  auto keep = instances_.extract(leader);
  instances_.clear();  // all other instances of the wave are abandoned
  instances_.insert(std::move(keep));
  auto& inst = *instances_.at(leader);
  handle(leader, inst.wedge_and_exchange());
}

void AceAgreement::on_wedge_resolved(const WedgeResult& result) {
  if (phase_ != WavePhase::exchanging) return;
  phase_ = WavePhase::done;
  if (result.value) {
    const auto& v = *result.value;
    if (!decision_) {
      decision_ = DecisionRecord{v, wave_, ctx_->self, ctx_->net->now()};
      ctx_->trace(sim::TraceKind::decide, InstanceId{id_, wave_, v.proposer()}, v.digest(),
                  check_validity(v, ctx_->validity) ? 1 : 0);
    } else if (!(decision_->value == v)) {
      ctx_->trace(sim::TraceKind::violation, InstanceId{id_, wave_, v.proposer()}, v.digest(), 1);
    }
  }
  if (stopped_ || (wave_limit_ != 0 && wave_ >= wave_limit_)) return;
  start_wave(result.state);
}

}  // namespace ace
