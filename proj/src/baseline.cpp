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

#include "ace/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ace {

void TimeoutPolicy::validate() const {
  if (base <= 0) throw ConfigError("timeout must be positive");
  if (kind != TimeoutKind::adaptive) return;
  if (floor <= 0 || ceiling < floor) throw ConfigError("adaptive timeout needs 0 < floor <= ceiling");
  if (base < floor || base > ceiling) throw ConfigError("adaptive initial timeout outside [floor, ceiling]");
  if (!(up > 1.0) || !(down > 0.0) || !(down < 1.0)) throw ConfigError("adaptive factors need up > 1 > down > 0");
}

std::string to_string(TimeoutKind k) {
  switch (k) {
    case TimeoutKind::fixed: return "fixed";
    case TimeoutKind::conservative: return "conservative";
    case TimeoutKind::adaptive: return "adaptive";
  }
  return "?";
}

TimeoutKind parse_timeout_kind(const std::string& s) {
  if (s == "fixed") return TimeoutKind::fixed;
  if (s == "conservative") return TimeoutKind::conservative;
  if (s == "adaptive") return TimeoutKind::adaptive;
  throw ConfigError("unknown timeout policy '" + s + "'");
}

PartyId get_leader(std::uint64_t view, std::uint32_t n, std::uint64_t offset) {
  if (view == 0 || n == 0) throw std::invalid_argument("views start at 1");
  return static_cast<PartyId>((offset + view - 1) % n);
}

TimeoutController::TimeoutController(TimeoutPolicy policy) : policy_(policy), current_(policy.base) {
  policy_.validate();
}

Duration TimeoutController::get_timeout(std::uint64_t) const { return current_; }

void TimeoutController::record_outcome(bool timed_out) {
  if (policy_.kind != TimeoutKind::adaptive) return;
  const double factor = timed_out ? policy_.up : policy_.down;
  const auto next = static_cast<Duration>(std::llround(static_cast<double>(current_) * factor));
  current_ = std::clamp(next, policy_.floor, policy_.ceiling);
}

ViewAgreement::ViewAgreement(const PartyContext& ctx, AgreementId id, TimeoutController& timeouts,
                             std::uint64_t leader_offset, std::uint64_t view_lookahead)
    : ctx_(&ctx), id_(id), timeouts_(&timeouts), offset_(leader_offset), future_(view_lookahead) {}

ViewAgreement::~ViewAgreement() {
  if (timer_) ctx_->net->cancel_timer(*timer_);
}

PartyId ViewAgreement::leader_of(std::uint64_t view) const { return get_leader(view, ctx_->config.n, offset_); }

std::size_t ViewAgreement::resource_gauge() const {
  return 1 + (instance_ ? 1 : 0) + (timer_ ? 1 : 0) + future_.size();
}

void ViewAgreement::propose(const ClosingState& initial, const Value& own) {
  if (own_ || view_ != 0) throw std::logic_error("agreement already proposing");
  if (!check_validity(own, ctx_->validity)) throw std::invalid_argument("proposal is not externally valid");
  own_ = own;
  run_view(initial);
}

void ViewAgreement::run_view(const ClosingState& state) {
  ++view_;
  timed_out_ = false;
  wedging_ = false;
  const PartyId leader = leader_of(view_);
  const InstanceId iid{id_, view_, leader};
  const Duration timeout = timeouts_->get_timeout(view_);
  ctx_->trace(sim::TraceKind::view_start, iid, state.digest(), static_cast<std::uint64_t>(timeout));

  auto lineage = [this](const InstanceId& i) { return i.agreement == id_ && i.wave >= 1 && leader_of(i.wave) == i.leader; };
  instance_ = std::make_unique<LbvInstance>(*ctx_, iid, lineage);
  timer_ = ctx_->net->set_timer(timeout);
  instance_->engage(state, leader == ctx_->self ? own_ : std::nullopt);

  const auto view = view_;
  for (auto& [from, body] : future_.take(view)) {
    if (view_ != view) break;
    on_message(from, body);
  }
}

void ViewAgreement::on_message(PartyId from, const Payload& body) {
  if (!std::holds_alternative<StepMsg>(body) && !std::holds_alternative<VoteMsg>(body) &&
      !std::holds_alternative<ClosingMsg>(body))
    return;
  const auto meta = meta_of(body);
  if (meta.agreement != id_) return;
  if (view_ == 0 || meta.round > view_) {
    future_.hold(view_, meta.round, from, body);
    return;
  }
  if (meta.round < view_ || !instance_) return;
  handle(instance_->on_message(from, body));
}

bool ViewAgreement::on_timer(TimerId id) {
  if (!timer_ || *timer_ != id) return false;
  timer_.reset();
  if (!instance_ || wedging_) return true;
  timed_out_ = true;
  ctx_->trace(sim::TraceKind::view_timeout, instance_->id(), 0, 0);
  wedging_ = true;
  handle(instance_->wedge_and_exchange());
  return true;
}

void ViewAgreement::handle(const LbvEvents& ev) {
  if (ev.engaged) {
    record_decision(*ev.engaged);
    finish_engage();
    return;  // the wedge below was triggered by finish_engage
  }
  if (ev.wedged) on_wedge_resolved(*ev.wedged);
}

void ViewAgreement::finish_engage() {
  if (wedging_) return;
  wedging_ = true;
  if (timer_) {
    ctx_->net->cancel_timer(*timer_);
    timer_.reset();
  }
  handle(instance_->wedge_and_exchange());
}

void ViewAgreement::record_decision(const Value& v) {
  const InstanceId iid = instance_->id();
  if (!decision_) {
    decision_ = DecisionRecord{v, view_, ctx_->self, ctx_->net->now()};
    ctx_->trace(sim::TraceKind::decide, InstanceId{id_, view_, v.proposer()}, v.digest(),
                check_validity(v, ctx_->validity) ? 1 : 0);
  } else if (!(decision_->value == v)) {
    ctx_->trace(sim::TraceKind::violation, InstanceId{id_, iid.wave, v.proposer()}, v.digest(), 1);
  }
}

void ViewAgreement::on_wedge_resolved(const WedgeResult& result) {
  // A decision certificate learned during the exchange is as good as one
  // received in the leader phase.
  if (result.value) record_decision(*result.value);
  timeouts_->record_outcome(timed_out_);
  instance_.reset();
  if (stopped_ || (view_limit_ != 0 && view_ >= view_limit_)) return;
  run_view(result.state);
}

}  // namespace ace
