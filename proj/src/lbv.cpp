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

#include "ace/lbv.hpp"

#include <string>

namespace ace {

bool cert_acceptable(const QuorumCert& cert, const InstanceId& within, const SignatureLedger& ledger,
                     std::uint32_t quorum, const LineageCheck& lineage) {
  if (cert.instance.agreement != within.agreement) return false;
  if (cert.instance.wave > within.wave) return false;
  if (cert.instance.wave == within.wave && cert.instance != within) return false;
  if (!verify_cert(cert, ledger, quorum)) return false;
  return !lineage || lineage(cert.instance);
}

bool safe_node(const StepMsg& proposal, const ClosingState& input, const ValidityPredicate& validity,
               const CertCheck& cert_ok) {
  if (proposal.step != 1 || proposal.value.empty()) return false;
  if (!check_validity(proposal.value, validity)) return false;
  if (proposal.justify) {
    const auto& j = *proposal.justify;
    if (j.instance.wave >= proposal.instance.wave) return false;
    if (!(j.value == proposal.value)) return false;
    if (!cert_ok(j)) return false;
  }
  if (!input.locked) return true;
  if (!proposal.justify) return false;
  const auto& lock = *input.locked;
  return proposal.justify->value == lock.value || outranks(*proposal.justify, lock);
}

LbvInstance::LbvInstance(const PartyContext& ctx, InstanceId id, LineageCheck lineage)
    : ctx_(&ctx), id_(id), lineage_(std::move(lineage)) {}

bool LbvInstance::cert_ok(const QuorumCert& c) const {
  return cert_acceptable(c, id_, *ctx_->ledger, ctx_->config.quorum(), lineage_);
}

Value LbvInstance::fresh_value(std::string_view tag) const {
  const auto n = ++ctx_->memory->fresh_counter;
  return make_value(ctx_->self, std::string(tag) + "-" + std::to_string(id_.agreement) + "-" + std::to_string(n),
                    ctx_->value_bytes);
}

void LbvInstance::engage(const ClosingState& input, std::optional<Value> proposal) {
  if (phase_ != LbvPhase::idle) return;  // engage after wedge, or twice
  phase_ = LbvPhase::engaged;
  input_ = input;
  local_ = input;
  ctx_->trace(sim::TraceKind::engage_invoke, id_, input.digest());
  if (is_leader() && !ctx_->acting(ctx_->behavior.silent_leader)) propose(std::move(proposal));
}

void LbvInstance::propose(std::optional<Value> proposal) {
  const auto& b = ctx_->behavior;
  Value value;
  std::optional<QuorumCert> justify;
  if (ctx_->acting(b.invalid_proposals)) {
    value = fresh_value("INVALID");
  } else if (ctx_->acting(b.stale_certs) && ctx_->memory->own_cert &&
             ctx_->memory->own_cert->instance.agreement == id_.agreement &&
             ctx_->memory->own_cert->instance.wave < id_.wave) {
    justify = ctx_->memory->own_cert;
    value = justify->value;
  } else if (ctx_->acting(b.forge_certs) && id_.wave > 1) {
    value = fresh_value("forged");
    QuorumCert fake{InstanceId{id_.agreement, id_.wave - 1, id_.leader}, kVoteSteps, value, {}};
    for (PartyId p = 0; p < ctx_->config.n; ++p) fake.signers.insert(p);
    justify = std::move(fake);
  } else if (ctx_->acting(b.fresh_proposals)) {
    value = fresh_value("fresh");
  } else if (input_.high) {
    justify = input_.high;
    value = input_.high->value;
  } else if (proposal) {
    value = *proposal;
  } else {
    return;  // nothing to propose
  }

  leader_step_ = 1;
  StepMsg main{id_, 1, value, justify};
  if (ctx_->acting(b.equivocate)) {
    StepMsg alt{id_, 1, fresh_value("equivocal"), std::nullopt};
    for (PartyId p = 0; p < ctx_->config.n; ++p) ctx_->net->send(p, (p % 2 == 1) ? alt : main);
  } else {
    ctx_->net->broadcast(std::move(main));
  }
}

void LbvInstance::vote(int step, const Value& v) {
  voted_[step] = true;
  ctx_->signer.sign(vote_subject(id_, step, v.digest()));
  ctx_->net->send(id_.leader, VoteMsg{id_, step, v});
}

LbvEvents LbvInstance::on_message(PartyId from, const Payload& body) {
  if (const auto* s = std::get_if<StepMsg>(&body)) return on_step(from, *s);
  if (const auto* v = std::get_if<VoteMsg>(&body)) {
    on_vote(from, *v);
    return {};
  }
  if (const auto* c = std::get_if<ClosingMsg>(&body)) return on_closing(from, *c);
  return {};
}

LbvEvents LbvInstance::on_step(PartyId from, const StepMsg& m) {
  LbvEvents ev;
  if (phase_ != LbvPhase::engaged || from != id_.leader || m.instance != id_) return ev;
  if (m.step < 1 || m.step > kFinalStep) return ev;

  if (m.step == 1) {
    if (voted_[1]) return ev;
    const bool skip = ctx_->behavior.skip_safe_node;
    if (!skip && !safe_node(m, input_, ctx_->validity, [this](const QuorumCert& c) { return cert_ok(c); }))
      return ev;
    if (m.justify && (skip || cert_ok(*m.justify))) local_.raise_high(*m.justify);
    vote(1, m.value);
    return ev;
  }

  // Later steps carry the previous step's certificate for this instance.
  if (!m.justify) return ev;
  const auto& qc = *m.justify;
  if (qc.instance != id_ || qc.step != m.step - 1 || !(qc.value == m.value)) return ev;
  if (!verify_cert(qc, *ctx_->ledger, ctx_->config.quorum())) return ev;

  local_.raise_high(qc);
  if (m.step == 3) local_.raise_lock(qc);
  if (m.step < kFinalStep) {
    if (!voted_[m.step]) vote(m.step, m.value);
    return ev;
  }
  local_.raise_decision(qc);
  if (!engage_result_) {
    engage_result_ = m.value;
    ctx_->trace(sim::TraceKind::engage_resolve, id_, m.value.digest());
    ev.engaged = m.value;
  }
  return ev;
}

void LbvInstance::on_vote(PartyId from, const VoteMsg& m) {
  if (!is_leader() || phase_ != LbvPhase::engaged || m.instance != id_) return;
  if (m.step != leader_step_ || m.step < 1 || m.step > kVoteSteps) return;
  if (!ctx_->ledger->verify(from, vote_subject(id_, m.step, m.value.digest()))) return;

  auto& [value, signers] = tally_[{m.step, m.value.digest()}];
  if (value.empty()) value = m.value;
  if (!signers.insert(from)) return;
  if (signers.size() < ctx_->config.quorum()) return;

  QuorumCert qc{id_, m.step, value, signers};
  auto& own = ctx_->memory->own_cert;
  if (!own || outranks(qc, *own)) own = qc;
  leader_step_ = m.step + 1;
  ctx_->net->broadcast(StepMsg{id_, m.step + 1, value, std::move(qc)});
}

LbvEvents LbvInstance::wedge_and_exchange() {
  if (phase_ == LbvPhase::wedged || phase_ == LbvPhase::done) return {};
  phase_ = LbvPhase::wedged;
  ctx_->trace(sim::TraceKind::wedge_invoke, id_, local_.digest());
  closings_[ctx_->self] = Received{local_, true};
  ctx_->net->broadcast(ClosingMsg{id_, local_});
  return try_finish_wedge();
}

LbvEvents LbvInstance::on_closing(PartyId from, const ClosingMsg& m) {
  if (m.instance != id_ || phase_ == LbvPhase::done) return {};
  closings_.try_emplace(from, Received{m.state, std::nullopt});
  if (phase_ != LbvPhase::wedged) return {};
  return try_finish_wedge();
}

LbvEvents LbvInstance::try_finish_wedge() {
  LbvEvents ev;
  std::size_t valid = 0;
  for (auto& [from, r] : closings_) {
    if (!r.valid) {
      bool ok = true;
      for (const auto* c : {&r.state.locked, &r.state.high, &r.state.decision})
        if (*c && !cert_ok(**c)) ok = false;
      if (r.state.decision && r.state.decision->step != kVoteSteps) ok = false;
      r.valid = ok;
    }
    if (*r.valid) ++valid;
  }
  if (valid < ctx_->config.quorum()) return ev;

  WedgeResult out;
  out.state = local_;
  for (const auto& [from, r] : closings_) {
    if (!*r.valid) continue;
    out.state.absorb(r.state);
    if (!out.value && r.state.decision && r.state.decision->instance == id_) out.value = r.state.decision->value;
  }
  phase_ = LbvPhase::done;
  closings_.clear();
  ctx_->trace(sim::TraceKind::wedge_resolve, id_, out.state.digest(), out.value ? out.value->digest() : 0);
  wedge_result_ = out;
  ev.wedged = std::move(out);
  return ev;
}

}  // namespace ace
