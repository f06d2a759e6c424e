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

#include "ace/messages.hpp"

namespace ace {

std::uint64_t BarrierId::digest() const {
  return hash_combine(hash_combine(mix64(static_cast<std::uint64_t>(scope) + 1), agreement), index);
}

std::uint64_t CoinId::digest() const { return hash_combine(mix64(agreement), wave); }

std::uint64_t share_subject(const BarrierId& id) { return hash_combine(0x7368617265ull, id.digest()); }

std::uint64_t coin_subject(const CoinId& id) { return hash_combine(0x636f696eull, id.digest()); }

std::string_view to_string(MsgKind k) {
  switch (k) {
    case MsgKind::step: return "STEP";
    case MsgKind::vote: return "VOTE";
    case MsgKind::closing: return "CLOSING";
    case MsgKind::engage_done: return "ENGAGE-DONE";
    case MsgKind::share: return "SHARE";
    case MsgKind::token: return "TOKEN";
    case MsgKind::coin_share: return "COINSHARE";
    case MsgKind::decide: return "DECIDE";
    case MsgKind::none: return "NONE";
  }
  return "?";
}

namespace {

constexpr std::size_t kHeaderBytes = 32;
constexpr std::size_t kSignatureBytes = 48;

std::size_t cert_bytes(const std::optional<QuorumCert>& c) {
  return c ? kHeaderBytes + kSignatureBytes + c->value.size() : 0;
}

}  // namespace

PayloadMeta meta_of(const Payload& p) {
  return std::visit(
      [](const auto& m) -> PayloadMeta {
        using T = std::decay_t<decltype(m)>;
        PayloadMeta meta;
        if constexpr (std::is_same_v<T, StepMsg>) {
          meta = {MsgKind::step, m.instance.agreement, m.instance.wave, m.instance.leader, m.step,
                  kHeaderBytes + kSignatureBytes + m.value.size() + cert_bytes(m.justify)};
        } else if constexpr (std::is_same_v<T, VoteMsg>) {
          meta = {MsgKind::vote, m.instance.agreement, m.instance.wave, m.instance.leader, m.step,
                  kHeaderBytes + kSignatureBytes};
        } else if constexpr (std::is_same_v<T, ClosingMsg>) {
          meta = {MsgKind::closing, m.instance.agreement, m.instance.wave, m.instance.leader, 0,
                  kHeaderBytes + cert_bytes(m.state.locked) + cert_bytes(m.state.high) +
                      cert_bytes(m.state.decision)};
        } else if constexpr (std::is_same_v<T, EngageDoneMsg>) {
          meta = {MsgKind::engage_done, m.instance.agreement, m.instance.wave, m.instance.leader, 0, kHeaderBytes};
        } else if constexpr (std::is_same_v<T, ShareMsg>) {
          meta = {MsgKind::share, m.id.agreement, m.id.scope == BarrierScope::wave ? m.id.index : 0, kNoParty, 0,
                  kHeaderBytes + kSignatureBytes};
        } else if constexpr (std::is_same_v<T, TokenMsg>) {
          meta = {MsgKind::token, m.id.agreement, m.id.scope == BarrierScope::wave ? m.id.index : 0, kNoParty, 0,
                  kHeaderBytes + kSignatureBytes};
        } else if constexpr (std::is_same_v<T, CoinShareMsg>) {
          meta = {MsgKind::coin_share, m.id.agreement, m.id.wave, kNoParty, 0, kHeaderBytes + kSignatureBytes};
        } else if constexpr (std::is_same_v<T, DecideMsg>) {
          meta = {MsgKind::decide, m.slot, 0, kNoParty, 0, kHeaderBytes + m.value.size()};
        }
        return meta;
      },
      p);
}

}  // namespace ace
