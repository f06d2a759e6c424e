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

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>

#include "ace/cert.hpp"
#include "ace/core.hpp"
#include "ace/party_set.hpp"

namespace ace {

enum class BarrierScope : std::uint8_t { wave, slot };

struct BarrierId {
  BarrierScope scope = BarrierScope::wave;
  AgreementId agreement = 0;
  std::uint64_t index = 0;

  friend auto operator<=>(const BarrierId&, const BarrierId&) = default;
  std::uint64_t digest() const;
};

struct CoinId {
  AgreementId agreement = 0;
  std::uint64_t wave = 0;

  friend auto operator<=>(const CoinId&, const CoinId&) = default;
  std::uint64_t digest() const;
};

std::uint64_t share_subject(const BarrierId& id);
std::uint64_t coin_subject(const CoinId& id);

// Wire messages. The sender is stamped by the network, links are
// authenticated.

struct StepMsg {
  InstanceId instance;
  int step = 0;
  Value value;
  std::optional<QuorumCert> justify;
};

struct VoteMsg {
  InstanceId instance;
  int step = 0;
  Value value;
};

struct ClosingMsg {
  InstanceId instance;
  ClosingState state;
};

struct EngageDoneMsg {
  InstanceId instance;
};

struct ShareMsg {
  BarrierId id;
};

struct TokenMsg {
  BarrierId id;
  PartySet signers;
};

struct CoinShareMsg {
  CoinId id;
};

struct DecideMsg {
  AgreementId slot = 0;
  Value value;
};

using Payload =
    std::variant<StepMsg, VoteMsg, ClosingMsg, EngageDoneMsg, ShareMsg, TokenMsg, CoinShareMsg, DecideMsg>;

enum class MsgKind : std::uint8_t { step, vote, closing, engage_done, share, token, coin_share, decide, none };

std::string_view to_string(MsgKind k);

/// Public routing metadata of a payload. This is everything a network-level
/// observer can see besides the endpoints.
struct PayloadMeta {
  MsgKind kind = MsgKind::none;
  AgreementId agreement = 0;
  std::uint64_t round = 0;  // wave or view; 0 for slot-scoped messages
  PartyId leader = kNoParty;
  int step = 0;
  std::size_t bytes = 0;
};

PayloadMeta meta_of(const Payload& p);

}  // namespace ace
