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

#include <optional>

#include "ace/context.hpp"
#include "ace/messages.hpp"
#include "ace/party_set.hpp"

namespace ace {

/// Share-broadcast barrier: a sync resolves on n-f distinct shares (then a
/// token is broadcast) or on receipt of a valid token (then it is
/// forwarded).
class Barrier {
 public:
  Barrier(const PartyContext& ctx, BarrierId id);

  const BarrierId& id() const { return id_; }

  /// Broadcasts this party's share once. No-op after the first call or once
  /// the sync has resolved.
  void ready();

  /// Starts waiting. Returns true if this call resolved the sync.
  bool sync();

  /// Each returns true exactly when the message resolved the sync.
  bool on_share(PartyId from, const ShareMsg& m);
  bool on_token(PartyId from, const TokenMsg& m);

  bool ready_sent() const { return ready_sent_; }
  bool resolved() const { return resolved_; }
  const PartySet& shares() const { return shares_; }
  const std::optional<PartySet>& token() const { return token_; }

 private:
  bool token_valid(const PartySet& signers) const;
  bool try_resolve();
  void trace(sim::TraceKind kind, std::uint64_t aux = 0) const;

  const PartyContext* ctx_;
  BarrierId id_;
  PartySet shares_;
  std::optional<PartySet> token_;
  bool token_from_shares_ = false;
  bool ready_sent_ = false;
  bool sync_invoked_ = false;
  bool resolved_ = false;
};

}  // namespace ace
