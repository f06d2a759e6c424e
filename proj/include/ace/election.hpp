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

#include <functional>
#include <optional>
#include <set>

#include "ace/context.hpp"
#include "ace/messages.hpp"
#include "ace/party_set.hpp"

namespace ace {

/// Global common coin. The seed is private: the only way to learn a coin is
/// to present f+1 valid shares for it, which stands in for combining a
/// threshold signature and hashing it. Adversary code never holds a
/// reference to this object.
class CoinOracle {
 public:
  using Observer = std::function<void(const CoinId&, PartyId leader, Time when)>;

  CoinOracle(std::uint64_t seed, const Config& config, const SignatureLedger& ledger);

  /// Returns the elected party if `shares` holds at least f+1 valid shares
  /// for `id`.
  std::optional<PartyId> reveal(const CoinId& id, const PartySet& shares, Time now);

  /// Called once per coin id, on its first reveal.
  void set_observer(Observer obs) { observer_ = std::move(obs); }

  std::size_t revealed_count() const { return revealed_.size(); }

 private:
  PartyId coin_value(const CoinId& id) const;

  std::uint64_t seed_;
  std::uint32_t n_;
  std::uint32_t threshold_;
  const SignatureLedger* ledger_;
  std::set<CoinId> revealed_;
  Observer observer_;
};

/// One party's participation in one leader election.
class Election {
 public:
  Election(const PartyContext& ctx, CoinId id, CoinOracle& oracle);

  const CoinId& id() const { return id_; }

  /// Broadcasts this party's share and starts waiting. Returns the leader if
  /// enough shares are already present.
  std::optional<PartyId> elect();

  /// Broadcasts a share without waiting for the outcome.
  void send_share();

  std::optional<PartyId> on_share(PartyId from, const CoinShareMsg& m);

  bool invoked() const { return invoked_; }
  const std::optional<PartyId>& outcome() const { return outcome_; }
  const PartySet& shares() const { return shares_; }

 private:
  std::optional<PartyId> try_resolve();

  const PartyContext* ctx_;
  CoinId id_;
  CoinOracle* oracle_;
  PartySet shares_;
  bool share_sent_ = false;
  bool invoked_ = false;
  std::optional<PartyId> outcome_;
};

}  // namespace ace
