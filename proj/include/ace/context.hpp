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

#include <cstdint>
#include <memory>
#include <optional>

#include "ace/cert.hpp"
#include "ace/core.hpp"
#include "ace/messages.hpp"
#include "ace/signing.hpp"
#include "ace/sim/trace.hpp"

namespace ace {

using TimerId = std::uint64_t;

/// What a protocol party can do to the outside world. Implemented by the
/// simulator (one port per party) and by recording fakes in tests.
class Network {
 public:
  virtual ~Network() = default;
  virtual void send(PartyId to, Payload body) = 0;
  /// Sends to all n parties, including self.
  virtual void broadcast(Payload body) = 0;
  virtual Time now() const = 0;
  virtual TimerId set_timer(Duration after) = 0;
  virtual void cancel_timer(TimerId id) = 0;
  virtual void record(const sim::TraceEvent& e) = 0;
};

/// Byzantine deviations a faulty party may apply to otherwise protocol
/// shaped behavior. All flags are false for a correct party.
struct Behavior {
  Time active_from = 0;
  bool silent_leader = false;     // never drives own instance/view
  bool equivocate = false;        // different step-1 values to odd recipients
  bool bogus_shares = false;      // barrier/coin shares and ENGAGE-DONEs without cause
  bool fresh_proposals = false;   // ignore the closing state when proposing
  bool stale_certs = false;       // justify with own certs from unchosen instances
  bool forge_certs = false;       // justify with certs naming signers that never signed
  bool invalid_proposals = false; // propose externally invalid values
  bool skip_safe_node = false;    // mutation switch: vote without the safety rule

  bool any() const {
    return silent_leader || equivocate || bogus_shares || fresh_proposals || stale_certs || forge_certs ||
           invalid_proposals || skip_safe_node;
  }
};

/// Scratch memory a byzantine party keeps across instances.
struct ByzantineMemory {
  std::optional<QuorumCert> own_cert;
  std::uint64_t fresh_counter = 0;
};

struct PartyContext {
  PartyId self = 0;
  Config config;
  Quorums quorums;
  Network* net = nullptr;
  const SignatureLedger* ledger = nullptr;
  Signer signer;
  ValidityPredicate validity;
  Behavior behavior;
  std::shared_ptr<ByzantineMemory> memory = std::make_shared<ByzantineMemory>();
  std::size_t value_bytes = 64;

  bool acting(bool flag) const { return flag && net->now() >= behavior.active_from; }

  void trace(sim::TraceKind kind, const InstanceId& id, std::uint64_t digest = 0, std::uint64_t aux = 0,
             int step = 0) const {
    sim::TraceEvent e;
    e.time = net->now();
    e.kind = kind;
    e.party = self;
    e.agreement = id.agreement;
    e.round = id.wave;
    e.leader = id.leader;
    e.step = step;
    e.digest = digest;
    e.aux = aux;
    net->record(e);
  }
};

/// A simulated process: receives messages and timer expirations.
class Node {
 public:
  virtual ~Node() = default;
  virtual void start() = 0;
  virtual void on_message(PartyId from, const Payload& body) = 0;
  virtual void on_timer(TimerId id) = 0;
};

/// Deterministic value of `bytes` length tagged by proposer and a label.
Value make_value(PartyId proposer, std::string_view label, std::size_t bytes);

}  // namespace ace
