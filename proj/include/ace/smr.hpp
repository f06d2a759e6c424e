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
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "ace/agreement.hpp"
#include "ace/barrier.hpp"
#include "ace/baseline.hpp"
#include "ace/context.hpp"
#include "ace/election.hpp"

namespace ace {

enum class Protocol { ace, baseline };

std::string to_string(Protocol p);
Protocol parse_protocol(const std::string& s);

struct SmrOptions {
  Protocol protocol = Protocol::ace;
  TimeoutPolicy timeout;
  std::uint64_t max_slots = 0;        // 0 = run until the simulation ends
  std::uint64_t slot_lookahead = 1024;
  std::uint64_t wave_lookahead = 64;
  bool crash_echo = false;            // accept a single DECIDE, skip the slot barrier
};

/// Supplies the value this party proposes for a slot.
using ProposalSource = std::function<Value(AgreementId slot)>;

struct SlotRecord {
  AgreementId slot = 0;
  std::map<std::uint64_t, std::pair<Value, PartySet>> tally;  // by value digest
  std::optional<Value> value;
  bool decided = false;
  bool output_emitted = false;
};

struct OutputEntry {
  AgreementId slot = 0;
  Value value;
  Time started = 0;
  Time output = 0;
};

/// Slot-by-slot replicated log. Each slot runs one agreement; a party that
/// decided (or saw f+1 matching DECIDE messages) echoes DECIDE, passes the
/// slot barrier, frees every slot resource and emits the output.
class SmrReplica final : public Node {
 public:
  /// Throws std::invalid_argument when `proposals` is empty.
  SmrReplica(PartyContext ctx, CoinOracle& oracle, SmrOptions options, ProposalSource proposals);
  SmrReplica(PartyContext ctx, CoinOracle& oracle, SmrOptions options, std::vector<Value> proposals);

  void start() override;
  void on_message(PartyId from, const Payload& body) override;
  void on_timer(TimerId id) override;

  const std::vector<OutputEntry>& outputs() const { return outputs_; }
  AgreementId current_slot() const { return slot_; }
  bool finished() const { return finished_; }
  /// Live objects, timers and buffered messages attributed to `slot`.
  std::size_t resource_gauge(AgreementId slot) const;
  const PartyContext& context() const { return ctx_; }

 private:
  void start_slot(AgreementId slot);
  void route(PartyId from, const Payload& body);
  void on_decide(PartyId from, const DecideMsg& m);
  void progress();
  void free_slot();
  SlotRecord& record(AgreementId slot);

  PartyContext ctx_;
  CoinOracle* oracle_;
  SmrOptions options_;
  ProposalSource proposals_;
  TimeoutController timeouts_;

  AgreementId slot_ = 0;
  Time slot_started_ = 0;
  std::uint64_t leader_offset_ = 0;
  bool finished_ = false;
  bool decide_sent_ = false;
  bool barrier_passed_ = false;
  std::unique_ptr<AceAgreement> ace_;
  std::unique_ptr<ViewAgreement> view_;
  std::unique_ptr<Barrier> slot_barrier_;
  std::map<AgreementId, SlotRecord> records_;
  std::map<AgreementId, std::vector<std::pair<PartyId, Payload>>> pending_;
  std::size_t pending_count_ = 0;
  std::vector<OutputEntry> outputs_;
};

/// One agreement instance hosted as a node; used for single-shot
/// statistics. Waves (views) continue until `stop_all` is called or the
/// round limit is reached.
class SingleShotNode final : public Node {
 public:
  SingleShotNode(PartyContext ctx, CoinOracle& oracle, Protocol protocol, TimeoutPolicy timeout, Value proposal,
                 std::uint64_t round_limit);

  void start() override;
  void on_message(PartyId from, const Payload& body) override;
  void on_timer(TimerId id) override;

  void stop();
  const std::optional<DecisionRecord>& decision() const;
  std::uint64_t round() const;

 private:
  PartyContext ctx_;
  TimeoutController timeouts_;
  Value proposal_;
  std::uint64_t round_limit_;
  std::unique_ptr<AceAgreement> ace_;
  std::unique_ptr<ViewAgreement> view_;
};

}  // namespace ace
