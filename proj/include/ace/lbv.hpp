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

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "ace/cert.hpp"
#include "ace/context.hpp"
#include "ace/messages.hpp"

namespace ace {

enum class LbvPhase { idle, engaged, wedged, done };

struct WedgeResult {
  ClosingState state;
  std::optional<Value> value;  // nullopt is bottom
};

/// Deferred results that became available while handling one input.
struct LbvEvents {
  std::optional<Value> engaged;
  std::optional<WedgeResult> wedged;
};

/// True iff `id` is the instance chosen for its wave (or view). Only
/// certificates from chosen instances may justify proposals or enter a
/// closing state.
using LineageCheck = std::function<bool(const InstanceId&)>;

using CertCheck = std::function<bool(const QuorumCert&)>;

/// Validity of a certificate relative to an instance: provenance, quorum
/// size, same agreement, no later wave than `within`, and chosen lineage.
bool cert_acceptable(const QuorumCert& cert, const InstanceId& within, const SignatureLedger& ledger,
                     std::uint32_t quorum, const LineageCheck& lineage);

/// The voting rule for a step-1 proposal. The value must be externally
/// valid and match its justification; a locked party additionally requires
/// a justification for the locked value or one that outranks the lock.
bool safe_node(const StepMsg& proposal, const ClosingState& input, const ValidityPredicate& validity,
               const CertCheck& cert_ok);

/// One party's view of one leader-based view instance, backed by a
/// four-step HotStuff-style leader phase.
class LbvInstance {
 public:
  LbvInstance(const PartyContext& ctx, InstanceId id, LineageCheck lineage);

  const InstanceId& id() const { return id_; }
  LbvPhase phase() const { return phase_; }
  bool is_leader() const { return ctx_->self == id_.leader; }

  /// Begins participating. The leader also emits the step-1 proposal, using
  /// `proposal` when the input state carries no certificate.
  void engage(const ClosingState& input, std::optional<Value> proposal);

  /// Stops engage from ever resolving and exchanges closing states.
  /// Idempotent.
  LbvEvents wedge_and_exchange();

  LbvEvents on_message(PartyId from, const Payload& body);

  const ClosingState& local_state() const { return local_; }
  const std::optional<Value>& engage_result() const { return engage_result_; }
  const std::optional<WedgeResult>& wedge_result() const { return wedge_result_; }

 private:
  LbvEvents on_step(PartyId from, const StepMsg& m);
  void on_vote(PartyId from, const VoteMsg& m);
  LbvEvents on_closing(PartyId from, const ClosingMsg& m);
  LbvEvents try_finish_wedge();

  void propose(std::optional<Value> proposal);
  void vote(int step, const Value& v);
  bool cert_ok(const QuorumCert& c) const;
  Value fresh_value(std::string_view tag) const;

  const PartyContext* ctx_;
  InstanceId id_;
  LineageCheck lineage_;
  LbvPhase phase_ = LbvPhase::idle;

  ClosingState input_;
  ClosingState local_;
  std::array<bool, kVoteSteps + 1> voted_{};
  std::optional<Value> engage_result_;

  // Leader side.
  int leader_step_ = 0;
  std::map<std::pair<int, std::uint64_t>, std::pair<Value, PartySet>> tally_;

  // Exchange side; entries are validated lazily once the instance is chosen.
  struct Received {
    ClosingState state;
    std::optional<bool> valid;
  };
  std::map<PartyId, Received> closings_;
  std::optional<WedgeResult> wedge_result_;
};

}  // namespace ace
