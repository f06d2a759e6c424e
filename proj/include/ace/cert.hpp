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
#include <optional>

#include "ace/core.hpp"
#include "ace/party_set.hpp"
#include "ace/signing.hpp"

namespace ace {

/// Steps of the leader-driven phase. Parties vote on steps 1..3; the step-4
/// message carries the step-3 certificate and is the decision evidence.
inline constexpr int kVoteSteps = 3;
inline constexpr int kFinalStep = 4;

std::uint64_t vote_subject(const InstanceId& instance, int step, std::uint64_t value_digest);

/// A value plus at least n-f distinct signers that voted for it on one step
/// of one instance.
struct QuorumCert {
  InstanceId instance;
  int step = 0;
  Value value;
  PartySet signers;

  std::uint64_t digest() const;
};

/// Strict order on certificates: later wave, then later step; on a tie the
/// lower leader index ranks higher.
bool outranks(const QuorumCert& a, const QuorumCert& b);

/// Provenance and size check only; lineage is checked by the caller.
bool verify_cert(const QuorumCert& cert, const SignatureLedger& ledger, std::uint32_t quorum);

/// Safety-carrying state passed from one chosen instance to the next.
struct ClosingState {
  std::optional<QuorumCert> locked;
  std::optional<QuorumCert> high;
  std::optional<QuorumCert> decision;

  void raise_high(const QuorumCert& c);
  void raise_lock(const QuorumCert& c);
  void raise_decision(const QuorumCert& c);

  /// Pointwise supremum with `other`.
  void absorb(const ClosingState& other);

  std::uint64_t digest() const;
  friend bool operator==(const ClosingState& a, const ClosingState& b) { return a.digest() == b.digest(); }
};

}  // namespace ace
