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
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ace/core.hpp"
#include "ace/messages.hpp"

namespace ace::sim {

enum class TraceKind : std::uint8_t {
  send,
  deliver,
  engage_invoke,   // digest = input state digest
  engage_resolve,  // digest = value digest
  wedge_invoke,
  wedge_resolve,   // digest = state digest, aux = value digest or 0 for bottom
  barrier_ready,   // agreement/round/step carry the barrier id (step = scope)
  barrier_sync,
  barrier_token,   // aux = signer bitmask (first 64 parties)
  elect_invoke,
  elect_resolve,   // leader = elected party
  coin_reveal,
  decide,          // digest = value digest, leader = proposer, aux = 1 if externally valid
  decide_quorum,   // f+1 DECIDE tally reached; digest = value digest
  output,          // round = slot, digest = value digest, leader = proposer, aux = bytes
  slot_start,
  slot_free,       // aux = resource gauge before freeing
  view_start,      // aux = timeout in ticks
  view_timeout,
  wave_start,
  violation,       // aux = violation code
  crash,
};

std::string_view to_string(TraceKind k);

enum class TraceLevel : std::uint8_t {
  lifecycle,  // protocol lifecycle events only
  messages,   // plus every send
  full,       // plus every delivery
};

struct TraceEvent {
  Time time = 0;
  TraceKind kind = TraceKind::send;
  PartyId party = kNoParty;
  PartyId peer = kNoParty;
  MsgKind msg = MsgKind::none;
  AgreementId agreement = 0;
  std::uint64_t round = 0;
  PartyId leader = kNoParty;
  std::int32_t step = 0;
  std::uint64_t digest = 0;
  std::uint64_t aux = 0;
};

/// Canonical single-line JSON encoding (sorted keys, no whitespace).
std::string to_canonical_json(const TraceEvent& e);

/// Append-only event log of one simulation run.
class Trace {
 public:
  explicit Trace(TraceLevel level = TraceLevel::messages) : level_(level) {}

  void append(const TraceEvent& e) { events_.push_back(e); }
  bool wants(TraceKind k) const {
    if (k == TraceKind::deliver) return level_ == TraceLevel::full;
    if (k == TraceKind::send) return level_ != TraceLevel::lifecycle;
    return true;
  }

  const std::vector<TraceEvent>& events() const { return events_; }
  TraceLevel level() const { return level_; }

  /// 64-bit FNV-1a digest over the newline-joined canonical encoding.
  std::uint64_t hash() const;
  void write_ndjson(std::ostream& os) const;

 private:
  TraceLevel level_;
  std::vector<TraceEvent> events_;
};

}  // namespace ace::sim
