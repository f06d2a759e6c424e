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

#include <map>
#include <tuple>
#include <vector>

#include "ace/core.hpp"
#include "ace/sim/trace.hpp"

namespace ace::sim {

struct Metrics {
  Duration bucket = kSecond;
  std::vector<std::uint64_t> committed_bytes;  // per bucket
  std::uint64_t slots_committed = 0;
  std::vector<Duration> slot_latency;          // per committed slot, mean over correct parties
  std::vector<Time> commit_time;               // per committed slot
  double mean_decision_round = 0.0;            // waves (or views) per decision
  std::uint64_t messages_sent = 0;
  std::uint64_t bytes_sent = 0;
  std::map<MsgKind, std::uint64_t> messages_by_kind;
  std::uint64_t max_leader_phase_messages = 0; // STEP + VOTE sends of one instance
  std::vector<std::uint64_t> proposer_histogram;
  std::uint64_t view_timeouts = 0;
  std::uint64_t views_started = 0;

  /// Committed bytes per second over the whole buckets inside [from, to).
  double throughput(Time from, Time to) const;
  /// Mean latency of slots committed inside [from, to).
  double mean_latency(Time from, Time to) const;
};

/// Aggregates metrics online from the event stream of one run. A slot is
/// committed when the first correct party outputs it.
class MetricsCollector {
 public:
  MetricsCollector(std::uint32_t n, std::vector<bool> correct, Duration bucket = kSecond);

  void on_event(const TraceEvent& e);
  Metrics finish(Time horizon) const;

 private:
  struct SlotAcc {
    Time first_output = -1;
    std::uint64_t bytes = 0;
    PartyId proposer = kNoParty;
    Duration latency_sum = 0;
    std::uint32_t outputs = 0;
  };

  std::uint32_t n_;
  std::vector<bool> correct_;
  Duration bucket_;
  std::map<std::pair<PartyId, AgreementId>, Time> slot_started_;
  std::map<AgreementId, SlotAcc> slots_;
  std::map<std::pair<AgreementId, PartyId>, std::uint64_t> first_decide_round_;
  std::map<std::tuple<AgreementId, std::uint64_t, PartyId>, std::uint64_t> leader_phase_;
  std::uint64_t messages_ = 0;
  std::uint64_t bytes_ = 0;
  std::map<MsgKind, std::uint64_t> by_kind_;
  std::uint64_t timeouts_ = 0;
  std::uint64_t views_ = 0;
};

}  // namespace ace::sim
