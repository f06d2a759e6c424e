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
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ace/core.hpp"
#include "ace/sim/trace.hpp"

namespace ace::harness {

struct Violation {
  std::string property;
  std::string detail;
  Time time = 0;
};

struct CheckReport {
  std::vector<Violation> violations;
  std::uint64_t waves_checked = 0;        // election-time completeness samples
  std::uint64_t waves_complete = 0;       // of which had f+1 completed correct-leader instances
  std::uint64_t barriers_checked = 0;
  std::uint64_t halting_slots_checked = 0;

  bool ok() const { return violations.empty(); }
};

struct CheckerOptions {
  std::uint32_t n = 4;
  std::uint32_t f = 1;
  std::vector<bool> correct;
  /// Parties whose every message follows the protocol. In the crash model a
  /// party that crashes later is honest but not correct. Empty = `correct`.
  std::vector<bool> honest;
  bool smr = true;
  /// Fail unless every correct party decided (single-shot) or output this
  /// many slots (SMR). 0 disables the liveness check.
  std::uint64_t expected_outputs = 0;
};

/// Online checker for the safety and liveness properties of one run.
/// Consumes the event stream and reports every broken invariant.
class InvariantChecker {
 public:
  explicit InvariantChecker(CheckerOptions opts);

  void on_event(const sim::TraceEvent& e);
  /// Also records a violation for every nonzero entry of `leftover_gauges`
  /// (party, slot, gauge) reported by the replicas.
  CheckReport finish(const std::vector<std::tuple<PartyId, AgreementId, std::size_t>>& leftover_gauges = {});

 private:
  using InstanceKey = std::tuple<AgreementId, std::uint64_t, PartyId>;
  using BarrierKey = std::tuple<AgreementId, std::uint64_t, std::int32_t>;

  bool correct(PartyId p) const { return p < opts_.n && opts_.correct[p]; }
  bool honest(PartyId p) const { return p < opts_.n && opts_.honest[p]; }
  void fail(const std::string& property, const std::string& detail, Time t);
  std::size_t correct_count() const;

  CheckerOptions opts_;
  CheckReport report_;

  // Agreement and validity of single-shot decisions, per agreement id.
  std::map<AgreementId, std::uint64_t> decided_;
  std::set<std::pair<AgreementId, PartyId>> decided_parties_;
  // SMR output ledger per party.
  std::vector<AgreementId> last_output_;
  std::map<AgreementId, std::uint64_t> slot_value_;
  std::map<AgreementId, std::size_t> slot_outputs_;
  std::set<AgreementId> halted_;
  std::map<AgreementId, std::set<std::uint64_t>> decide_quorums_;
  // Barrier coordination.
  std::map<BarrierKey, std::set<PartyId>> readies_;
  // Completed instances: engage resolutions by correct parties.
  std::map<InstanceKey, std::set<PartyId>> resolved_;
  std::set<std::pair<AgreementId, std::uint64_t>> elect_seen_;
  // LBV completeness: instance completed before its first correct wedge.
  std::map<InstanceKey, bool> completed_at_wedge_;
  // Proper composition: last wedge output state per party and agreement.
  std::map<std::pair<PartyId, AgreementId>, std::pair<std::uint64_t, std::uint64_t>> last_wedge_;
};

}  // namespace ace::harness
