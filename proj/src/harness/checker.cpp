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

#include "ace/harness/checker.hpp"

#include <algorithm>
#include <bit>

namespace ace::harness {

namespace {

constexpr std::size_t kMaxRecorded = 64;

std::string slot_str(AgreementId a) { return "agreement " + std::to_string(a); }

}  // namespace

InvariantChecker::InvariantChecker(CheckerOptions opts) : opts_(std::move(opts)), last_output_(opts_.n, 0) {
  opts_.correct.resize(opts_.n, true);
  if (opts_.honest.empty()) opts_.honest = opts_.correct;
  opts_.honest.resize(opts_.n, true);
}

std::size_t InvariantChecker::correct_count() const {
  return static_cast<std::size_t>(std::count(opts_.correct.begin(), opts_.correct.end(), true));
}

void InvariantChecker::fail(const std::string& property, const std::string& detail, Time t) {
  if (report_.violations.size() < kMaxRecorded) report_.violations.push_back(Violation{property, detail, t});
}

void InvariantChecker::on_event(const sim::TraceEvent& e) {
  using sim::TraceKind;
  if (!honest(e.party)) return;
  const Time t = e.time;
  switch (e.kind) {
    case TraceKind::send:
      if (opts_.smr && correct(e.party) && e.msg != MsgKind::decide && halted_.contains(e.agreement))
        fail("strong-halting", "party " + std::to_string(e.party) + " sent " + std::string(to_string(e.msg)) +
                                   " for finished " + slot_str(e.agreement), t);
      return;

    case TraceKind::decide: {
      if (e.aux == 0) fail("validity", "externally invalid decision in " + slot_str(e.agreement), t);
      auto [it, fresh] = decided_.try_emplace(e.agreement, e.digest);
      if (!fresh && it->second != e.digest) fail("agreement", "two decided values in " + slot_str(e.agreement), t);
      decided_parties_.insert({e.agreement, e.party});
      return;
    }

    case TraceKind::violation:
      fail("agreement", "party " + std::to_string(e.party) + " saw a second decision value in " + slot_str(e.agreement), t);
      return;

    case TraceKind::decide_quorum: {
      auto& values = decide_quorums_[e.agreement];
      values.insert(e.digest);
      if (values.size() > 1) fail("decide-quorum", "two values reached the DECIDE quorum in " + slot_str(e.agreement), t);
      return;
    }

    case TraceKind::output: {
      const AgreementId slot = e.round == 0 ? e.agreement : e.round;
      auto& last = last_output_[e.party];
      if (slot <= last)
        fail("integrity", "party " + std::to_string(e.party) + " output slot " + std::to_string(slot) + " again", t);
      else if (slot != last + 1)
        fail("fifo", "party " + std::to_string(e.party) + " skipped to slot " + std::to_string(slot), t);
      last = std::max(last, slot);
      auto [it, fresh] = slot_value_.try_emplace(slot, e.digest);
      if (!fresh && it->second != e.digest) fail("smr-agreement", "conflicting outputs for slot " + std::to_string(slot), t);
      if (correct(e.party) && ++slot_outputs_[slot] == correct_count()) {
        halted_.insert(slot);
        ++report_.halting_slots_checked;
      }
      return;
    }

    case TraceKind::barrier_ready:
      readies_[{e.agreement, e.round, e.step}].insert(e.party);
      return;

    case TraceKind::barrier_sync: {
      ++report_.barriers_checked;
      const auto& r = readies_[{e.agreement, e.round, e.step}];
      if (r.size() < opts_.f + 1)
        fail("barrier-coordination", "sync with only " + std::to_string(r.size()) + " correct readies in " +
                                         slot_str(e.agreement) + " round " + std::to_string(e.round), t);
      return;
    }

    case TraceKind::barrier_token: {
      if (opts_.n > 64) return;
      std::size_t correct_signers = 0;
      for (PartyId p = 0; p < opts_.n; ++p)
        if ((e.aux >> p) & 1u && honest(p)) ++correct_signers;
      if (correct_signers + 2 * opts_.f < opts_.n)
        fail("barrier-coordination", "token with " + std::to_string(correct_signers) + " correct signers", t);
      return;
    }

    case TraceKind::engage_resolve:
      resolved_[{e.agreement, e.round, e.leader}].insert(e.party);
      return;

    case TraceKind::engage_invoke: {
      if (e.round <= 1) return;
      auto it = last_wedge_.find({e.party, e.agreement});
      if (it == last_wedge_.end() || it->second.first + 1 != e.round || it->second.second != e.digest)
        fail("proper-composition", "party " + std::to_string(e.party) + " engaged round " + std::to_string(e.round) +
                                       " of " + slot_str(e.agreement) + " without the previous closing state", t);
      return;
    }

    case TraceKind::wedge_invoke: {
      const InstanceKey key{e.agreement, e.round, e.leader};
      if (!completed_at_wedge_.contains(key)) {
        auto it = resolved_.find(key);
        completed_at_wedge_[key] = it != resolved_.end() && it->second.size() >= opts_.f + 1;
      }
      return;
    }

    case TraceKind::wedge_resolve: {
      last_wedge_[{e.party, e.agreement}] = {e.round, e.digest};
      auto it = completed_at_wedge_.find({e.agreement, e.round, e.leader});
      if (it != completed_at_wedge_.end() && it->second && e.aux == 0)
        fail("lbv-completeness", "completed instance wedged to bottom in " + slot_str(e.agreement), t);
      return;
    }

    case TraceKind::elect_invoke: {
      if (!elect_seen_.insert({e.agreement, e.round}).second) return;
      ++report_.waves_checked;
      std::size_t complete = 0;
      for (PartyId l = 0; l < opts_.n; ++l) {
        if (!honest(l)) continue;
        auto it = resolved_.find({e.agreement, e.round, l});
        if (it != resolved_.end() && it->second.size() >= opts_.f + 1) ++complete;
      }
      if (complete >= opts_.f + 1)
        ++report_.waves_complete;
      else
        fail("election-completeness", "only " + std::to_string(complete) + " completed correct-leader instances in " +
                                          slot_str(e.agreement) + " wave " + std::to_string(e.round), t);
      return;
    }

    default:
      return;
  }
}

CheckReport InvariantChecker::finish(const std::vector<std::tuple<PartyId, AgreementId, std::size_t>>& leftover_gauges) {
  for (const auto& [p, slot, gauge] : leftover_gauges)
    if (gauge != 0)
      fail("strong-halting", "party " + std::to_string(p) + " holds " + std::to_string(gauge) +
                                 " resources of finished slot " + std::to_string(slot), 0);
  if (opts_.expected_outputs > 0) {
    for (PartyId p = 0; p < opts_.n; ++p) {
      if (!correct(p)) continue;
      if (opts_.smr && last_output_[p] < opts_.expected_outputs)
        fail("termination", "party " + std::to_string(p) + " output only " + std::to_string(last_output_[p]) +
                                " of " + std::to_string(opts_.expected_outputs) + " slots", 0);
      if (!opts_.smr && !decided_parties_.contains({1, p}))
        fail("termination", "party " + std::to_string(p) + " never decided", 0);
    }
  }
  return report_;
}

}  // namespace ace::harness
