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

#include "ace/sim/metrics.hpp"

#include <algorithm>

namespace ace::sim {

double Metrics::throughput(Time from, Time to) const {
  if (to <= from || bucket <= 0) return 0.0;
  const auto first = static_cast<std::size_t>((from + bucket - 1) / bucket);
  const auto last = static_cast<std::size_t>(to / bucket);  // exclusive
  if (last <= first) return 0.0;
  std::uint64_t sum = 0;
  for (std::size_t b = first; b < last && b < committed_bytes.size(); ++b) sum += committed_bytes[b];
  const double seconds = static_cast<double>((last - first) * static_cast<std::size_t>(bucket)) / kSecond;
  return static_cast<double>(sum) / seconds;
}

double Metrics::mean_latency(Time from, Time to) const {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < commit_time.size(); ++i) {
    if (commit_time[i] < from || commit_time[i] >= to) continue;
    sum += static_cast<double>(slot_latency[i]);
    ++count;
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

MetricsCollector::MetricsCollector(std::uint32_t n, std::vector<bool> correct, Duration bucket)
    : n_(n), correct_(std::move(correct)), bucket_(bucket) {}

void MetricsCollector::on_event(const TraceEvent& e) {
  const bool from_correct = e.party < n_ && correct_[e.party];
  switch (e.kind) {
    case TraceKind::send:
      if (!from_correct) return;
      ++messages_;
      bytes_ += e.aux;
      ++by_kind_[e.msg];
      if (e.msg == MsgKind::step || e.msg == MsgKind::vote) ++leader_phase_[{e.agreement, e.round, e.leader}];
      return;
    case TraceKind::slot_start:
      if (from_correct) slot_started_[{e.party, e.agreement}] = e.time;
      return;
    case TraceKind::decide:
      if (from_correct) first_decide_round_.try_emplace({e.agreement, e.party}, e.round);
      return;
    case TraceKind::view_start:
      if (from_correct) ++views_;
      return;
    case TraceKind::view_timeout:
      if (from_correct) ++timeouts_;
      return;
    case TraceKind::output: {
      if (!from_correct) return;
      auto& s = slots_[e.agreement];
      if (s.first_output < 0) {
        s.first_output = e.time;
        s.bytes = e.aux;
        s.proposer = e.leader;
      }
      if (auto it = slot_started_.find({e.party, e.agreement}); it != slot_started_.end()) {
        s.latency_sum += e.time - it->second;
        ++s.outputs;
        slot_started_.erase(it);
      }
      return;
    }
    default:
      return;
  }
}

Metrics MetricsCollector::finish(Time horizon) const {
  Metrics m;
  m.bucket = bucket_;
  m.committed_bytes.assign(static_cast<std::size_t>(std::max<Time>(horizon, 0) / bucket_ + 1), 0);
  m.proposer_histogram.assign(n_, 0);
  for (const auto& [slot, s] : slots_) {
    const auto b = static_cast<std::size_t>(s.first_output / bucket_);
    if (b < m.committed_bytes.size()) m.committed_bytes[b] += s.bytes;
    ++m.slots_committed;
    m.commit_time.push_back(s.first_output);
    m.slot_latency.push_back(s.outputs == 0 ? 0 : s.latency_sum / s.outputs);
    if (s.proposer < n_) ++m.proposer_histogram[s.proposer];
  }
  if (!first_decide_round_.empty()) {
    double sum = 0.0;
    for (const auto& [key, round] : first_decide_round_) sum += static_cast<double>(round);
    m.mean_decision_round = sum / static_cast<double>(first_decide_round_.size());
  }
  m.messages_sent = messages_;
  m.bytes_sent = bytes_;
  m.messages_by_kind = by_kind_;
  for (const auto& [key, count] : leader_phase_) m.max_leader_phase_messages = std::max(m.max_leader_phase_messages, count);
  m.view_timeouts = timeouts_;
  m.views_started = views_;
  return m;
}

}  // namespace ace::sim
