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

#include <memory>
#include <optional>
#include <string>

#include "ace/agreement.hpp"
#include "ace/context.hpp"
#include "ace/lbv.hpp"

namespace ace {

enum class TimeoutKind { fixed, conservative, adaptive };

struct TimeoutPolicy {
  TimeoutKind kind = TimeoutKind::fixed;
  Duration base = 100 * kMillisecond;  // t, T or t0 depending on kind
  double up = 1.25;
  double down = 0.8;
  Duration floor = 10 * kMillisecond;
  Duration ceiling = 10 * kSecond;

  /// Throws ConfigError on non-positive durations or factors, or when an
  /// adaptive base lies outside [floor, ceiling].
  void validate() const;
};

std::string to_string(TimeoutKind k);
TimeoutKind parse_timeout_kind(const std::string& s);

/// Round-robin rotation. `offset` shifts the rotation, so that consecutive
/// SMR slots start with different leaders.
PartyId get_leader(std::uint64_t view, std::uint32_t n, std::uint64_t offset = 0);

/// Per-party timeout state. The adaptive value carries over across views
/// and slots.
class TimeoutController {
 public:
  explicit TimeoutController(TimeoutPolicy policy);

  Duration get_timeout(std::uint64_t view) const;
  /// Feeds the outcome of the view that just ended.
  void record_outcome(bool timed_out);

  const TimeoutPolicy& policy() const { return policy_; }

 private:
  TimeoutPolicy policy_;
  Duration current_;
};

/// Partially synchronous view-by-view agreement: one leader-based instance
/// per view, bounded by a timer.
class ViewAgreement {
 public:
  ViewAgreement(const PartyContext& ctx, AgreementId id, TimeoutController& timeouts, std::uint64_t leader_offset = 0,
                std::uint64_t view_lookahead = 64);
  ~ViewAgreement();
  ViewAgreement(const ViewAgreement&) = delete;
  ViewAgreement& operator=(const ViewAgreement&) = delete;

  /// Starts view 1. Same preconditions as AceAgreement::propose.
  void propose(const ClosingState& initial, const Value& own);

  void on_message(PartyId from, const Payload& body);
  /// Returns true if the timer belonged to this agreement.
  bool on_timer(TimerId id);

  void stop() { stopped_ = true; }
  void set_view_limit(std::uint64_t last) { view_limit_ = last; }

  AgreementId id() const { return id_; }
  std::uint64_t view() const { return view_; }
  PartyId leader_of(std::uint64_t view) const;
  const std::optional<DecisionRecord>& decision() const { return decision_; }
  std::size_t resource_gauge() const;

 private:
  void run_view(const ClosingState& state);
  void handle(const LbvEvents& ev);
  void finish_engage();
  void on_wedge_resolved(const WedgeResult& result);
  void record_decision(const Value& v);

  const PartyContext* ctx_;
  AgreementId id_;
  TimeoutController* timeouts_;
  std::uint64_t offset_;
  std::optional<Value> own_;
  std::uint64_t view_ = 0;
  bool stopped_ = false;
  std::uint64_t view_limit_ = 0;  // 0 = unlimited

  std::unique_ptr<LbvInstance> instance_;
  std::optional<TimerId> timer_;
  bool timed_out_ = false;
  bool wedging_ = false;
  RoundBuffer future_;
  std::optional<DecisionRecord> decision_;
};

}  // namespace ace
