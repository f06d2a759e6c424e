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
#include <memory>
#include <optional>
#include <vector>

#include "ace/barrier.hpp"
#include "ace/context.hpp"
#include "ace/election.hpp"
#include "ace/lbv.hpp"

namespace ace {

enum class WavePhase { idle, engaging, syncing, electing, exchanging, done };

struct DecisionRecord {
  Value value;
  std::uint64_t wave = 0;
  PartyId decider = kNoParty;
  Time sim_time = 0;
};

/// Messages tagged with a later wave (or view) than the current one are held
/// until that wave starts. Bounded by a wave lookahead and a total count.
class RoundBuffer {
 public:
  explicit RoundBuffer(std::uint64_t lookahead, std::size_t max_messages = 1 << 16)
      : lookahead_(lookahead), max_messages_(max_messages) {}

  void hold(std::uint64_t current, std::uint64_t round, PartyId from, const Payload& body);
  std::vector<std::pair<PartyId, Payload>> take(std::uint64_t round);
  std::size_t size() const { return count_; }

 private:
  std::uint64_t lookahead_;
  std::size_t max_messages_;
  std::size_t count_ = 0;
  std::map<std::uint64_t, std::vector<std::pair<PartyId, Payload>>> held_;
};

/// Wave-by-wave asynchronous single-shot agreement: every wave engages n
/// parallel leader-based instances, passes a barrier once enough instances
/// completed, elects one instance in retrospect and wedges it. Decisions
/// come only from the wedge of the elected instance.
class AceAgreement {
 public:
  AceAgreement(const PartyContext& ctx, AgreementId id, CoinOracle& oracle, std::uint64_t wave_lookahead = 64);

  /// Starts wave 1. Throws std::invalid_argument for an externally invalid
  /// own value and std::logic_error on a second call.
  void propose(const ClosingState& initial, const Value& own);

  void on_message(PartyId from, const Payload& body);

  /// No wave starts after the current one completes.
  void stop() { stopped_ = true; }
  /// No wave beyond `last` starts.
  void set_wave_limit(std::uint64_t last) { wave_limit_ = last; }

  AgreementId id() const { return id_; }
  std::uint64_t wave() const { return wave_; }
  WavePhase phase() const { return phase_; }
  const std::optional<DecisionRecord>& decision() const { return decision_; }
  std::optional<PartyId> chosen(std::uint64_t wave) const;
  std::size_t resource_gauge() const;

 private:
  void start_wave(const ClosingState& state);
  void dispatch(PartyId from, const Payload& body);
  void handle(PartyId leader, const LbvEvents& ev);
  void on_engage_resolved(PartyId leader);
  void on_engage_done(PartyId from, const EngageDoneMsg& m);
  void on_barrier_resolved();
  void on_elected(PartyId leader);
  void on_wedge_resolved(const WedgeResult& result);

  const PartyContext* ctx_;
  AgreementId id_;
  CoinOracle* oracle_;
  std::optional<Value> own_;
  std::uint64_t wave_ = 0;
  WavePhase phase_ = WavePhase::idle;
  bool stopped_ = false;
  std::uint64_t wave_limit_ = 0;  // 0 = unlimited

  std::map<PartyId, std::unique_ptr<LbvInstance>> instances_;
  PartySet engage_done_;
  std::unique_ptr<Barrier> barrier_;
  std::unique_ptr<Election> election_;
  std::map<std::uint64_t, PartyId> chosen_;
  RoundBuffer future_;
  std::optional<DecisionRecord> decision_;
};

}  // namespace ace
