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
#include <memory>
#include <queue>
#include <random>
#include <unordered_set>
#include <vector>

#include "ace/context.hpp"
#include "ace/election.hpp"
#include "ace/sim/adversary.hpp"
#include "ace/sim/trace.hpp"

namespace ace::sim {

/// Base one-way delay from `start` on, until the next phase.
struct DelayPhase {
  Time start = 0;
  Duration base = 0;
};

/// Per-message delay = phased base + uniform jitter + processing, before
/// any adversarial extra.
struct DelayModel {
  Duration base = 5 * kMillisecond;
  Duration jitter = 0;
  Duration processing = 7 * kMillisecond;
  std::vector<DelayPhase> phases;

  Duration base_at(Time t) const;
  /// Largest non-adversarial delay.
  Duration bound() const;
  void validate() const;
};

struct CrashEvent {
  PartyId party = 0;
  Time at = 0;
};

struct SimConfig {
  Config config;
  DelayModel delays;
  TraceLevel trace_level = TraceLevel::lifecycle;
  std::vector<PartyId> byzantine;
  Behavior byzantine_behavior;
  double byzantine_drop = 0.0;  // chance a byzantine send is suppressed
  std::vector<CrashEvent> crashes;
  std::size_t value_bytes = 64;
  ValidityPredicate validity;   // empty = payload size limit of the config

  /// Throws ConfigError, including when more than f parties are faulty.
  void validate() const;
};

enum class RunStatus { horizon, quiescent, stopped };

/// Deterministic discrete-event simulation of n parties. Time is in
/// microsecond ticks and events are ordered by (time, sequence number).
class Simulator {
 public:
  using NodeFactory = std::function<std::unique_ptr<Node>(const PartyContext&)>;
  using Observer = std::function<void(const TraceEvent&)>;

  explicit Simulator(SimConfig cfg);
  ~Simulator();
  Simulator(const Simulator&) = delete;
  Simulator& operator=(const Simulator&) = delete;

  /// Creates all parties and schedules their start at time 0.
  void install(const NodeFactory& factory);
  void set_adversary(std::unique_ptr<Adversary> adversary);
  /// Sees every send and lifecycle event, whatever the trace level.
  void add_observer(Observer obs) { observers_.push_back(std::move(obs)); }
  void at(Time t, std::function<void()> fn);

  RunStatus run(Time horizon, const std::function<bool()>& until = {});

  Time now() const { return now_; }
  std::uint32_t n() const { return cfg_.config.n; }
  bool correct(PartyId p) const { return !byzantine_[p] && !crash_planned_[p]; }
  bool byzantine(PartyId p) const { return byzantine_[p]; }
  bool crashed(PartyId p) const { return crashed_[p]; }
  Node& node(PartyId p) { return *nodes_.at(p); }
  template <typename T>
  T& node_as(PartyId p) {
    return dynamic_cast<T&>(*nodes_.at(p));
  }
  const Trace& trace() const { return trace_; }
  CoinOracle& oracle() { return *oracle_; }
  const SignatureLedger& ledger() const { return ledger_; }
  const SimConfig& config() const { return cfg_; }
  std::uint64_t events_processed() const { return processed_; }

 private:
  class Port;
  friend class Port;

  struct Event {
    Time time;
    std::uint64_t seq;
    enum class Type : std::uint8_t { deliver, timer, callback } type;
    PartyId to;
    PartyId from;
    std::shared_ptr<const Payload> payload;
    TimerId timer;
    std::size_t callback;
  };
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
  };

  void send(PartyId from, PartyId to, const std::shared_ptr<const Payload>& body);
  TimerId set_timer(PartyId owner, Duration after);
  void emit(const TraceEvent& e);
  void push(Event e);

  SimConfig cfg_;
  std::vector<bool> byzantine_;
  std::vector<bool> crash_planned_;
  std::vector<bool> crashed_;
  Time now_ = 0;
  std::uint64_t seq_ = 0;
  std::uint64_t processed_ = 0;
  TimerId next_timer_ = 0;
  std::unordered_set<TimerId> live_timers_;
  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  std::vector<std::function<void()>> callbacks_;
  std::mt19937_64 delay_rng_;
  std::mt19937_64 drop_rng_;
  Trace trace_;
  std::vector<Observer> observers_;
  std::unique_ptr<Adversary> adversary_;
  SignatureLedger ledger_;
  std::unique_ptr<CoinOracle> oracle_;
  std::vector<std::unique_ptr<Port>> ports_;
  std::vector<std::unique_ptr<Node>> nodes_;  // destroyed before the ports
};

}  // namespace ace::sim
