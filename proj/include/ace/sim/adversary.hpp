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
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "ace/core.hpp"
#include "ace/messages.hpp"
#include "ace/sim/trace.hpp"

namespace ace::sim {

/// What the scheduler learns about one message: endpoints, public
/// metadata and the send time. Never the payload internals or coin state.
struct LinkObservation {
  Time now = 0;
  PartyId from = kNoParty;
  PartyId to = kNoParty;
  PayloadMeta meta;
};

struct AdversaryEnv {
  std::uint32_t n = 0;
  std::vector<bool> correct;
  std::uint64_t seed = 0;
};

/// Network adversary. It may add finite delay to any message; it cannot
/// drop messages between correct parties.
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual void bind(const AdversaryEnv& env) { env_ = env; }
  virtual Duration extra_delay(const LinkObservation& link) = 0;
  /// Public lifecycle events (view/wave/slot starts, revealed coins, outputs).
  virtual void observe(const TraceEvent&) {}

 protected:
  AdversaryEnv env_;
};

/// True for the lifecycle kinds an adversary is allowed to observe.
bool publicly_observable(TraceKind k);

enum class TargetRule { current_leader, arbitrary_correct, fixed };

std::string to_string(TargetRule r);
TargetRule parse_target_rule(const std::string& s);

/// Flooding one party at a time, modelled as extra delay on every link of
/// the target. With `current_leader` the target follows the most recent
/// view leader announced by a correct party; a wave-based protocol has no
/// such leader, so a fresh random correct party is picked per wave instead.
class TargetedDelay final : public Adversary {
 public:
  struct Params {
    TargetRule rule = TargetRule::current_leader;
    PartyId fixed_target = 0;
    Duration added_min = 0;
    Duration added_max = 0;  // per-target magnitude drawn uniformly
    Time from = 0;
    Time until = 0;          // 0 = forever
  };

  explicit TargetedDelay(Params p) : p_(p) {}

  void bind(const AdversaryEnv& env) override;
  Duration extra_delay(const LinkObservation& link) override;
  void observe(const TraceEvent& e) override;

  PartyId target() const { return target_; }

 private:
  void retarget(PartyId target);
  PartyId random_correct();

  Params p_;
  std::mt19937_64 rng_;
  PartyId target_ = kNoParty;
  Duration magnitude_ = 0;
  std::pair<AgreementId, std::uint64_t> latest_{0, 0};
};

/// Random latency spikes on individual messages.
class SpikeDelay final : public Adversary {
 public:
  SpikeDelay(double probability, Duration max_spike) : probability_(probability), max_spike_(max_spike) {}

  void bind(const AdversaryEnv& env) override;
  Duration extra_delay(const LinkObservation& link) override;

 private:
  double probability_;
  Duration max_spike_;
  std::mt19937_64 rng_;
};

/// Sum of several adversaries.
class CompositeAdversary final : public Adversary {
 public:
  void add(std::unique_ptr<Adversary> a) { parts_.push_back(std::move(a)); }
  bool empty() const { return parts_.empty(); }

  void bind(const AdversaryEnv& env) override;
  Duration extra_delay(const LinkObservation& link) override;
  void observe(const TraceEvent& e) override;

 private:
  std::vector<std::unique_ptr<Adversary>> parts_;
};

}  // namespace ace::sim
