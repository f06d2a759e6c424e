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

#include "ace/sim/adversary.hpp"

namespace ace::sim {

bool publicly_observable(TraceKind k) {
  switch (k) {
    case TraceKind::view_start:
    case TraceKind::wave_start:
    case TraceKind::slot_start:
    case TraceKind::elect_resolve:
    case TraceKind::output:
      return true;
    default:
      return false;
  }
}

std::string to_string(TargetRule r) {
  switch (r) {
    case TargetRule::current_leader: return "current_leader";
    case TargetRule::arbitrary_correct: return "arbitrary_correct";
    case TargetRule::fixed: return "fixed";
  }
  return "?";
}

TargetRule parse_target_rule(const std::string& s) {
  if (s == "current_leader") return TargetRule::current_leader;
  if (s == "arbitrary_correct") return TargetRule::arbitrary_correct;
  if (s == "fixed") return TargetRule::fixed;
  throw ConfigError("unknown target rule '" + s + "'");
}

void TargetedDelay::bind(const AdversaryEnv& env) {
  Adversary::bind(env);
  rng_.seed(derive_seed(env.seed, "targeted-delay"));
  if (p_.rule == TargetRule::fixed) retarget(p_.fixed_target);
}

void TargetedDelay::retarget(PartyId target) {
  target_ = target;
  magnitude_ = p_.added_min;
  if (p_.added_max > p_.added_min)
    magnitude_ = std::uniform_int_distribution<Duration>(p_.added_min, p_.added_max)(rng_);
}

PartyId TargetedDelay::random_correct() {
  std::vector<PartyId> pool;
  for (PartyId p = 0; p < env_.n; ++p)
    if (env_.correct[p]) pool.push_back(p);
  if (pool.empty()) return kNoParty;
  return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng_)];
}

void TargetedDelay::observe(const TraceEvent& e) {
  if (p_.rule == TargetRule::fixed || e.party >= env_.n || !env_.correct[e.party]) return;
  const std::pair<AgreementId, std::uint64_t> key{e.agreement, e.round};
  if (key <= latest_) return;
  if (e.kind == TraceKind::view_start && p_.rule == TargetRule::current_leader) {
    latest_ = key;
    retarget(e.leader);
  } else if (e.kind == TraceKind::wave_start) {
    latest_ = key;
    retarget(random_correct());
  }
}

Duration TargetedDelay::extra_delay(const LinkObservation& link) {
  if (link.now < p_.from || (p_.until != 0 && link.now >= p_.until)) return 0;
  if (target_ == kNoParty || link.from == link.to) return 0;
  return (link.from == target_ || link.to == target_) ? magnitude_ : 0;
}

void SpikeDelay::bind(const AdversaryEnv& env) {
  Adversary::bind(env);
  rng_.seed(derive_seed(env.seed, "spikes"));
}

Duration SpikeDelay::extra_delay(const LinkObservation& link) {
  if (link.from == link.to || max_spike_ <= 0) return 0;
  if (std::uniform_real_distribution<double>(0.0, 1.0)(rng_) >= probability_) return 0;
  return std::uniform_int_distribution<Duration>(0, max_spike_)(rng_);
}

void CompositeAdversary::bind(const AdversaryEnv& env) {
  Adversary::bind(env);
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    AdversaryEnv sub = env;
    sub.seed = derive_seed(env.seed, "part-" + std::to_string(i));
    parts_[i]->bind(sub);
  }
}

Duration CompositeAdversary::extra_delay(const LinkObservation& link) {
  Duration total = 0;
  for (auto& a : parts_) total += a->extra_delay(link);
  return total;
}

void CompositeAdversary::observe(const TraceEvent& e) {
  for (auto& a : parts_) a->observe(e);
}

}  // namespace ace::sim
