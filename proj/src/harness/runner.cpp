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

#include "ace/harness/runner.hpp"

namespace ace::harness {

std::uint64_t repetition_seed(std::uint64_t seed, std::uint32_t rep) {
  return rep == 0 ? seed : derive_seed(seed, "repetition-" + std::to_string(rep));
}

sim::SimConfig sim_config(const Scenario& s, std::uint64_t seed) {
  sim::SimConfig c;
  c.config = s.config;
  c.config.seed = seed;
  c.delays = s.delays;
  c.trace_level = s.trace_level;
  c.byzantine = s.attack.byzantine;
  c.byzantine_behavior = s.attack.behavior;
  c.byzantine_drop = s.attack.drop;
  c.crashes = s.attack.crashes;
  c.value_bytes = s.value_bytes;
  return c;
}

std::unique_ptr<sim::Adversary> make_adversary(const Scenario& s) {
  auto adv = std::make_unique<sim::CompositeAdversary>();
  if (s.attack.ddos) {
    const auto& d = *s.attack.ddos;
    sim::TargetedDelay::Params p;
    p.rule = d.rule;
    p.fixed_target = d.target;
    p.added_min = d.added;
    p.added_max = d.added_max == 0 ? d.added : d.added_max;
    p.from = d.from;
    p.until = d.until;
    adv->add(std::make_unique<sim::TargetedDelay>(p));
  }
  if (s.attack.spikes) adv->add(std::make_unique<sim::SpikeDelay>(s.attack.spikes->probability, s.attack.spikes->max));
  if (adv->empty()) return nullptr;
  return adv;
}

namespace {

void apply_correct_behavior(const Scenario& s, sim::Simulator& sim, PartyContext& ctx) {
  if (!sim.byzantine(ctx.self) && s.attack.correct_behavior.any()) ctx.behavior = s.attack.correct_behavior;
}

std::vector<bool> correct_mask(const sim::Simulator& sim) {
  std::vector<bool> m;
  for (PartyId p = 0; p < sim.n(); ++p) m.push_back(sim.correct(p));
  return m;
}

std::vector<bool> honest_mask(const sim::Simulator& sim) {
  std::vector<bool> m;
  for (PartyId p = 0; p < sim.n(); ++p) m.push_back(!sim.byzantine(p));
  return m;
}

}  // namespace

RunResult run_smr(const Scenario& s, Protocol protocol, std::uint64_t seed, const RunOptions& opts) {
  auto cfg = sim_config(s, seed);
  if (opts.trace_level) cfg.trace_level = *opts.trace_level;
  sim::Simulator sim(cfg);

  SmrOptions so;
  so.protocol = protocol;
  so.timeout = s.timeout;
  so.max_slots = s.slots;
  so.crash_echo = s.crash_echo;
  const std::size_t bytes = s.value_bytes;
  sim.install([&](const PartyContext& base) -> std::unique_ptr<Node> {
    PartyContext ctx = base;
    apply_correct_behavior(s, sim, ctx);
    const PartyId self = ctx.self;
    return std::make_unique<SmrReplica>(ctx, sim.oracle(), so, [self, bytes](AgreementId slot) {
      return make_value(self, "slot" + std::to_string(slot), bytes);
    });
  });
  sim.set_adversary(make_adversary(s));

  const auto correct = correct_mask(sim);
  sim::MetricsCollector metrics(sim.n(), correct);
  CheckerOptions co;
  co.n = sim.n();
  co.f = s.config.f;
  co.correct = correct;
  co.honest = honest_mask(sim);
  co.smr = true;
  co.expected_outputs = (opts.expect_termination && s.slots > 0) ? s.slots : 0;
  InvariantChecker checker(co);
  sim.add_observer([&](const sim::TraceEvent& e) {
    metrics.on_event(e);
    checker.on_event(e);
  });

  auto all_done = [&] {
    if (s.slots == 0) return false;
    for (PartyId p = 0; p < sim.n(); ++p)
      if (correct[p] && !sim.node_as<SmrReplica>(p).finished()) return false;
    return true;
  };

  RunResult r;
  r.scenario = s.name;
  r.protocol = protocol;
  r.seed = seed;
  r.status = sim.run(s.horizon, all_done);
  r.end_time = sim.now();
  r.events = sim.events_processed();
  r.metrics = metrics.finish(s.horizon);

  std::vector<std::tuple<PartyId, AgreementId, std::size_t>> gauges;
  for (PartyId p = 0; p < sim.n(); ++p) {
    const auto& rep = sim.node_as<SmrReplica>(p);
    r.outputs_per_party.push_back(rep.outputs().size());
    if (!correct[p]) continue;
    for (const auto& out : rep.outputs()) gauges.emplace_back(p, out.slot, rep.resource_gauge(out.slot));
  }
  r.check = checker.finish(gauges);
  r.trace_hash = sim.trace().hash();
  if (opts.keep_trace) r.trace = sim.trace();
  return r;
}

SingleShotResult run_single_shot(const Scenario& s, Protocol protocol, std::uint64_t seed, std::uint64_t round_limit,
                                 bool stop_when_decided, const RunOptions& opts) {
  auto cfg = sim_config(s, seed);
  if (opts.trace_level) cfg.trace_level = *opts.trace_level;
  sim::Simulator sim(cfg);
  const std::size_t bytes = s.value_bytes;
  sim.install([&](const PartyContext& base) -> std::unique_ptr<Node> {
    PartyContext ctx = base;
    apply_correct_behavior(s, sim, ctx);
    return std::make_unique<SingleShotNode>(ctx, sim.oracle(), protocol, s.timeout,
                                            make_value(ctx.self, "single", bytes), round_limit);
  });
  sim.set_adversary(make_adversary(s));

  const auto correct = correct_mask(sim);
  CheckerOptions co;
  co.n = sim.n();
  co.f = s.config.f;
  co.correct = correct;
  co.honest = honest_mask(sim);
  co.smr = false;
  co.expected_outputs = (opts.expect_termination && stop_when_decided) ? 1 : 0;
  InvariantChecker checker(co);
  SingleShotResult r;
  r.seed = seed;
  sim.add_observer([&](const sim::TraceEvent& e) {
    checker.on_event(e);
    if (e.kind == sim::TraceKind::wedge_resolve && correct[e.party]) r.round_outcomes.try_emplace(e.round, e.aux != 0);
  });

  auto all_decided = [&] {
    for (PartyId p = 0; p < sim.n(); ++p)
      if (correct[p] && !sim.node_as<SingleShotNode>(p).decision()) return false;
    return true;
  };
  if (stop_when_decided)
    sim.run(s.horizon, all_decided);
  else
    sim.run(s.horizon);

  std::uint64_t universal = 0;
  bool everyone = true;
  for (PartyId p = 0; p < sim.n(); ++p) {
    const auto& d = sim.node_as<SingleShotNode>(p).decision();
    r.decisions.push_back(d);
    if (!correct[p]) continue;
    if (!d)
      everyone = false;
    else
      universal = std::max(universal, d->wave);
  }
  r.universal_round = everyone ? universal : 0;
  r.check = checker.finish();
  r.trace_hash = sim.trace().hash();
  return r;
}

}  // namespace ace::harness
