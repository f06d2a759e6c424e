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

#include "ace/sim/simulator.hpp"

#include <algorithm>

namespace ace::sim {

Duration DelayModel::base_at(Time t) const {
  Duration b = base;
  for (const auto& ph : phases)
    if (ph.start <= t) b = ph.base;
  return b;
}

Duration DelayModel::bound() const {
  Duration b = base;
  for (const auto& ph : phases) b = std::max(b, ph.base);
  return b + jitter + processing;
}

void DelayModel::validate() const {
  if (base < 0 || jitter < 0 || processing < 0) throw ConfigError("delays must be non-negative");
  for (std::size_t i = 0; i < phases.size(); ++i) {
    if (phases[i].base < 0 || phases[i].start < 0) throw ConfigError("delay phases must be non-negative");
    if (i > 0 && phases[i].start < phases[i - 1].start) throw ConfigError("delay phases must be sorted");
  }
}

void SimConfig::validate() const {
  config.validate();
  delays.validate();
  std::vector<bool> faulty(config.n, false);
  for (PartyId p : byzantine) {
    if (p >= config.n) throw ConfigError("byzantine party out of range");
    if (config.model == FailureModel::crash) throw ConfigError("byzantine parties in the crash model");
    faulty[p] = true;
  }
  for (const auto& c : crashes) {
    if (c.party >= config.n) throw ConfigError("crashed party out of range");
    if (c.at < 0) throw ConfigError("crash time must be non-negative");
    faulty[c.party] = true;
  }
  if (static_cast<std::size_t>(std::count(faulty.begin(), faulty.end(), true)) > config.f)
    throw ConfigError("more than f faulty parties");
  if (byzantine_drop < 0.0 || byzantine_drop > 1.0) throw ConfigError("byzantine_drop must lie in [0, 1]");
}

class Simulator::Port final : public Network {
 public:
  Port(Simulator& sim, PartyId self) : sim_(&sim), self_(self) {}

  void send(PartyId to, Payload body) override {
    if (to >= sim_->n()) return;
    sim_->send(self_, to, std::make_shared<const Payload>(std::move(body)));
  }
  void broadcast(Payload body) override {
    auto shared = std::make_shared<const Payload>(std::move(body));
    for (PartyId p = 0; p < sim_->n(); ++p) sim_->send(self_, p, shared);
  }
  Time now() const override { return sim_->now_; }
  TimerId set_timer(Duration after) override { return sim_->set_timer(self_, after); }
  void cancel_timer(TimerId id) override { sim_->live_timers_.erase(id); }
  void record(const TraceEvent& e) override { sim_->emit(e); }

 private:
  Simulator* sim_;
  PartyId self_;
};

Simulator::Simulator(SimConfig cfg)
    : cfg_(std::move(cfg)),
      byzantine_(cfg_.config.n, false),
      crash_planned_(cfg_.config.n, false),
      crashed_(cfg_.config.n, false),
      trace_(cfg_.trace_level) {
  cfg_.validate();
  for (PartyId p : cfg_.byzantine) byzantine_[p] = true;
  for (const auto& c : cfg_.crashes) crash_planned_[c.party] = true;
  delay_rng_.seed(derive_seed(cfg_.config.seed, "delays"));
  drop_rng_.seed(derive_seed(cfg_.config.seed, "byzantine-drops"));
  oracle_ = std::make_unique<CoinOracle>(derive_seed(cfg_.config.seed, "coin"), cfg_.config, ledger_);
  oracle_->set_observer([this](const CoinId& id, PartyId leader, Time when) {
    TraceEvent e;
    e.time = when;
    e.kind = TraceKind::coin_reveal;
    e.agreement = id.agreement;
    e.round = id.wave;
    e.leader = leader;
    emit(e);
  });
  if (!cfg_.validity) cfg_.validity = payload_limit_predicate(cfg_.config.max_payload);
}

Simulator::~Simulator() {
  nodes_.clear();
}

void Simulator::install(const NodeFactory& factory) {
  if (!nodes_.empty()) throw std::logic_error("parties already installed");
  const auto quorums = derive_quorums(cfg_.config);
  for (PartyId p = 0; p < n(); ++p) ports_.push_back(std::make_unique<Port>(*this, p));
  for (PartyId p = 0; p < n(); ++p) {
    PartyContext ctx;
    ctx.self = p;
    ctx.config = cfg_.config;
    ctx.quorums = quorums;
    ctx.net = ports_[p].get();
    ctx.ledger = &ledger_;
    ctx.signer = Signer(p, &ledger_);
    ctx.validity = cfg_.validity;
    if (byzantine_[p]) ctx.behavior = cfg_.byzantine_behavior;
    ctx.value_bytes = cfg_.value_bytes;
    nodes_.push_back(factory(ctx));
  }
  for (PartyId p = 0; p < n(); ++p)
    at(0, [this, p] {
      if (!crashed_[p]) nodes_[p]->start();
    });
  for (const auto& c : cfg_.crashes)
    at(c.at, [this, p = c.party] {
      if (crashed_[p]) return;
      crashed_[p] = true;
      TraceEvent e;
      e.time = now_;
      e.kind = TraceKind::crash;
      e.party = p;
      emit(e);
    });
}

void Simulator::set_adversary(std::unique_ptr<Adversary> adversary) {
  adversary_ = std::move(adversary);
  if (!adversary_) return;
  AdversaryEnv env;
  env.n = n();
  env.seed = derive_seed(cfg_.config.seed, "adversary");
  for (PartyId p = 0; p < n(); ++p) env.correct.push_back(correct(p));
  adversary_->bind(env);
}

void Simulator::at(Time t, std::function<void()> fn) {
  callbacks_.push_back(std::move(fn));
  push(Event{std::max(t, now_), 0, Event::Type::callback, kNoParty, kNoParty, nullptr, 0, callbacks_.size() - 1});
}

void Simulator::push(Event e) {
  e.seq = seq_++;
  queue_.push(std::move(e));
}

void Simulator::emit(const TraceEvent& e) {
  if (trace_.wants(e.kind)) trace_.append(e);
  if (e.kind != TraceKind::deliver)
    for (const auto& obs : observers_) obs(e);
  if (adversary_ && publicly_observable(e.kind)) adversary_->observe(e);
}

void Simulator::send(PartyId from, PartyId to, const std::shared_ptr<const Payload>& body) {
  if (crashed_[from]) return;
  const auto meta = meta_of(*body);
  if (byzantine_[from] && cfg_.byzantine_drop > 0.0 && now_ >= cfg_.byzantine_behavior.active_from &&
      std::uniform_real_distribution<double>(0.0, 1.0)(drop_rng_) < cfg_.byzantine_drop)
    return;

  Duration delay = 0;
  if (from != to) {
    delay = cfg_.delays.base_at(now_) + cfg_.delays.processing;
    if (cfg_.delays.jitter > 0) delay += std::uniform_int_distribution<Duration>(0, cfg_.delays.jitter)(delay_rng_);
    if (adversary_) delay += std::max<Duration>(0, adversary_->extra_delay(LinkObservation{now_, from, to, meta}));
  }

  TraceEvent e;
  e.time = now_;
  e.kind = TraceKind::send;
  e.party = from;
  e.peer = to;
  e.msg = meta.kind;
  e.agreement = meta.agreement;
  e.round = meta.round;
  e.leader = meta.leader;
  e.step = meta.step;
  e.aux = meta.bytes;
  emit(e);

  push(Event{now_ + delay, 0, Event::Type::deliver, to, from, body, 0, 0});
}

TimerId Simulator::set_timer(PartyId owner, Duration after) {
  const TimerId id = ++next_timer_;
  live_timers_.insert(id);
  push(Event{now_ + std::max<Duration>(after, 0), 0, Event::Type::timer, owner, kNoParty, nullptr, id, 0});
  return id;
}

RunStatus Simulator::run(Time horizon, const std::function<bool()>& until) {
  while (!queue_.empty()) {
    if (queue_.top().time > horizon) {
      now_ = horizon;
      return RunStatus::horizon;
    }
    Event ev = queue_.top();
    queue_.pop();
    now_ = ev.time;
    ++processed_;
    switch (ev.type) {
      case Event::Type::callback: {
        auto fn = std::move(callbacks_[ev.callback]);
        fn();
        break;
      }
      case Event::Type::timer:
        if (!live_timers_.erase(ev.timer) || crashed_[ev.to]) break;
        nodes_[ev.to]->on_timer(ev.timer);
        break;
      case Event::Type::deliver: {
        if (crashed_[ev.to]) break;
        if (trace_.wants(TraceKind::deliver)) {
          const auto meta = meta_of(*ev.payload);
          TraceEvent e;
          e.time = now_;
          e.kind = TraceKind::deliver;
          e.party = ev.to;
          e.peer = ev.from;
          e.msg = meta.kind;
          e.agreement = meta.agreement;
          e.round = meta.round;
          e.leader = meta.leader;
          e.step = meta.step;
          e.aux = meta.bytes;
          emit(e);
        }
        nodes_[ev.to]->on_message(ev.from, *ev.payload);
        break;
      }
    }
    if (until && until()) return RunStatus::stopped;
  }
  return RunStatus::quiescent;
}

}  // namespace ace::sim
