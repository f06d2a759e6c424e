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
#include <vector>

#include "ace/context.hpp"
#include "ace/core.hpp"
#include "ace/signing.hpp"
#include "ace/sim/trace.hpp"

namespace ace::test {

struct Sent {
  PartyId to;
  Payload body;
};

/// Records everything a single party emits; time only moves when told to.
class FakeNet final : public Network {
 public:
  void send(PartyId to, Payload body) override { sent.push_back({to, std::move(body)}); }
  void broadcast(Payload body) override {
    for (PartyId p = 0; p < n; ++p) sent.push_back({p, body});
  }
  Time now() const override { return clock; }
  TimerId set_timer(Duration after) override {
    timers[++next_timer] = clock + after;
    return next_timer;
  }
  void cancel_timer(TimerId id) override { timers.erase(id); }
  void record(const sim::TraceEvent& e) override { events.push_back(e); }

  template <class T>
  std::vector<std::pair<PartyId, T>> of() const {
    std::vector<std::pair<PartyId, T>> out;
    for (const auto& s : sent)
      if (const auto* m = std::get_if<T>(&s.body)) out.emplace_back(s.to, *m);
    return out;
  }
  std::size_t count(sim::TraceKind k) const {
    std::size_t c = 0;
    for (const auto& e : events) c += e.kind == k;
    return c;
  }

  std::uint32_t n = 4;
  Time clock = 0;
  std::vector<Sent> sent;
  std::vector<sim::TraceEvent> events;
  std::map<TimerId, Time> timers;
  TimerId next_timer = 0;
};

inline PartyContext make_ctx(PartyId self, FakeNet& net, SignatureLedger& ledger, std::uint32_t n = 4,
                             std::uint32_t f = 1) {
  PartyContext c;
  c.self = self;
  c.config.n = n;
  c.config.f = f;
  c.quorums = derive_quorums(c.config);
  net.n = n;
  c.net = &net;
  c.ledger = &ledger;
  c.signer = Signer(self, &ledger);
  c.validity = payload_limit_predicate(c.config.max_payload);
  return c;
}

}  // namespace ace::test
