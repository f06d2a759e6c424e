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

#include "ace/sim/trace.hpp"

#include <ostream>

namespace ace::sim {

std::string_view to_string(TraceKind k) {
  switch (k) {
    case TraceKind::send: return "send";
    case TraceKind::deliver: return "deliver";
    case TraceKind::engage_invoke: return "engage_invoke";
    case TraceKind::engage_resolve: return "engage_resolve";
    case TraceKind::wedge_invoke: return "wedge_invoke";
    case TraceKind::wedge_resolve: return "wedge_resolve";
    case TraceKind::barrier_ready: return "barrier_ready";
    case TraceKind::barrier_sync: return "barrier_sync";
    case TraceKind::barrier_token: return "barrier_token";
    case TraceKind::elect_invoke: return "elect_invoke";
    case TraceKind::elect_resolve: return "elect_resolve";
    case TraceKind::coin_reveal: return "coin_reveal";
    case TraceKind::decide: return "decide";
    case TraceKind::decide_quorum: return "decide_quorum";
    case TraceKind::output: return "output";
    case TraceKind::slot_start: return "slot_start";
    case TraceKind::slot_free: return "slot_free";
    case TraceKind::view_start: return "view_start";
    case TraceKind::view_timeout: return "view_timeout";
    case TraceKind::wave_start: return "wave_start";
    case TraceKind::violation: return "violation";
    case TraceKind::crash: return "crash";
  }
  return "?";
}

namespace {

void field(std::string& out, std::string_view key, std::uint64_t v, bool first = false) {
  if (!first) out.push_back(',');
  out.push_back('"');
  out.append(key);
  out.append("\":");
  out.append(std::to_string(v));
}

void field_signed(std::string& out, std::string_view key, std::int64_t v) {
  out.push_back(',');
  out.push_back('"');
  out.append(key);
  out.append("\":");
  out.append(std::to_string(v));
}

void field_str(std::string& out, std::string_view key, std::string_view v) {
  out.append(",\"");
  out.append(key);
  out.append("\":\"");
  out.append(v);
  out.push_back('"');
}

std::int64_t party_json(PartyId p) { return p == kNoParty ? -1 : static_cast<std::int64_t>(p); }

}  // namespace

std::string to_canonical_json(const TraceEvent& e) {
  std::string out;
  out.reserve(160);
  out.push_back('{');
  field(out, "a", e.agreement, true);
  field(out, "d", e.digest);
  field_str(out, "k", to_string(e.kind));
  field_signed(out, "l", party_json(e.leader));
  field_str(out, "m", to_string(e.msg));
  field_signed(out, "p", party_json(e.party));
  field_signed(out, "q", party_json(e.peer));
  field(out, "r", e.round);
  field_signed(out, "s", e.step);
  field_signed(out, "t", e.time);
  field(out, "x", e.aux);
  out.push_back('}');
  return out;
}

std::uint64_t Trace::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const auto& e : events_) {
    h = fnv1a(to_canonical_json(e), h);
    h = fnv1a("\n", h);
  }
  return h;
}

void Trace::write_ndjson(std::ostream& os) const {
  for (const auto& e : events_) os << to_canonical_json(e) << '\n';
}

}  // namespace ace::sim
