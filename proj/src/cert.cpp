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

#include "ace/cert.hpp"

namespace ace {

std::uint64_t vote_subject(const InstanceId& instance, int step, std::uint64_t value_digest) {
  return hash_combine(hash_combine(hash_combine(0x766f7465ull, instance.digest()), step), value_digest);
}

std::uint64_t QuorumCert::digest() const {
  return hash_combine(hash_combine(hash_combine(instance.digest(), step), value.digest()), signers.digest());
}

bool outranks(const QuorumCert& a, const QuorumCert& b) {
  if (a.instance.wave != b.instance.wave) return a.instance.wave > b.instance.wave;
  if (a.step != b.step) return a.step > b.step;
  return a.instance.leader < b.instance.leader;
}

bool verify_cert(const QuorumCert& cert, const SignatureLedger& ledger, std::uint32_t quorum) {
  if (cert.step < 1 || cert.step > kVoteSteps) return false;
  if (cert.value.empty()) return false;
  if (cert.signers.size() < quorum) return false;
  const auto subject = vote_subject(cert.instance, cert.step, cert.value.digest());
  for (PartyId p : cert.signers.members())
    if (!ledger.verify(p, subject)) return false;
  return true;
}

namespace {

void raise(std::optional<QuorumCert>& slot, const QuorumCert& c) {
  if (!slot || outranks(c, *slot)) slot = c;
}

void raise(std::optional<QuorumCert>& slot, const std::optional<QuorumCert>& c) {
  if (c) raise(slot, *c);
}

std::uint64_t opt_digest(const std::optional<QuorumCert>& c) { return c ? c->digest() : 0x6e6f6e65ull; }

}  // namespace

void ClosingState::raise_high(const QuorumCert& c) { raise(high, c); }
void ClosingState::raise_lock(const QuorumCert& c) { raise(locked, c); }
void ClosingState::raise_decision(const QuorumCert& c) { raise(decision, c); }

void ClosingState::absorb(const ClosingState& other) {
  raise(locked, other.locked);
  raise(high, other.high);
  raise(decision, other.decision);
}

std::uint64_t ClosingState::digest() const {
  return hash_combine(hash_combine(opt_digest(locked), opt_digest(high)), opt_digest(decision));
}

}  // namespace ace
