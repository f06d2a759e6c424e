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
#include <unordered_set>

#include "ace/core.hpp"

namespace ace {

/// Simulation stand-in for signatures: a signature by `signer` on `subject`
/// is valid iff the signer actually produced it. There is no forging
/// primitive, so provenance is exact.
class SignatureLedger {
 public:
  void record(PartyId signer, std::uint64_t subject) { entries_.insert(key(signer, subject)); }
  bool verify(PartyId signer, std::uint64_t subject) const { return entries_.contains(key(signer, subject)); }
  std::size_t size() const { return entries_.size(); }

 private:
  struct Entry {
    PartyId signer;
    std::uint64_t subject;
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  struct EntryHash {
    std::size_t operator()(const Entry& e) const { return hash_combine(e.subject, e.signer); }
  };
  static Entry key(PartyId signer, std::uint64_t subject) { return Entry{signer, subject}; }

  std::unordered_set<Entry, EntryHash> entries_;
};

/// Signing capability bound to a single party.
class Signer {
 public:
  Signer() = default;
  Signer(PartyId self, SignatureLedger* ledger) : self_(self), ledger_(ledger) {}

  void sign(std::uint64_t subject) const {
    if (ledger_) ledger_->record(self_, subject);
  }
  PartyId id() const { return self_; }

 private:
  PartyId self_ = kNoParty;
  SignatureLedger* ledger_ = nullptr;
};

}  // namespace ace
