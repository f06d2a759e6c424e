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

#include <bit>
#include <cstdint>
#include <vector>

#include "ace/core.hpp"

namespace ace {

/// Dense set of party indices.
class PartySet {
 public:
  PartySet() = default;

  /// Returns true if `p` was not already present.
  bool insert(PartyId p) {
    const std::size_t word = p / 64;
    if (word >= bits_.size()) bits_.resize(word + 1, 0);
    const std::uint64_t mask = std::uint64_t{1} << (p % 64);
    if (bits_[word] & mask) return false;
    bits_[word] |= mask;
    ++count_;
    return true;
  }

  bool contains(PartyId p) const {
    const std::size_t word = p / 64;
    return word < bits_.size() && (bits_[word] >> (p % 64)) & 1u;
  }

  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  std::vector<PartyId> members() const {
    std::vector<PartyId> out;
    out.reserve(count_);
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      std::uint64_t word = bits_[w];
      while (word) {
        const int bit = std::countr_zero(word);
        out.push_back(static_cast<PartyId>(w * 64 + bit));
        word &= word - 1;
      }
    }
    return out;
  }

  std::uint64_t digest() const {
    std::uint64_t h = 0x5157;
    for (auto w : bits_) h = hash_combine(h, w);
    return hash_combine(h, count_);
  }

  friend bool operator==(const PartySet& a, const PartySet& b) { return a.members() == b.members(); }

 private:
  std::vector<std::uint64_t> bits_;
  std::size_t count_ = 0;
};

}  // namespace ace
