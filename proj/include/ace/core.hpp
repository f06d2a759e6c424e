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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ace {

using PartyId = std::uint32_t;
inline constexpr PartyId kNoParty = 0xffffffffu;

/// Simulated time in integral microsecond ticks.
using Time = std::int64_t;
using Duration = std::int64_t;

inline constexpr Duration kMillisecond = 1000;
inline constexpr Duration kSecond = 1000 * kMillisecond;

inline constexpr std::size_t kDefaultMaxPayload = 10000;

enum class FailureModel { byzantine, crash };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  std::uint32_t n = 4;
  std::uint32_t f = 1;
  FailureModel model = FailureModel::byzantine;
  std::uint64_t seed = 1;
  std::size_t max_payload = kDefaultMaxPayload;

  std::uint32_t quorum() const { return n - f; }

  /// Throws ConfigError when the n/f relation does not hold for the model.
  void validate() const;
};

struct Quorums {
  std::uint32_t engage_done = 0;
  std::uint32_t barrier_shares = 0;
  std::uint32_t election_shares = 0;
  std::uint32_t forward_decides = 0;

  friend bool operator==(const Quorums&, const Quorums&) = default;
};

Quorums derive_quorums(const Config& config);

// 64-bit mixing used for digests, coin values and seed fan-out. Stable across
// platforms and builds, unlike std::hash.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t v) {
  return mix64(seed ^ (v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2)));
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t basis = 0xcbf29ce484222325ull);

/// Derives an independent sub-stream seed from a master seed and a name.
std::uint64_t derive_seed(std::uint64_t master, std::string_view stream);

/// A proposed value. The payload is shared and immutable so values can be
/// copied into every message that carries them.
class Value {
 public:
  Value() = default;
  Value(std::string payload, PartyId proposer);

  std::string_view payload() const { return payload_ ? std::string_view(*payload_) : std::string_view(); }
  std::size_t size() const { return payload_ ? payload_->size() : 0; }
  PartyId proposer() const { return proposer_; }
  std::uint64_t digest() const { return digest_; }
  bool empty() const { return payload_ == nullptr; }

  friend bool operator==(const Value& a, const Value& b) {
    return a.digest_ == b.digest_ && a.proposer_ == b.proposer_ && a.payload() == b.payload();
  }

 private:
  std::shared_ptr<const std::string> payload_;
  PartyId proposer_ = kNoParty;
  std::uint64_t digest_ = 0;
};

using ValidityPredicate = std::function<bool(const Value&)>;

inline bool check_validity(const Value& v, const ValidityPredicate& pred) { return pred(v); }

/// Accepts any value whose payload fits in `max_payload` bytes.
ValidityPredicate payload_limit_predicate(std::size_t max_payload);

/// Slot number for SMR runs; 1 for a standalone single-shot agreement.
using AgreementId = std::uint64_t;

struct InstanceId {
  AgreementId agreement = 0;
  std::uint64_t wave = 0;  // wave for ACE, view for the baseline
  PartyId leader = kNoParty;

  friend auto operator<=>(const InstanceId&, const InstanceId&) = default;
  std::uint64_t digest() const;
};

std::string to_string(const InstanceId& id);
std::string to_string(FailureModel m);
FailureModel parse_failure_model(std::string_view s);

}  // namespace ace
