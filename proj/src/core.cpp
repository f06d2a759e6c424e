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

#include "ace/core.hpp"

#include <string>

namespace ace {

void Config::validate() const {
  if (n == 0) throw ConfigError("n must be positive");
  if (f >= n) throw ConfigError("f must be smaller than n");
  switch (model) {
    case FailureModel::byzantine:
      if (n < 3 * f + 1)
        throw ConfigError("byzantine model requires n >= 3f+1 (n=" + std::to_string(n) +
                          ", f=" + std::to_string(f) + ")");
      break;
    case FailureModel::crash:
      if (n < 2 * f + 1)
        throw ConfigError("crash model requires n >= 2f+1 (n=" + std::to_string(n) +
                          ", f=" + std::to_string(f) + ")");
      break;
  }
  if (max_payload == 0) throw ConfigError("max_payload must be positive");
}

Quorums derive_quorums(const Config& config) {
  config.validate();
  return Quorums{
      .engage_done = config.n - config.f,
      .barrier_shares = config.n - config.f,
      .election_shares = config.f + 1,
      .forward_decides = config.f + 1,
  };
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view stream) {
  return mix64(master ^ fnv1a(stream));
}

Value::Value(std::string payload, PartyId proposer)
    : payload_(std::make_shared<const std::string>(std::move(payload))), proposer_(proposer) {
  digest_ = hash_combine(fnv1a(*payload_), proposer_);
}

ValidityPredicate payload_limit_predicate(std::size_t max_payload) {
  return [max_payload](const Value& v) { return !v.empty() && v.size() <= max_payload; };
}

std::uint64_t InstanceId::digest() const {
  return hash_combine(hash_combine(mix64(agreement), wave), leader);
}

std::string to_string(const InstanceId& id) {
  return "(" + std::to_string(id.agreement) + "," + std::to_string(id.wave) + ",p" +
         std::to_string(id.leader) + ")";
}

std::string to_string(FailureModel m) { return m == FailureModel::byzantine ? "byzantine" : "crash"; }

FailureModel parse_failure_model(std::string_view s) {
  if (s == "byzantine") return FailureModel::byzantine;
  if (s == "crash") return FailureModel::crash;
  throw ConfigError("unknown failure model: " + std::string(s));
}

}  // namespace ace
