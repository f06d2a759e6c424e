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

#include "ace/context.hpp"

#include <string>

namespace ace {

Value make_value(PartyId proposer, std::string_view label, std::size_t bytes) {
  std::string payload(label);
  payload += "/p" + std::to_string(proposer);
  if (payload.size() < bytes) {
    const std::size_t tag = payload.size();
    payload.resize(bytes);
    for (std::size_t i = tag; i < bytes; ++i) payload[i] = static_cast<char>('a' + (i * 7 + proposer) % 26);
  }
  return Value(std::move(payload), proposer);
}

}  // namespace ace
