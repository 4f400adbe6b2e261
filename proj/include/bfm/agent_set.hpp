// Copyright 2026 The Authors.
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

#ifndef BFM_AGENT_SET_HPP
#define BFM_AGENT_SET_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace bfm {

using AgentId = int;

/// Sorted, duplicate-free list of agent (element) ids.
using AgentSet = std::vector<AgentId>;

inline AgentSet normalized(AgentSet set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

inline bool contains(const AgentSet& set, AgentId id) {
  return std::binary_search(set.begin(), set.end(), id);
}

inline AgentSet without(const AgentSet& set, AgentId id) {
  AgentSet out;
  out.reserve(set.size());
  for (AgentId a : set) {
    if (a != id) out.push_back(a);
  }
  return out;
}

inline AgentSet with(const AgentSet& set, AgentId id) {
  AgentSet out = set;
  auto it = std::lower_bound(out.begin(), out.end(), id);
  if (it == out.end() || *it != id) out.insert(it, id);
  return out;
}

inline AgentSet range_set(int n) {
  AgentSet out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = i;
  return out;
}

/// Members of `ground` selected by the bits of `mask` (bit k -> ground[k]).
inline AgentSet subset_from_mask(const AgentSet& ground, std::uint64_t mask) {
  AgentSet out;
  for (std::size_t k = 0; k < ground.size(); ++k) {
    if (mask >> k & 1U) out.push_back(ground[k]);
  }
  return out;
}

std::string to_string(const AgentSet& set);

}  // namespace bfm

#endif  // BFM_AGENT_SET_HPP
