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

#ifndef BFM_VALUATIONS_HPP
#define BFM_VALUATIONS_HPP

#include <vector>

#include "bfm/agent_set.hpp"
#include "bfm/rational.hpp"

namespace bfm {

/// Weighted coverage: agent i owns subsets[i] of the ground elements
/// [0, num_elements); a set of agents is worth the total weight of the union.
struct CoverageSpec {
  int num_elements = 0;
  std::vector<AgentSet> subsets;
  std::vector<Rational> weights;

  int num_sets() const { return static_cast<int>(subsets.size()); }

  /// For each element j, the agents whose subset contains j.
  std::vector<AgentSet> element_owners() const;

  void validate() const;
};

/// Plain knapsack: v(S) = sum of values.
struct AdditiveSpec {
  std::vector<Rational> values;

  void validate() const;
};

Rational coverage_value(const CoverageSpec& spec, const AgentSet& chosen);
Rational additive_value(const AdditiveSpec& spec, const AgentSet& chosen);

}  // namespace bfm

#endif  // BFM_VALUATIONS_HPP
