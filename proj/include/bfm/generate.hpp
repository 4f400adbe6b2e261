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

#ifndef BFM_GENERATE_HPP
#define BFM_GENERATE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bfm/core.hpp"

namespace bfm {

/// coverage, knapsack, matching, forest, partition-matroid,
/// independent-set, kd-matching.
const std::vector<std::string>& instance_families();

struct GenerateOptions {
  std::string family;
  int size = 8;          // agents: sets, items, edges, vertices or hyperedges
  std::uint64_t seed = 0;
  int elements = 0;      // coverage ground elements; 0 picks size + 2 capped at 10
};

/// Deterministic per seed. Costs are small-denominator rationals and the
/// budget lies in [max cost, total cost].
Instance generate_instance(const GenerateOptions& options);

/// Four pairwise-disjoint edges with values (v + 2 eps, v, v, v + eps),
/// costs (delta, 10, 10, delta) and budget 20 + 2 delta. Needs
/// delta < 5 eps / v.
Instance tight_matching_instance(const Rational& v, const Rational& eps, const Rational& delta);

}  // namespace bfm

#endif  // BFM_GENERATE_HPP
