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

#include "bfm/checkers.hpp"

#include <cstdint>

#include "bfm/errors.hpp"

namespace bfm {
namespace {

using Mask = std::uint64_t;

void check_cap(const AgentSet& ground, int cap) {
  if (static_cast<int>(ground.size()) > cap) {
    throw CapExceeded("exhaustive check limited to " + std::to_string(cap) + " ground elements, got " +
                      std::to_string(ground.size()));
  }
}

std::vector<Rational> all_subset_values(const ValuationSpec& valuation, const AgentSet& ground) {
  const Mask count = Mask{1} << ground.size();
  std::vector<Rational> values(count);
  for (Mask mask = 0; mask < count; ++mask) values[mask] = evaluate(valuation, subset_from_mask(ground, mask));
  return values;
}

}  // namespace

std::vector<SubmodularityViolation> check_submodular(const ValuationSpec& valuation, const AgentSet& ground, int cap) {
  check_cap(ground, cap);
  const std::size_t n = ground.size();
  const auto values = all_subset_values(valuation, ground);
  const Mask full = (Mask{1} << n) - 1;

  std::vector<SubmodularityViolation> violations;
  for (Mask larger = 0; larger <= full; ++larger) {
    for (std::size_t k = 0; k < n; ++k) {
      const Mask bit = Mask{1} << k;
      if (larger & bit) continue;
      const Rational larger_marginal = values[larger | bit] - values[larger];
      // Proper submasks of `larger`, including the empty set.
      for (Mask smaller = (larger - 1) & larger;; smaller = (smaller - 1) & larger) {
        if (smaller == larger) break;
        const Rational smaller_marginal = values[smaller | bit] - values[smaller];
        if (smaller_marginal < larger_marginal) {
          violations.push_back({subset_from_mask(ground, smaller), subset_from_mask(ground, larger), ground[k],
                                smaller_marginal, larger_marginal});
        }
        if (smaller == 0) break;
      }
    }
  }
  return violations;
}

std::vector<MonotonicityCounterexample> check_monotone(const ValuationSpec& valuation, const AgentSet& ground,
                                                       int cap) {
  check_cap(ground, cap);
  const std::size_t n = ground.size();
  const auto values = all_subset_values(valuation, ground);
  std::vector<MonotonicityCounterexample> out;
  for (Mask mask = 0; mask < values.size(); ++mask) {
    for (std::size_t k = 0; k < n; ++k) {
      const Mask bit = Mask{1} << k;
      if (mask & bit) continue;
      if (values[mask | bit] < values[mask]) {
        out.push_back({subset_from_mask(ground, mask), subset_from_mask(ground, mask | bit), values[mask],
                       values[mask | bit]});
      }
    }
  }
  return out;
}

Rational AdditiveClause::operator()(const AgentSet& set) const {
  Rational total;
  for (AgentId i : set) {
    if (i >= 0 && static_cast<std::size_t>(i) < coefficients.size()) total += coefficients[static_cast<std::size_t>(i)];
  }
  return total;
}

std::optional<XosCertificate> check_xos_certificate(const IndependenceSystemSpec& spec, const AgentSet& ground,
                                                    int cap) {
  check_cap(ground, cap);
  const Mask count = Mask{1} << ground.size();
  XosCertificate certificate;
  for (Mask mask = 0; mask < count; ++mask) {
    AgentSet support = subset_from_mask(ground, mask);
    if (!is_independent(spec, support)) continue;
    AdditiveClause clause{support, std::vector<Rational>(static_cast<std::size_t>(spec.size()))};
    for (AgentId i : clause.support) clause.coefficients[static_cast<std::size_t>(i)] = spec.element_values[static_cast<std::size_t>(i)];
    certificate.clauses.push_back(std::move(clause));
  }
  const ValuationSpec valuation = spec;
  for (Mask mask = 0; mask < count; ++mask) {
    const AgentSet set = subset_from_mask(ground, mask);
    Rational best;
    for (const auto& clause : certificate.clauses) best = max(best, clause(set));
    if (best != evaluate(valuation, set)) return std::nullopt;
  }
  return certificate;
}

}  // namespace bfm
