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

#ifndef BFM_CHECKERS_HPP
#define BFM_CHECKERS_HPP

#include <optional>
#include <vector>

#include "bfm/core.hpp"

namespace bfm {

// Exhaustive structural checks. Each refuses (CapExceeded) above the cap
// instead of sampling, so an empty result is a proof at that size.

inline constexpr int kBruteForceCap = 12;

/// Certified counterexample to diminishing returns:
/// v(S + i) - v(S) < v(T + i) - v(T) with S strictly inside T, i outside T.
struct SubmodularityViolation {
  AgentSet smaller;
  AgentSet larger;
  AgentId element = 0;
  Rational smaller_marginal;
  Rational larger_marginal;
};

std::vector<SubmodularityViolation> check_submodular(const ValuationSpec& valuation,
                                                     const AgentSet& ground,
                                                     int cap = kBruteForceCap);

struct MonotonicityCounterexample {
  AgentSet smaller;
  AgentSet larger;
  Rational smaller_value;
  Rational larger_value;
};

std::vector<MonotonicityCounterexample> check_monotone(const ValuationSpec& valuation,
                                                       const AgentSet& ground,
                                                       int cap = kBruteForceCap);

/// One additive clause alpha_M(S) = sum of v_i over S intersected with M.
struct AdditiveClause {
  AgentSet support;
  std::vector<Rational> coefficients;  // indexed by element id

  Rational operator()(const AgentSet& set) const;
};

struct XosCertificate {
  std::vector<AdditiveClause> clauses;
};

/// Builds one clause per independent subset of `ground` and verifies that
/// v(S) equals the max over clauses for every S inside `ground`. Returns
/// nullopt if verification fails.
std::optional<XosCertificate> check_xos_certificate(const IndependenceSystemSpec& spec,
                                                    const AgentSet& ground,
                                                    int cap = kBruteForceCap);

}  // namespace bfm

#endif  // BFM_CHECKERS_HPP
