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

#ifndef BFM_ORACLE_HPP
#define BFM_ORACLE_HPP

#include <optional>
#include <string>

#include "bfm/core.hpp"
#include "bfm/mechanisms.hpp"

namespace bfm {

inline constexpr int kAdditiveOptCap = 20;
inline constexpr int kStructuredOptCap = 12;

struct OptResult {
  AgentSet set;
  Rational value;
};

/// Exact budgeted optimum: max v(S) over S inside `active` with total bid at
/// most B. Ties go to the lexicographically smallest set. Throws CapExceeded
/// above 20 agents (additive) or 12 (everything else).
OptResult brute_force_opt(const Instance& instance, const BidProfile& bids, const AgentSet& active);
OptResult brute_force_opt(const Instance& instance, const BidProfile& bids);

/// Exact expected value of rand-isk with solver rho:
/// v(i*) / (2 rho + 1) + 2 rho / (2 rho + 1) * v(greedy_isk(A)).
Rational rand_isk_expectation(const Instance& instance, const BidProfile& bids, const UnbudgetedSolver& solver);

/// OPT / v(output). `infinite` when the output is worthless but OPT is not;
/// 1 when both are zero.
struct Ratio {
  Rational value{1};
  bool infinite = false;

  std::string to_string() const;
  double to_double() const;
};

Ratio make_ratio(const Rational& opt, const Rational& achieved);

Ratio empirical_ratio(const Mechanism& mechanism, const Instance& instance, const BidProfile& bids);

}  // namespace bfm

#endif  // BFM_ORACLE_HPP
