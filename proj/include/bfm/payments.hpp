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

#ifndef BFM_PAYMENTS_HPP
#define BFM_PAYMENTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "bfm/core.hpp"
#include "bfm/mechanisms.hpp"

namespace bfm {

/// Relative width at which threshold bisection stops.
Rational bisection_tolerance();

/// sup { b : agent wins when bidding b, others fixed }.
struct WinSupremum {
  std::optional<Rational> value;  // nullopt if the agent never wins
  bool attained = false;          // the agent also wins at exactly `value`
  bool exact = true;              // false when found by bisection
  int evaluations = 0;
};

/// Computes the supremum by evaluating the allocation rule on every bid
/// threshold reported through BidTrace (and the midpoints between them)
/// until no new thresholds appear; the win predicate is then known exactly.
/// When the rule reports an opaque dependence, the final bracket is bisected
/// to bisection_tolerance() and the lower (winning) end is returned.
/// Throws MonotonicityViolation if the agent wins at some bid but loses at a
/// lower one.
WinSupremum win_supremum(const Mechanism& mechanism, const Instance& instance, const BidProfile& bids,
                         AgentId agent);

/// Myerson threshold payment for a winner. Throws InputError for losers.
Rational threshold_payment(const Mechanism& mechanism, const Instance& instance, const BidProfile& bids,
                           AgentId winner);

/// Allocation plus threshold payments (zero for losers).
Outcome run_with_payments(const Mechanism& mechanism, const Instance& instance, const BidProfile& bids);

struct AuditCheck {
  std::string property;
  bool passed = true;
  std::string counterexample;  // empty iff passed
};

struct AuditReport {
  std::string mechanism;
  std::string instance_digest;
  std::vector<AuditCheck> checks;
  Rational payment_total;
  Rational budget;
  bool exact = true;

  bool passed() const;
  const AuditCheck* find(const std::string& property) const;
};

/// Runs the mechanism at the true costs and checks monotonicity on a bid grid
/// (grid_size even steps of [0, B] plus all pairwise breakpoints
/// c_j v_i / v_j, B and the true cost), individual rationality, exact budget
/// feasibility, grid-dominant truthfulness under quasilinear utility, and for
/// greedy-isk style outcomes the per-winner bound p_i <= v_i B / v(M).
/// Failures are recorded in the report, never thrown.
AuditReport audit(const Mechanism& mechanism, const Instance& instance, int grid_size = 16);

}  // namespace bfm

#endif  // BFM_PAYMENTS_HPP
