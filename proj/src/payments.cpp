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

#include "bfm/payments.hpp"

#include <map>
#include <set>
#include <sstream>

#include "bfm/errors.hpp"

namespace bfm {
namespace {

constexpr int kMaxRefinementRounds = 32;

bool wins(const Mechanism& mechanism, const Instance& instance, const BidProfile& bids, AgentId agent,
          const Rational& bid, BidTrace* trace) {
  return contains(mechanism.allocate(instance, bids.with_bid(agent, bid), trace).winners, agent);
}

std::string describe_flip(AgentId agent, const Rational& high, const Rational& low) {
  std::ostringstream os;
  os << "agent " << agent << " wins at bid " << high << " but loses at lower bid " << low;
  return os.str();
}

// Grid of bids for the audit: even steps, pairwise ratio breakpoints, B and
// the true cost.
std::vector<Rational> audit_grid(const Instance& instance, AgentId agent, int grid_size) {
  std::set<Rational> points;
  const Rational& budget = instance.budget;
  const int steps = std::max(grid_size, 1);
  for (int k = 0; k <= steps; ++k) points.insert(budget * Rational(k) / Rational(steps));
  const Rational own = singleton_value(instance.valuation, agent);
  for (AgentId j = 0; j < instance.num_agents(); ++j) {
    if (j == agent) continue;
    const Rational other = singleton_value(instance.valuation, j);
    if (other.sign() <= 0) continue;
    const Rational point = instance.agents[static_cast<std::size_t>(j)].true_cost * own / other;
    if (point <= budget) points.insert(point);
  }
  points.insert(budget);
  points.insert(instance.agents[static_cast<std::size_t>(agent)].true_cost);
  return {points.begin(), points.end()};
}

Mechanism audit_copy(const Mechanism& mechanism, const Instance& instance) {
  if (!mechanism.is_independence_mechanism()) return mechanism;
  const IndependenceSystemSpec view = independence_view(instance.valuation);
  return mechanism.with_solver(memoized(mechanism.solver_for(view)));
}

}  // namespace

Rational bisection_tolerance() {
  Rational tolerance(1);
  for (int k = 0; k < 60; ++k) tolerance /= Rational(2);
  return tolerance;
}

WinSupremum win_supremum(const Mechanism& mechanism, const Instance& instance, const BidProfile& bids,
                         AgentId agent) {
  instance.check_bids(bids);
  if (agent < 0 || agent >= instance.num_agents()) throw InputError("unknown agent " + std::to_string(agent));
  const Rational& budget = instance.budget;

  WinSupremum result;
  std::set<Rational> candidates{Rational(0), budget};
  if (bids[agent] <= budget) candidates.insert(bids[agent]);
  std::map<Rational, bool> outcome;  // probe -> wins
  bool opaque = false;
  bool converged = false;

  auto probe = [&](const Rational& bid, std::set<Rational>& discovered) {
    if (outcome.count(bid)) return;
    BidTrace trace{agent, {}, false};
    outcome[bid] = wins(mechanism, instance, bids, agent, bid, &trace);
    ++result.evaluations;
    opaque = opaque || trace.opaque;
    for (const Rational& t : trace.thresholds) {
      if (t.sign() >= 0 && t <= budget && !candidates.count(t)) discovered.insert(t);
    }
  };

  for (int round = 0; round < kMaxRefinementRounds; ++round) {
    std::set<Rational> discovered;
    std::optional<Rational> previous;
    for (const Rational& c : candidates) {
      if (previous) probe((*previous + c) / Rational(2), discovered);
      probe(c, discovered);
      previous = c;
    }
    probe(budget + Rational(1), discovered);
    if (discovered.empty()) {
      converged = true;
      break;
    }
    candidates.insert(discovered.begin(), discovered.end());
  }
  if (!converged) opaque = true;

  // The win set must be a prefix of the probes in ascending order.
  std::optional<Rational> first_loss;
  std::optional<Rational> last_win;
  for (const auto& [bid, won] : outcome) {
    if (won) {
      if (first_loss) throw MonotonicityViolation(describe_flip(agent, bid, *first_loss));
      last_win = bid;
    } else if (!first_loss) {
      first_loss = bid;
    }
  }
  if (!last_win) return result;

  if (!opaque) {
    result.exact = true;
    if (candidates.count(*last_win)) {
      result.value = *last_win;
      result.attained = true;
    } else {
      result.value = *first_loss;
      result.attained = false;
    }
    return result;
  }

  Rational low = *last_win;
  Rational high = *first_loss;
  const Rational tolerance = bisection_tolerance();
  while (high - low > tolerance * high) {
    const Rational mid = (low + high) / Rational(2);
    ++result.evaluations;
    if (wins(mechanism, instance, bids, agent, mid, nullptr)) {
      low = mid;
    } else {
      high = mid;
    }
  }
  result.value = low;
  result.attained = true;
  result.exact = false;
  return result;
}

Rational threshold_payment(const Mechanism& mechanism, const Instance& instance, const BidProfile& bids,
                           AgentId winner) {
  if (!contains(mechanism.allocate(instance, bids).winners, winner)) {
    throw InputError("agent " + std::to_string(winner) + " is not a winner");
  }
  const WinSupremum sup = win_supremum(mechanism, instance, bids, winner);
  return *sup.value;
}

Outcome run_with_payments(const Mechanism& mechanism, const Instance& instance, const BidProfile& bids) {
  Outcome outcome;
  outcome.winners = mechanism.allocate(instance, bids).winners;
  outcome.payments.assign(static_cast<std::size_t>(instance.num_agents()), Rational(0));
  for (AgentId w : outcome.winners) {
    const WinSupremum sup = win_supremum(mechanism, instance, bids, w);
    outcome.payments[static_cast<std::size_t>(w)] = *sup.value;
    outcome.exact_payments = outcome.exact_payments && sup.exact;
  }
  outcome.value = evaluate(instance.valuation, outcome.winners);
  return outcome;
}

bool AuditReport::passed() const {
  for (const auto& check : checks) {
    if (!check.passed) return false;
  }
  return true;
}

const AuditCheck* AuditReport::find(const std::string& property) const {
  for (const auto& check : checks) {
    if (check.property == property) return &check;
  }
  return nullptr;
}

AuditReport audit(const Mechanism& mechanism, const Instance& instance, int grid_size) {
  instance.validate();
  const Mechanism audited = audit_copy(mechanism, instance);
  const BidProfile truth = instance.truthful_bids();
  const int n = instance.num_agents();

  AuditReport report;
  report.mechanism = mechanism.name();
  report.instance_digest = instance_digest(instance);
  report.budget = instance.budget;

  AuditCheck monotone{"monotonicity", true, {}};
  AuditCheck rational{"individual-rationality", true, {}};
  AuditCheck budget{"budget-feasibility", true, {}};
  AuditCheck truthful{"truthfulness", true, {}};
  auto fail = [](AuditCheck& check, const std::string& message) {
    if (check.passed) {
      check.passed = false;
      check.counterexample = message;
    }
  };

  const Allocation allocation = audited.allocate(instance, truth);
  std::vector<Rational> payments(static_cast<std::size_t>(n));
  std::vector<std::optional<Rational>> suprema(static_cast<std::size_t>(n));

  for (AgentId i = 0; i < n; ++i) {
    const Rational& cost = instance.agents[static_cast<std::size_t>(i)].true_cost;
    const bool winner = contains(allocation.winners, i);

    bool any_grid_win = false;
    std::optional<Rational> first_loss;
    for (const Rational& bid : audit_grid(instance, i, grid_size)) {
      const bool won = wins(audited, instance, truth, i, bid, nullptr);
      if (won) {
        any_grid_win = true;
        if (first_loss) fail(monotone, describe_flip(i, bid, *first_loss));
      } else if (!first_loss) {
        first_loss = bid;
      }
    }

    if (winner || any_grid_win) {
      try {
        const WinSupremum sup = win_supremum(audited, instance, truth, i);
        suprema[static_cast<std::size_t>(i)] = sup.value;
        report.exact = report.exact && sup.exact;
      } catch (const MonotonicityViolation& violation) {
        fail(monotone, violation.what());
      }
    }
    if (winner) {
      if (!suprema[static_cast<std::size_t>(i)]) {
        fail(monotone, "agent " + std::to_string(i) + " wins at its true cost but has no winning supremum");
        continue;
      }
      payments[static_cast<std::size_t>(i)] = *suprema[static_cast<std::size_t>(i)];
      if (payments[static_cast<std::size_t>(i)] < cost) {
        std::ostringstream os;
        os << "winner " << i << " is paid " << payments[static_cast<std::size_t>(i)] << " below its cost " << cost;
        fail(rational, os.str());
      }
    }

    // Quasilinear utility; the payment for any winning bid is the supremum,
    // which does not depend on the agent's own bid.
    if (suprema[static_cast<std::size_t>(i)]) {
      const Rational deviation_utility = *suprema[static_cast<std::size_t>(i)] - cost;
      const Rational truthful_utility = winner ? deviation_utility : Rational(0);
      if (any_grid_win && truthful_utility < deviation_utility) {
        std::ostringstream os;
        os << "agent " << i << " gains " << deviation_utility << " by deviating, " << truthful_utility
           << " when truthful";
        fail(truthful, os.str());
      }
    }
  }

  for (const Rational& p : payments) report.payment_total += p;
  Rational allowed = instance.budget;
  if (!report.exact) allowed += Rational(n) * instance.budget * bisection_tolerance();
  if (allowed < report.payment_total) {
    std::ostringstream os;
    os << "payments total " << report.payment_total << " exceed budget " << instance.budget << " for winners "
       << to_string(allocation.winners);
    fail(budget, os.str());
  }

  report.checks = {monotone, rational, budget, truthful};

  const bool greedy_style = audited.is_independence_mechanism() && allocation.branch == Branch::kGreedy;
  if (greedy_style) {
    AuditCheck bound{"per-winner-bound", true, {}};
    const Rational total = evaluate(instance.valuation, allocation.winners);
    for (AgentId w : allocation.winners) {
      const Rational limit = singleton_value(instance.valuation, w) * instance.budget / total;
      if (limit < payments[static_cast<std::size_t>(w)]) {
        std::ostringstream os;
        os << "winner " << w << " is paid " << payments[static_cast<std::size_t>(w)] << " above v_i B / v(M) = "
           << limit;
        fail(bound, os.str());
      }
    }
    report.checks.push_back(bound);
  }
  return report;
}

}  // namespace bfm
