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

#include "bfm/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bfm/coverage_lp.hpp"
#include "bfm/errors.hpp"
#include "bfm/oracle.hpp"

namespace bfm {
namespace {

using Size = std::size_t;

bool traced(const BidTrace* trace, AgentId agent) { return trace != nullptr && trace->agent == agent; }

void require_submodular_family(const Instance& instance, const char* who) {
  if (std::holds_alternative<IndependenceSystemSpec>(instance.valuation)) {
    throw InputError(std::string(who) + " requires a submodular (coverage or additive) valuation, got " +
                     family_name(instance.valuation));
  }
}

// Holds either a reference to the instance's own system or a converted copy,
// so memoized solvers see a stable address for structured systems.
class SystemView {
 public:
  explicit SystemView(const Instance& instance) {
    if (const auto* system = std::get_if<IndependenceSystemSpec>(&instance.valuation)) {
      system_ = system;
    } else {
      owned_ = independence_view(instance.valuation);
      system_ = &owned_;
    }
  }
  const IndependenceSystemSpec& operator*() const { return *system_; }

 private:
  IndependenceSystemSpec owned_;
  const IndependenceSystemSpec* system_ = nullptr;
};

const Rational& value_of(const IndependenceSystemSpec& system, AgentId e) {
  return system.element_values[static_cast<Size>(e)];
}

Allocation singleton_or_greedy(AgentId best, bool take_best, AgentSet greedy) {
  if (take_best) return {{best}, Branch::kSingleton};
  Branch branch = greedy.empty() ? Branch::kEmpty : Branch::kGreedy;
  return {std::move(greedy), branch};
}

Allocation sm_exact_impl(const Instance& instance, const BidProfile& bids, const OptOracle& opt_oracle,
                         BidTrace* trace) {
  require_submodular_family(instance, "sm-exact");
  const auto best = best_singleton(instance, bids, trace);
  if (!best) return {};
  const AgentSet rest = without(affordable_agents(instance, bids), *best);
  if (trace != nullptr && contains(rest, trace->agent)) trace->opaque = true;
  const Rational opt = opt_oracle(instance, bids, rest);
  const Rational alpha = Rational::from_double(sm_constants(1.0).alpha);
  const bool take_best = opt <= alpha * singleton_value(instance.valuation, *best);
  if (take_best) return singleton_or_greedy(*best, true, {});
  return singleton_or_greedy(*best, false, greedy_sm(instance, bids, instance.budget / Rational(2), trace));
}

Allocation sm_frac_impl(const Instance& instance, const BidProfile& bids, BidTrace* trace) {
  const auto* coverage = std::get_if<CoverageSpec>(&instance.valuation);
  if (coverage == nullptr) {
    throw InputError("sm-frac requires a coverage valuation, got " + family_name(instance.valuation));
  }
  const auto best = best_singleton(instance, bids, trace);
  if (!best) return {};
  const AgentSet rest = without(affordable_agents(instance, bids), *best);
  if (trace != nullptr && contains(rest, trace->agent)) trace->opaque = true;
  const Rational opt_f = coverage_lp_value(*coverage, bids.bids, instance.budget, rest);
  const Rational alpha = Rational::from_double(sm_constants(coverage_integrality_gap()).alpha);
  const bool take_best = opt_f <= alpha * singleton_value(instance.valuation, *best);
  if (take_best) return singleton_or_greedy(*best, true, {});
  return singleton_or_greedy(*best, false, greedy_sm(instance, bids, instance.budget / Rational(2), trace));
}

Allocation rand_isk_impl(const Instance& instance, const BidProfile& bids, const UnbudgetedSolver& solver,
                         CoinSource& coin, BidTrace* trace) {
  const double u = coin.draw();
  const auto best = best_singleton(instance, bids, trace);
  if (!best) return {};
  const Rational singleton_probability = Rational(1) / (Rational(2) * solver.rho + Rational(1));
  if (Rational::from_double(u) < singleton_probability) return {{*best}, Branch::kSingleton};
  const SystemView system(instance);
  AgentSet greedy = greedy_isk(instance, *system, bids, range_set(instance.num_agents()), solver, trace);
  return singleton_or_greedy(*best, false, std::move(greedy));
}

Allocation det_isk_impl(const Instance& instance, const BidProfile& bids, const UnbudgetedSolver& solver,
                        BidTrace* trace) {
  const auto best = best_singleton(instance, bids, trace);
  if (!best) return {};
  const SystemView system(instance);
  AgentSet greedy =
      greedy_isk(instance, *system, bids, without(affordable_agents(instance, bids), *best), solver, trace);
  const bool take_best = total_value(*system, greedy) <= value_of(*system, *best);
  return singleton_or_greedy(*best, take_best, std::move(greedy));
}

}  // namespace

Rational e_lower() { return Rational(2718281828L, 1000000000L); }
Rational e_upper() { return Rational(2718281829L, 1000000000L); }

SMConstants sm_constants(double rho) {
  if (!std::isfinite(rho) || rho < 1.0) throw InputError("sm_constants: rho must be a finite value >= 1");
  constexpr double e = std::numbers::e;
  SMConstants out;
  out.rho = rho;
  out.gamma = std::sqrt(1.0 + 4.0 * (rho - 1.0) * e + 4.0 * (rho * rho + 4.0 * rho + 1.0) * e * e);
  out.alpha = (1.0 + 2.0 * (rho + 1.0) * e + out.gamma) / (2.0 * (e - 1.0));
  out.ratio = (2.0 * (rho + 2.0) * e - 1.0 + out.gamma) / (2.0 * (e - 1.0));
  return out;
}

double CoinSource::draw() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::optional<AgentId> best_singleton(const Instance& instance, const BidProfile& bids, BidTrace* trace) {
  instance.check_bids(bids);
  std::optional<AgentId> best;
  Rational best_value;
  for (AgentId i = 0; i < instance.num_agents(); ++i) {
    if (traced(trace, i)) trace->note(instance.budget);
    if (instance.budget < bids[i]) continue;
    Rational value = singleton_value(instance.valuation, i);
    if (!best || best_value < value) {
      best = i;
      best_value = std::move(value);
    }
  }
  return best;
}

AgentSet greedy_sm(const Instance& instance, const BidProfile& bids, const Rational& half_budget, BidTrace* trace) {
  require_submodular_family(instance, "greedy-sm");
  AgentSet remaining;
  for (AgentId i = 0; i < instance.num_agents(); ++i) {
    if (traced(trace, i)) trace->note(instance.budget);
    if (bids[i] <= instance.budget) remaining.push_back(i);
  }

  AgentSet chosen;
  Rational chosen_value;
  while (!remaining.empty()) {
    std::optional<AgentId> best;
    Rational best_marginal;
    Rational best_with;
    for (AgentId k : remaining) {
      Rational with_k = evaluate(instance.valuation, with(chosen, k));
      Rational marginal = with_k - chosen_value;
      if (marginal.sign() <= 0) continue;
      if (!best) {
        best = k;
        best_marginal = std::move(marginal);
        best_with = std::move(with_k);
        continue;
      }
      // k beats best iff marginal_k / b_k > marginal_best / b_best, then lower bid.
      const Rational& b_k = bids[k];
      const Rational& b_best = bids[*best];
      if (traced(trace, k)) {
        trace->note(marginal * b_best / best_marginal);
        trace->note(b_best);
      } else if (traced(trace, *best)) {
        trace->note(best_marginal * b_k / marginal);
        trace->note(b_k);
      }
      const Rational lhs = marginal * b_best;
      const Rational rhs = best_marginal * b_k;
      if (rhs < lhs || (lhs == rhs && b_k < b_best)) {
        best = k;
        best_marginal = std::move(marginal);
        best_with = std::move(with_k);
      }
    }
    if (!best) break;
    if (traced(trace, *best)) trace->note(half_budget * best_marginal / best_with);
    if (half_budget * best_marginal < bids[*best] * best_with) break;
    chosen = with(chosen, *best);
    chosen_value = std::move(best_with);
    remaining = without(remaining, *best);
  }
  return chosen;
}

AgentSet mechanism_sm_exact(const Instance& instance, const BidProfile& bids, const OptOracle& opt_oracle,
                            BidTrace* trace) {
  return sm_exact_impl(instance, bids, opt_oracle, trace).winners;
}

AgentSet mechanism_sm_frac(const Instance& instance, const BidProfile& bids, BidTrace* trace) {
  return sm_frac_impl(instance, bids, trace).winners;
}

IndependenceSystemSpec independence_view(const ValuationSpec& valuation) {
  if (const auto* system = std::get_if<IndependenceSystemSpec>(&valuation)) return *system;
  if (const auto* additive = std::get_if<AdditiveSpec>(&valuation)) {
    IndependenceSystemSpec free;
    free.variant = IndependenceVariant::kFree;
    free.element_values = additive->values;
    return free;
  }
  throw InputError("independence-system mechanisms do not accept " + family_name(valuation) + " valuations");
}

AgentSet greedy_isk(const Instance& instance, const IndependenceSystemSpec& system, const BidProfile& bids,
                    const AgentSet& active, const UnbudgetedSolver& solver, BidTrace* trace) {
  instance.check_bids(bids);
  AgentSet current;
  for (AgentId i : active) {
    if (traced(trace, i)) trace->note(instance.budget);
    if (instance.budget < bids[i] || value_of(system, i).sign() <= 0) continue;
    current.push_back(i);
  }

  if (trace != nullptr && contains(current, trace->agent)) {
    const AgentId t = trace->agent;
    for (AgentId j : current) {
      if (j == t) continue;
      trace->note(bids[j] * value_of(system, t) / value_of(system, j));
      trace->note(bids[j]);
    }
  }

  std::vector<AgentId> order = current;
  std::sort(order.begin(), order.end(), [&](AgentId a, AgentId b) {
    const Rational lhs = bids[a] * value_of(system, b);
    const Rational rhs = bids[b] * value_of(system, a);
    if (lhs != rhs) return rhs < lhs;
    if (bids[a] != bids[b]) return bids[b] < bids[a];
    return a < b;
  });

  for (AgentId i : order) {
    AgentSet candidate = solver(system, current);
    const Rational candidate_value = total_value(system, candidate);
    if (traced(trace, i) && candidate_value.sign() > 0) {
      trace->note(instance.budget * value_of(system, i) / candidate_value);
    }
    if (candidate_value * bids[i] <= instance.budget * value_of(system, i)) return candidate;
    current = without(current, i);
  }
  return {};
}

AgentSet greedy_isk(const Instance& instance, const BidProfile& bids, const UnbudgetedSolver& solver,
                    BidTrace* trace) {
  const SystemView system(instance);
  return greedy_isk(instance, *system, bids, range_set(instance.num_agents()), solver, trace);
}

AgentSet rand_isk(const Instance& instance, const BidProfile& bids, const UnbudgetedSolver& solver, CoinSource& coin,
                  BidTrace* trace) {
  return rand_isk_impl(instance, bids, solver, coin, trace).winners;
}

AgentSet det_isk(const Instance& instance, const BidProfile& bids, const UnbudgetedSolver& solver, BidTrace* trace) {
  return det_isk_impl(instance, bids, solver, trace).winners;
}

AgentSet broken_greedy_isk(const Instance& instance, const BidProfile& bids, const UnbudgetedSolver& solver,
                           BidTrace* trace) {
  const SystemView system(instance);
  AgentSet active;
  for (AgentId i = 0; i < instance.num_agents(); ++i) {
    if (traced(trace, i)) trace->note(instance.budget);
    if (bids[i] <= instance.budget && value_of(*system, i).sign() > 0) active.push_back(i);
  }
  return solver(*system, active);
}

std::string to_string(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kGreedySm: return "greedy-sm";
    case MechanismKind::kSmExact: return "sm-exact";
    case MechanismKind::kSmFrac: return "sm-frac";
    case MechanismKind::kGreedyIsk: return "greedy-isk";
    case MechanismKind::kRandIsk: return "rand-isk";
    case MechanismKind::kDetIsk: return "det-isk";
    case MechanismKind::kBrokenGreedyIsk: return "broken-greedy";
  }
  return "unknown";
}

MechanismKind parse_mechanism_kind(const std::string& name) {
  for (auto kind : {MechanismKind::kGreedySm, MechanismKind::kSmExact, MechanismKind::kSmFrac,
                    MechanismKind::kGreedyIsk, MechanismKind::kRandIsk, MechanismKind::kDetIsk,
                    MechanismKind::kBrokenGreedyIsk}) {
    if (to_string(kind) == name) return kind;
  }
  throw InputError("unknown mechanism '" + name + "'");
}

Mechanism::Mechanism(MechanismKind kind, std::uint64_t seed, std::optional<UnbudgetedSolver> solver)
    : kind_(kind), seed_(seed), solver_(std::move(solver)) {}

bool Mechanism::is_independence_mechanism() const {
  return kind_ == MechanismKind::kGreedyIsk || kind_ == MechanismKind::kRandIsk || kind_ == MechanismKind::kDetIsk ||
         kind_ == MechanismKind::kBrokenGreedyIsk;
}

void Mechanism::check_supports(const Instance& instance) const {
  const bool coverage = std::holds_alternative<CoverageSpec>(instance.valuation);
  const bool system = std::holds_alternative<IndependenceSystemSpec>(instance.valuation);
  if (is_independence_mechanism() && coverage) {
    throw InputError(name() + " needs an independence-system or knapsack instance, got coverage");
  }
  if (!is_independence_mechanism() && system) {
    throw InputError(name() + " needs a coverage or knapsack instance, got " + family_name(instance.valuation));
  }
  if (kind_ == MechanismKind::kSmFrac && !coverage) {
    throw InputError("sm-frac needs a coverage instance, got " + family_name(instance.valuation));
  }
}

UnbudgetedSolver Mechanism::solver_for(const IndependenceSystemSpec& system) const {
  return solver_ ? *solver_ : default_solver(system);
}

Mechanism Mechanism::with_solver(UnbudgetedSolver solver) const { return Mechanism(kind_, seed_, std::move(solver)); }

Allocation Mechanism::allocate(const Instance& instance, const BidProfile& bids, BidTrace* trace) const {
  check_supports(instance);
  instance.check_bids(bids);
  switch (kind_) {
    case MechanismKind::kGreedySm: {
      AgentSet winners = greedy_sm(instance, bids, instance.budget / Rational(2), trace);
      Branch branch = winners.empty() ? Branch::kEmpty : Branch::kGreedy;
      return {std::move(winners), branch};
    }
    case MechanismKind::kSmExact:
      return sm_exact_impl(
          instance, bids,
          [](const Instance& inst, const BidProfile& b, const AgentSet& active) {
            return brute_force_opt(inst, b, active).value;
          },
          trace);
    case MechanismKind::kSmFrac:
      return sm_frac_impl(instance, bids, trace);
    default:
      break;
  }
  const SystemView system(instance);
  const UnbudgetedSolver solver = solver_for(*system);
  switch (kind_) {
    case MechanismKind::kGreedyIsk: {
      AgentSet winners = greedy_isk(instance, *system, bids, range_set(instance.num_agents()), solver, trace);
      Branch branch = winners.empty() ? Branch::kEmpty : Branch::kGreedy;
      return {std::move(winners), branch};
    }
    case MechanismKind::kRandIsk: {
      CoinSource coin(seed_);
      return rand_isk_impl(instance, bids, solver, coin, trace);
    }
    case MechanismKind::kDetIsk:
      return det_isk_impl(instance, bids, solver, trace);
    case MechanismKind::kBrokenGreedyIsk: {
      AgentSet winners = broken_greedy_isk(instance, bids, solver, trace);
      Branch branch = winners.empty() ? Branch::kEmpty : Branch::kGreedy;
      return {std::move(winners), branch};
    }
    default:
      break;
  }
  throw InputError("unhandled mechanism " + name());
}

}  // namespace bfm
