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

#ifndef BFM_MECHANISMS_HPP
#define BFM_MECHANISMS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bfm/core.hpp"

namespace bfm {

/// Rational enclosure of e used wherever a bound involving e is checked
/// exactly: kELower < e < kEUpper.
Rational e_lower();
Rational e_upper();

/// Constants of the fractional-relaxation mechanism for an LP whose
/// integrality gap is at most rho:
///   gamma = sqrt(1 + 4(rho-1)e + 4(rho^2+4rho+1)e^2)
///   alpha = (1 + 2(rho+1)e + gamma) / (2(e-1))
///   ratio = (2(rho+2)e - 1 + gamma) / (2(e-1))  (= alpha + 1)
struct SMConstants {
  double rho = 1.0;
  double gamma = 0.0;
  double alpha = 0.0;
  double ratio = 0.0;
};

/// Throws InputError for rho < 1 or non-finite rho.
SMConstants sm_constants(double rho);

/// Records, for one agent, every value of that agent's bid at which a
/// comparison made by the allocation rule could flip. Between consecutive
/// recorded values the run is identical. `opaque` is set when some decision
/// depends on the bid in a way that cannot be reduced to such thresholds
/// (an LP or brute-force optimum), in which case callers fall back to
/// bisection.
struct BidTrace {
  AgentId agent = 0;
  std::vector<Rational> thresholds;
  bool opaque = false;

  void note(const Rational& value) { thresholds.push_back(value); }
};

/// Deterministic stream of uniforms in [0, 1) from a 64-bit seed.
class CoinSource {
 public:
  explicit CoinSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  double draw();
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// The agent of maximum singleton value among those bidding at most B
/// (lowest id on ties); nullopt if nobody is affordable.
std::optional<AgentId> best_singleton(const Instance& instance, const BidProfile& bids, BidTrace* trace = nullptr);

/// Adaptive greedy on marginal value per unit bid, stopping at the first
/// agent k with b_k > half_budget * (v(S+k) - v(S)) / v(S+k). Agents with
/// zero marginal value are skipped. Coverage and additive valuations only.
AgentSet greedy_sm(const Instance& instance, const BidProfile& bids, const Rational& half_budget,
                   BidTrace* trace = nullptr);

/// opt(instance, bids, active) -> optimum value over `active` within budget.
using OptOracle = std::function<Rational(const Instance&, const BidProfile&, const AgentSet&)>;

/// Returns {i*} when alpha(1) * v(i*) >= OPT(A - i*), else greedy_sm with B/2.
AgentSet mechanism_sm_exact(const Instance& instance, const BidProfile& bids, const OptOracle& opt_oracle,
                            BidTrace* trace = nullptr);

/// Coverage only. As mechanism_sm_exact, but compares against the LP
/// optimum with the constant alpha(2e/(e-1)).
AgentSet mechanism_sm_frac(const Instance& instance, const BidProfile& bids, BidTrace* trace = nullptr);

/// The independence-system view of an instance's valuation (knapsack
/// instances become the free system). Throws InputError for coverage.
IndependenceSystemSpec independence_view(const ValuationSpec& valuation);

/// Greedy-ISK restricted to the agents in `active` (further filtered to
/// bids <= B and positive value). Elements are tried in order of descending
/// bid/value (ties: higher bid first, then lower id); the first one passing
/// v(M) * b_i / v_i <= B returns M = f(current active set).
AgentSet greedy_isk(const Instance& instance, const IndependenceSystemSpec& system, const BidProfile& bids,
                    const AgentSet& active, const UnbudgetedSolver& solver, BidTrace* trace = nullptr);

AgentSet greedy_isk(const Instance& instance, const BidProfile& bids, const UnbudgetedSolver& solver,
                    BidTrace* trace = nullptr);

/// Draws one coin u; {i*} if u < 1/(2 rho + 1), else greedy_isk on all of A.
AgentSet rand_isk(const Instance& instance, const BidProfile& bids, const UnbudgetedSolver& solver,
                  CoinSource& coin, BidTrace* trace = nullptr);

/// {i*} if v(i*) >= v(greedy_isk(A - i*)), else that greedy set.
AgentSet det_isk(const Instance& instance, const BidProfile& bids, const UnbudgetedSolver& solver,
                 BidTrace* trace = nullptr);

/// Negative control: greedy_isk with the budget test removed, i.e. just
/// f(A). Not budget feasible under threshold payments.
AgentSet broken_greedy_isk(const Instance& instance, const BidProfile& bids, const UnbudgetedSolver& solver,
                           BidTrace* trace = nullptr);

enum class MechanismKind {
  kGreedySm,
  kSmExact,
  kSmFrac,
  kGreedyIsk,
  kRandIsk,
  kDetIsk,
  kBrokenGreedyIsk,
};

std::string to_string(MechanismKind kind);
/// Accepts the CLI names: greedy-sm, sm-exact, sm-frac, greedy-isk,
/// rand-isk, det-isk, broken-greedy.
MechanismKind parse_mechanism_kind(const std::string& name);

enum class Branch { kEmpty, kSingleton, kGreedy };

struct Allocation {
  AgentSet winners;
  Branch branch = Branch::kEmpty;
};

/// A configured allocation rule: which mechanism, the coin seed for
/// rand-isk, and optionally the unbudgeted solver (default_solver otherwise).
class Mechanism {
 public:
  explicit Mechanism(MechanismKind kind, std::uint64_t seed = 0, std::optional<UnbudgetedSolver> solver = {});

  MechanismKind kind() const { return kind_; }
  std::string name() const { return to_string(kind_); }
  std::uint64_t seed() const { return seed_; }

  bool is_independence_mechanism() const;
  /// Throws InputError if the mechanism cannot run on this valuation family.
  void check_supports(const Instance& instance) const;

  UnbudgetedSolver solver_for(const IndependenceSystemSpec& system) const;
  Mechanism with_solver(UnbudgetedSolver solver) const;

  Allocation allocate(const Instance& instance, const BidProfile& bids, BidTrace* trace = nullptr) const;

 private:
  MechanismKind kind_;
  std::uint64_t seed_;
  std::optional<UnbudgetedSolver> solver_;
};

}  // namespace bfm

#endif  // BFM_MECHANISMS_HPP
