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

#include "bfm/oracle.hpp"

#include <cstdint>
#include <limits>

#include "bfm/errors.hpp"

namespace bfm {

OptResult brute_force_opt(const Instance& instance, const BidProfile& bids, const AgentSet& active) {
  instance.check_bids(bids);
  const int cap = std::holds_alternative<AdditiveSpec>(instance.valuation) ? kAdditiveOptCap : kStructuredOptCap;
  if (static_cast<int>(active.size()) > cap) {
    throw CapExceeded("brute-force optimum limited to " + std::to_string(cap) + " agents, got " +
                      std::to_string(active.size()));
  }
  OptResult best;
  const std::uint64_t count = std::uint64_t{1} << active.size();
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    Rational cost;
    for (std::size_t k = 0; k < active.size(); ++k) {
      if (mask >> k & 1U) cost += bids[active[k]];
    }
    if (instance.budget < cost) continue;
    AgentSet set = subset_from_mask(active, mask);
    Rational value = evaluate(instance.valuation, set);
    if (best.value < value || (value == best.value && set < best.set)) {
      best.set = std::move(set);
      best.value = std::move(value);
    }
  }
  return best;
}

OptResult brute_force_opt(const Instance& instance, const BidProfile& bids) {
  return brute_force_opt(instance, bids, range_set(instance.num_agents()));
}

Rational rand_isk_expectation(const Instance& instance, const BidProfile& bids, const UnbudgetedSolver& solver) {
  const auto best = best_singleton(instance, bids);
  if (!best) return Rational(0);
  const Rational singleton = Rational(1) / (Rational(2) * solver.rho + Rational(1));
  const AgentSet greedy = greedy_isk(instance, bids, solver);
  return singleton * singleton_value(instance.valuation, *best) +
         (Rational(1) - singleton) * evaluate(instance.valuation, greedy);
}

std::string Ratio::to_string() const { return infinite ? "inf" : value.to_string(); }

double Ratio::to_double() const { return infinite ? std::numeric_limits<double>::infinity() : value.to_double(); }

Ratio make_ratio(const Rational& opt, const Rational& achieved) {
  if (achieved.is_zero()) return opt.is_zero() ? Ratio{} : Ratio{Rational(0), true};
  return Ratio{opt / achieved, false};
}

Ratio empirical_ratio(const Mechanism& mechanism, const Instance& instance, const BidProfile& bids) {
  const Rational opt = brute_force_opt(instance, bids).value;
  const Allocation allocation = mechanism.allocate(instance, bids);
  return make_ratio(opt, evaluate(instance.valuation, allocation.winners));
}

}  // namespace bfm
