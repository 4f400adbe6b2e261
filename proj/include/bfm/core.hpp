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

#ifndef BFM_CORE_HPP
#define BFM_CORE_HPP

#include <string>
#include <variant>
#include <vector>

#include "bfm/agent_set.hpp"
#include "bfm/indsys.hpp"
#include "bfm/rational.hpp"
#include "bfm/valuations.hpp"

namespace bfm {

using ValuationSpec = std::variant<CoverageSpec, IndependenceSystemSpec, AdditiveSpec>;

int ground_size(const ValuationSpec& valuation);

/// v(S) for any supported family. For independence systems this is the value
/// of the best independent subset of S. Throws InputError on unknown ids.
Rational evaluate(const ValuationSpec& valuation, const AgentSet& set);

Rational singleton_value(const ValuationSpec& valuation, AgentId agent);

/// Family name used in the instance file format ("coverage", "knapsack",
/// "matching", "forest", "partition-matroid", "independent-set",
/// "kd-matching").
std::string family_name(const ValuationSpec& valuation);

struct Agent {
  AgentId id = 0;
  Rational true_cost;
};

/// Declared costs, one per agent.
struct BidProfile {
  std::vector<Rational> bids;

  const Rational& operator[](AgentId agent) const { return bids[static_cast<std::size_t>(agent)]; }
  int size() const { return static_cast<int>(bids.size()); }
  BidProfile with_bid(AgentId agent, Rational bid) const;
};

struct Instance {
  std::vector<Agent> agents;
  Rational budget{1};
  ValuationSpec valuation;

  int num_agents() const { return static_cast<int>(agents.size()); }
  BidProfile truthful_bids() const;

  /// Throws InputError unless ids are 0..n-1 in order, costs are
  /// nonnegative, the budget is positive and the valuation covers n agents.
  void validate() const;
  void check_bids(const BidProfile& bids) const;
};

/// 16-hex-digit FNV-1a digest of the instance's canonical text form.
std::string instance_digest(const Instance& instance);

/// Agents whose bid does not exceed the budget.
AgentSet affordable_agents(const Instance& instance, const BidProfile& bids);

struct Outcome {
  AgentSet winners;
  std::vector<Rational> payments;  // indexed by agent id, zero for losers
  Rational value;
  bool exact_payments = true;

  Rational total_payment() const;
};

}  // namespace bfm

#endif  // BFM_CORE_HPP
