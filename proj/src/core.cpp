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

#include "bfm/core.hpp"

#include <cstdint>
#include <cstdio>
#include <sstream>

#include "bfm/errors.hpp"

namespace bfm {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

int ground_size(const ValuationSpec& valuation) {
  return std::visit(Overloaded{
                        [](const CoverageSpec& s) { return s.num_sets(); },
                        [](const IndependenceSystemSpec& s) { return s.size(); },
                        [](const AdditiveSpec& s) { return static_cast<int>(s.values.size()); },
                    },
                    valuation);
}

Rational evaluate(const ValuationSpec& valuation, const AgentSet& set) {
  return std::visit(Overloaded{
                        [&](const CoverageSpec& s) { return coverage_value(s, set); },
                        [&](const IndependenceSystemSpec& s) {
                          if (is_independent(s, set)) return total_value(s, set);
                          return total_value(s, max_weight_independent(s, set));
                        },
                        [&](const AdditiveSpec& s) { return additive_value(s, set); },
                    },
                    valuation);
}

Rational singleton_value(const ValuationSpec& valuation, AgentId agent) { return evaluate(valuation, {agent}); }

std::string family_name(const ValuationSpec& valuation) {
  return std::visit(Overloaded{
                        [](const CoverageSpec&) { return std::string("coverage"); },
                        [](const IndependenceSystemSpec& s) {
                          return s.variant == IndependenceVariant::kFree ? std::string("knapsack") : to_string(s.variant);
                        },
                        [](const AdditiveSpec&) { return std::string("knapsack"); },
                    },
                    valuation);
}

BidProfile BidProfile::with_bid(AgentId agent, Rational bid) const {
  BidProfile out = *this;
  out.bids.at(static_cast<std::size_t>(agent)) = std::move(bid);
  return out;
}

BidProfile Instance::truthful_bids() const {
  BidProfile profile;
  profile.bids.reserve(agents.size());
  for (const Agent& a : agents) profile.bids.push_back(a.true_cost);
  return profile;
}

void Instance::validate() const {
  if (budget.sign() <= 0) throw InputError("budget must be positive, got " + budget.to_string());
  for (std::size_t k = 0; k < agents.size(); ++k) {
    if (agents[k].id != static_cast<AgentId>(k)) throw InputError("agent ids must be 0..n-1 in order");
    if (agents[k].true_cost.sign() < 0) throw InputError("agent costs must be nonnegative");
  }
  std::visit([](const auto& spec) { spec.validate(); }, valuation);
  if (ground_size(valuation) != num_agents()) {
    throw InputError("valuation ground set has " + std::to_string(ground_size(valuation)) + " elements but there are " +
                     std::to_string(num_agents()) + " agents");
  }
}

void Instance::check_bids(const BidProfile& bids) const {
  if (bids.size() != num_agents()) {
    throw InputError("bid profile has " + std::to_string(bids.size()) + " bids for " + std::to_string(num_agents()) +
                     " agents");
  }
  for (const Rational& b : bids.bids) {
    if (b.sign() < 0) throw InputError("bids must be nonnegative");
  }
}

std::string instance_digest(const Instance& instance) {
  std::ostringstream os;
  os << family_name(instance.valuation) << '|' << instance.budget << '|';
  for (const Agent& a : instance.agents) os << a.true_cost << ',';
  os << '|';
  std::visit(Overloaded{
                 [&](const CoverageSpec& s) {
                   for (const auto& w : s.weights) os << w << ',';
                   for (const auto& subset : s.subsets) os << to_string(subset);
                 },
                 [&](const IndependenceSystemSpec& s) {
                   for (const auto& v : s.element_values) os << v << ',';
                   os << s.graph.vertices << ';';
                   for (const auto& [u, v] : s.graph.edges) os << u << '-' << v << ',';
                   for (int c : s.partition.classes) os << c << ',';
                   for (int c : s.partition.capacities) os << c << ',';
                   for (const auto& e : s.hypergraph.hyperedges) os << to_string(e);
                 },
                 [&](const AdditiveSpec& s) {
                   for (const auto& v : s.values) os << v << ',';
                 },
             },
             instance.valuation);
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char ch : os.str()) {
    hash ^= ch;
    hash *= 1099511628211ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

AgentSet affordable_agents(const Instance& instance, const BidProfile& bids) {
  instance.check_bids(bids);
  AgentSet out;
  for (AgentId i = 0; i < instance.num_agents(); ++i) {
    if (bids[i] <= instance.budget) out.push_back(i);
  }
  return out;
}

Rational Outcome::total_payment() const {
  Rational total;
  for (const Rational& p : payments) total += p;
  return total;
}

}  // namespace bfm
