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

#include <doctest.h>

#include <random>

#include "bfm/core.hpp"
#include "bfm/errors.hpp"
#include "bfm/generate.hpp"
#include "test_support.hpp"

using namespace bfm;
using namespace bfm::testing;

TEST_CASE("evaluate examples") {
  ValuationSpec coverage = coverage_spec({{0, 1}, {1, 2}}, rationals({1, 1, 1}));
  CHECK(evaluate(coverage, {0}) == Rational(2));
  CHECK(evaluate(coverage, {}) == Rational(0));
  ValuationSpec triangle = matching_spec(3, {{0, 1}, {1, 2}, {0, 2}}, rationals({3, 2, 2}));
  CHECK(evaluate(triangle, {0, 1, 2}) == Rational(3));
  CHECK(evaluate(triangle, {}) == Rational(0));
  CHECK(evaluate(AdditiveSpec{rationals({2, 3})}, {}) == Rational(0));
  CHECK_THROWS_AS(evaluate(coverage, {5}), InputError);
}

TEST_CASE("family names") {
  CHECK(family_name(coverage_spec({{0}}, rationals({1}))) == "coverage");
  CHECK(family_name(AdditiveSpec{rationals({1})}) == "knapsack");
  CHECK(family_name(disjoint_edges(rationals({1}))) == "matching");
}

TEST_CASE("evaluate is monotone, repeatable and agrees with the reference on generated instances") {
  std::mt19937_64 rng(3);
  for (const std::string& family : instance_families()) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const int n = 1 + static_cast<int>(seed % 10);
      Instance instance = generate_instance(GenerateOptions{family, n, seed, 0});
      for (int trial = 0; trial < 20; ++trial) {
        const std::uint64_t big = rng() % (std::uint64_t{1} << n);
        const std::uint64_t small = big & rng();
        AgentSet t = subset_from_mask(range_set(n), big);
        AgentSet s = subset_from_mask(range_set(n), small);
        Rational vt = evaluate(instance.valuation, t);
        CHECK(vt >= evaluate(instance.valuation, s));
        CHECK(vt == evaluate(instance.valuation, t));
        CHECK(vt == reference_value(instance.valuation, t));
      }
    }
  }
}

TEST_CASE("instance validation") {
  Instance ok = make_instance(AdditiveSpec{rationals({1, 2})}, rationals({1, 1}), Rational(2));
  CHECK_NOTHROW(ok.validate());

  Instance negative_cost = ok;
  negative_cost.agents[0].true_cost = Rational(-1);
  CHECK_THROWS_AS(negative_cost.validate(), InputError);

  Instance zero_budget = ok;
  zero_budget.budget = Rational(0);
  CHECK_THROWS_AS(zero_budget.validate(), InputError);

  Instance short_valuation = ok;
  short_valuation.valuation = AdditiveSpec{rationals({1})};
  CHECK_THROWS_AS(short_valuation.validate(), InputError);

  CHECK_THROWS_AS(ok.check_bids(BidProfile{rationals({1})}), InputError);
  CHECK_THROWS_AS(ok.check_bids(BidProfile{{Rational(1), Rational(-1)}}), InputError);
}

TEST_CASE("affordable agents and outcome totals") {
  Instance instance = make_instance(AdditiveSpec{rationals({1, 2, 3})}, rationals({1, 5, 2}), Rational(2));
  CHECK(affordable_agents(instance, instance.truthful_bids()) == AgentSet{0, 2});
  Outcome outcome{{0, 2}, {Rational(1, 2), Rational(0), Rational(3, 2)}, Rational(4), true};
  CHECK(outcome.total_payment() == Rational(2));
}

TEST_CASE("instance digest is stable and content-sensitive") {
  Instance a = generate_instance(GenerateOptions{"matching", 6, 1, 0});
  Instance b = generate_instance(GenerateOptions{"matching", 6, 1, 0});
  Instance c = generate_instance(GenerateOptions{"matching", 6, 2, 0});
  CHECK(instance_digest(a) == instance_digest(b));
  CHECK(instance_digest(a) != instance_digest(c));
  CHECK(instance_digest(a).size() == 16);
}
