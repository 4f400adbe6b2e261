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

#include "bfm/errors.hpp"
#include "bfm/generate.hpp"
#include "bfm/oracle.hpp"
#include "test_support.hpp"

using namespace bfm;
using namespace bfm::testing;

TEST_CASE("brute-force knapsack") {
  Instance instance = make_instance(AdditiveSpec{rationals({6, 4, 3})}, rationals({5, 4, 3}), Rational(7));
  OptResult opt = brute_force_opt(instance, instance.truthful_bids());
  CHECK(opt.set == AgentSet{1, 2});
  CHECK(opt.value == Rational(7));

  Instance rich = make_instance(AdditiveSpec{rationals({6, 4, 3})}, rationals({5, 4, 3}), Rational(100));
  CHECK(brute_force_opt(rich, rich.truthful_bids()).value == Rational(13));
}

TEST_CASE("brute-force tight instance") {
  Instance instance = tight_matching_instance(Rational(10), Rational(1), Rational(2, 5));
  CHECK(brute_force_opt(instance, instance.truthful_bids()).value == Rational(43));
}

TEST_CASE("brute force refuses above the caps") {
  Instance big = generate_instance(GenerateOptions{"matching", 13, 1, 0});
  CHECK_THROWS_AS(brute_force_opt(big, big.truthful_bids()), CapExceeded);
  Instance additive = generate_instance(GenerateOptions{"knapsack", 20, 1, 0});
  CHECK_NOTHROW(brute_force_opt(additive, additive.truthful_bids()));
}

TEST_CASE("rand-isk expectation") {
  Instance three = make_instance(disjoint_edges(rationals({4, 3, 3})), rationals({1, 1, 1}), Rational(100));
  CHECK(rand_isk_expectation(three, three.truthful_bids(), exact_solver()) == Rational(8));

  Instance single = make_instance(disjoint_edges(rationals({5})), {Rational(2)}, Rational(10));
  CHECK(rand_isk_expectation(single, single.truthful_bids(), exact_solver()) == Rational(5));

  Instance tight = tight_matching_instance(Rational(10), Rational(1), Rational(2, 5));
  const BidProfile bids = tight.truthful_bids();
  const Rational greedy = evaluate(tight.valuation, greedy_isk(tight, bids, exact_solver()));
  const Rational expected = Rational(2, 3) * greedy + Rational(1, 3) * Rational(12);
  CHECK(rand_isk_expectation(tight, bids, exact_solver()) == expected);
  CHECK(expected >= Rational(43, 3));
}

TEST_CASE("empirical ratios") {
  Instance tight = tight_matching_instance(Rational(10), Rational(1), Rational(2, 5));
  Ratio r = empirical_ratio(Mechanism(MechanismKind::kDetIsk), tight, tight.truthful_bids());
  CHECK_FALSE(r.infinite);
  CHECK(r.value == Rational(43, 12));
  CHECK(r.to_string() == "43/12");

  Instance single = make_instance(disjoint_edges(rationals({5})), {Rational(2)}, Rational(10));
  CHECK(empirical_ratio(Mechanism(MechanismKind::kDetIsk), single, single.truthful_bids()).value == Rational(1));

  CHECK(make_ratio(Rational(0), Rational(0)).value == Rational(1));
  CHECK(make_ratio(Rational(3), Rational(0)).infinite);
  CHECK(make_ratio(Rational(3), Rational(0)).to_string() == "inf");
}

TEST_CASE("brute force matches the unbudgeted optimum when the budget is slack") {
  for (const std::string family : {"matching", "forest", "partition-matroid", "independent-set"}) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      Instance instance = generate_instance(GenerateOptions{family, 1 + static_cast<int>(seed % 10), seed, 0});
      Rational total(0);
      for (const Agent& a : instance.agents) total += a.true_cost;
      instance.budget = total + Rational(1);
      const auto& spec = std::get<IndependenceSystemSpec>(instance.valuation);
      const AgentSet all = range_set(spec.size());
      CHECK(brute_force_opt(instance, instance.truthful_bids()).value ==
            total_value(spec, solve_unbudgeted(spec, all).independent));
    }
  }
}

TEST_CASE("brute force matches the reference enumeration") {
  for (const std::string& family : instance_families()) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Instance instance = generate_instance(GenerateOptions{family, static_cast<int>(seed % 10), seed, 0});
      const BidProfile bids = instance.truthful_bids();
      OptResult opt = brute_force_opt(instance, bids);
      CHECK(opt.value == reference_opt(instance, bids.bids));
      CHECK(reference_sum(bids.bids, opt.set) <= instance.budget);
      CHECK(evaluate(instance.valuation, opt.set) == opt.value);
    }
  }
}
