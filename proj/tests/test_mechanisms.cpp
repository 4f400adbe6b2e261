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

#include <cmath>

#include "bfm/coverage_lp.hpp"
#include "bfm/errors.hpp"
#include "bfm/generate.hpp"
#include "bfm/mechanisms.hpp"
#include "bfm/oracle.hpp"
#include "test_support.hpp"

using namespace bfm;
using namespace bfm::testing;

namespace {

Rational brute_opt(const Instance& instance, const BidProfile& bids, const AgentSet& active) {
  return brute_force_opt(instance, bids, active).value;
}

Instance tight() { return tight_matching_instance(Rational(10), Rational(1), Rational(2, 5)); }

Instance three_disjoint_edges() {
  return make_instance(disjoint_edges(rationals({4, 3, 3})), rationals({1, 1, 1}), Rational(100));
}

std::uint64_t seed_with_coin(bool below_third) {
  for (std::uint64_t seed = 0;; ++seed) {
    CoinSource coin(seed);
    if ((coin.draw() < 1.0 / 3.0) == below_third) return seed;
  }
}

// The winner keeps winning at every lower bid on a 1/16 grid of [0, b_i].
bool monotone_on_grid(const Mechanism& mechanism, const Instance& instance) {
  const BidProfile bids = instance.truthful_bids();
  const AgentSet winners = mechanism.allocate(instance, bids).winners;
  for (AgentId i : winners) {
    for (int k = 0; k < 16; ++k) {
      BidProfile lower = bids.with_bid(i, bids[i] * Rational(k, 16));
      if (!contains(mechanism.allocate(instance, lower).winners, i)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("sm constants") {
  SMConstants one = sm_constants(1.0);
  CHECK(one.ratio >= 8.335);
  CHECK(one.ratio <= 8.345);
  const double e = std::exp(1.0);
  CHECK(one.gamma == doctest::Approx(std::sqrt(1 + 24 * e * e)));
  CHECK(one.alpha == doctest::Approx((1 + 4 * e + std::sqrt(1 + 24 * e * e)) / (2 * (e - 1))));
  CHECK(one.ratio == doctest::Approx(one.alpha + 1));
  SMConstants frac = sm_constants(2 * e / (e - 1));
  CHECK(frac.ratio == doctest::Approx(15.70806).epsilon(1e-5));
  CHECK_THROWS_AS(sm_constants(0.5), InputError);
  CHECK_THROWS_AS(sm_constants(std::nan("")), InputError);
}

TEST_CASE("e bracket") {
  CHECK(e_lower() < e_upper());
  CHECK(e_lower().to_double() <= std::exp(1.0));
  CHECK(e_upper().to_double() >= std::exp(1.0));
}

TEST_CASE("greedy-sm examples") {
  Instance instance = make_instance(coverage_spec({{0, 1}, {2}}, rationals({1, 1, 1})), rationals({1, 1}), Rational(2));
  AgentSet s = greedy_sm(instance, instance.truthful_bids(), Rational(1));
  CHECK(s == AgentSet{0});
  CHECK(evaluate(instance.valuation, s) == Rational(2));

  Instance unaffordable = make_instance(AdditiveSpec{rationals({1, 1})}, rationals({5, 6}), Rational(2));
  CHECK(greedy_sm(unaffordable, unaffordable.truthful_bids(), Rational(1)).empty());

  Instance single = make_instance(AdditiveSpec{rationals({3})}, {Rational(1)}, Rational(4));
  CHECK(greedy_sm(single, single.truthful_bids(), Rational(2)) == AgentSet{0});

  Instance matching = tight();
  CHECK_THROWS_AS(greedy_sm(matching, matching.truthful_bids(), Rational(1)), InputError);
}

TEST_CASE("sm-exact examples") {
  Instance single = make_instance(AdditiveSpec{rationals({3})}, {Rational(1)}, Rational(4));
  CHECK(mechanism_sm_exact(single, single.truthful_bids(), brute_opt) == AgentSet{0});
  Instance unaffordable = make_instance(AdditiveSpec{rationals({1, 1})}, rationals({5, 6}), Rational(2));
  CHECK(mechanism_sm_exact(unaffordable, unaffordable.truthful_bids(), brute_opt).empty());

  // Five sets: one heavy set and four light disjoint ones.
  CoverageSpec spec = coverage_spec({{0}, {1}, {2}, {3}, {4}}, rationals({10, 1, 1, 1, 1}));
  Instance heavy = make_instance(spec, rationals({1, 1, 1, 1, 1}), Rational(5));
  const double alpha = sm_constants(1.0).alpha;
  // OPT(A without i*) = 4 <= alpha * 10, so i* alone.
  CHECK(4.0 <= alpha * 10);
  CHECK(mechanism_sm_exact(heavy, heavy.truthful_bids(), brute_opt) == AgentSet{0});

  CoverageSpec flat_spec;
  flat_spec.num_elements = 12;
  for (int j = 0; j < 12; ++j) {
    flat_spec.subsets.push_back({j});
    flat_spec.weights.push_back(Rational(1));
  }
  Instance flat = make_instance(flat_spec, std::vector<Rational>(12, Rational(1)), Rational(12));
  // OPT(A without i*) = 11 > alpha * 1, so the greedy branch runs.
  CHECK(11.0 > alpha);
  CHECK(mechanism_sm_exact(flat, flat.truthful_bids(), brute_opt) ==
        greedy_sm(flat, flat.truthful_bids(), Rational(6)));
}

TEST_CASE("sm-frac examples") {
  Instance single = make_instance(coverage_spec({{0}}, rationals({2})), {Rational(1)}, Rational(4));
  CHECK(mechanism_sm_frac(single, single.truthful_bids()) == AgentSet{0});

  Instance two = make_instance(coverage_spec({{0}, {1}}, rationals({10, 1})), rationals({1, 1}), Rational(2));
  CHECK(mechanism_sm_frac(two, two.truthful_bids()) == AgentSet{0});

  CoverageSpec many;
  many.num_elements = 20;
  for (int j = 0; j < 20; ++j) {
    many.subsets.push_back({j});
    many.weights.push_back(Rational(1));
  }
  Instance medium = make_instance(many, std::vector<Rational>(20, Rational(1)), Rational(20));
  CHECK(19.0 > sm_constants(coverage_integrality_gap()).alpha);
  CHECK(mechanism_sm_frac(medium, medium.truthful_bids()) ==
        greedy_sm(medium, medium.truthful_bids(), Rational(10)));

  Instance knapsack = make_instance(AdditiveSpec{rationals({1})}, {Rational(1)}, Rational(2));
  CHECK_THROWS_AS(mechanism_sm_frac(knapsack, knapsack.truthful_bids()), InputError);
}

TEST_CASE("greedy-isk on the tight instance without i*") {
  Instance instance = tight();
  const auto& spec = std::get<IndependenceSystemSpec>(instance.valuation);
  AgentSet out = greedy_isk(instance, spec, instance.truthful_bids(), {1, 2, 3}, exact_solver());
  CHECK(out == AgentSet{3});
  CHECK(evaluate(instance.valuation, out) == Rational(11));
}

TEST_CASE("greedy-isk small examples") {
  Instance single = make_instance(disjoint_edges(rationals({5})), {Rational(2)}, Rational(10));
  CHECK(greedy_isk(single, single.truthful_bids(), exact_solver()) == AgentSet{0});
  Instance two = make_instance(disjoint_edges(rationals({3, 2})), rationals({1, 1}), Rational(100));
  CHECK(greedy_isk(two, two.truthful_bids(), exact_solver()) == AgentSet{0, 1});
  Instance zero_value = make_instance(disjoint_edges({Rational(0), Rational(2)}), rationals({1, 1}), Rational(100));
  CHECK(greedy_isk(zero_value, zero_value.truthful_bids(), exact_solver()) == AgentSet{1});
}

TEST_CASE("rand-isk branches") {
  Instance instance = three_disjoint_edges();
  const BidProfile bids = instance.truthful_bids();
  CoinSource low(seed_with_coin(true));
  CHECK(rand_isk(instance, bids, exact_solver(), low) == AgentSet{0});
  CoinSource high(seed_with_coin(false));
  CHECK(rand_isk(instance, bids, exact_solver(), high) == greedy_isk(instance, bids, exact_solver()));

  Mechanism a(MechanismKind::kRandIsk, 5);
  CHECK(a.allocate(instance, bids).winners == a.allocate(instance, bids).winners);
}

TEST_CASE("det-isk examples") {
  Instance instance = tight();
  Mechanism det(MechanismKind::kDetIsk);
  Allocation out = det.allocate(instance, instance.truthful_bids());
  CHECK(out.winners == AgentSet{0});
  CHECK(out.branch == Branch::kSingleton);
  CHECK(evaluate(instance.valuation, out.winners) == Rational(12));

  Instance single = make_instance(disjoint_edges(rationals({5})), {Rational(2)}, Rational(10));
  CHECK(det.allocate(single, single.truthful_bids()).winners == AgentSet{0});

  Instance three = three_disjoint_edges();
  Allocation greedy = det.allocate(three, three.truthful_bids());
  CHECK(greedy.winners == AgentSet{1, 2});
  CHECK(greedy.branch == Branch::kGreedy);
}

TEST_CASE("mechanism names round trip and family guards") {
  for (MechanismKind kind : {MechanismKind::kGreedySm, MechanismKind::kSmExact, MechanismKind::kSmFrac,
                             MechanismKind::kGreedyIsk, MechanismKind::kRandIsk, MechanismKind::kDetIsk,
                             MechanismKind::kBrokenGreedyIsk}) {
    CHECK(parse_mechanism_kind(to_string(kind)) == kind);
  }
  CHECK_THROWS_AS(parse_mechanism_kind("vcg"), InputError);
  Instance matching = tight();
  CHECK_THROWS_AS(Mechanism(MechanismKind::kGreedySm).check_supports(matching), InputError);
  CHECK_THROWS_AS(Mechanism(MechanismKind::kSmFrac).check_supports(matching), InputError);
  Instance coverage = make_instance(coverage_spec({{0}}, rationals({1})), {Rational(1)}, Rational(1));
  CHECK_THROWS_AS(Mechanism(MechanismKind::kDetIsk).check_supports(coverage), InputError);
  Instance knapsack = make_instance(AdditiveSpec{rationals({1})}, {Rational(1)}, Rational(1));
  CHECK_NOTHROW(Mechanism(MechanismKind::kDetIsk).check_supports(knapsack));
  CHECK_NOTHROW(Mechanism(MechanismKind::kGreedySm).check_supports(knapsack));
}

TEST_CASE("every mechanism is monotone on generated instances") {
  const std::vector<std::pair<MechanismKind, std::string>> cases = {
      {MechanismKind::kGreedySm, "coverage"},     {MechanismKind::kGreedySm, "knapsack"},
      {MechanismKind::kSmExact, "coverage"},      {MechanismKind::kSmFrac, "coverage"},
      {MechanismKind::kGreedyIsk, "matching"},    {MechanismKind::kGreedyIsk, "forest"},
      {MechanismKind::kDetIsk, "partition-matroid"}, {MechanismKind::kDetIsk, "kd-matching"},
      {MechanismKind::kRandIsk, "independent-set"},  {MechanismKind::kDetIsk, "knapsack"},
  };
  for (const auto& [kind, family] : cases) {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      Instance instance = generate_instance(GenerateOptions{family, 1 + static_cast<int>(seed % 7), seed, 0});
      CAPTURE(family);
      CAPTURE(seed);
      CHECK(monotone_on_grid(Mechanism(kind, seed), instance));
    }
  }
}

TEST_CASE("greedy-isk output does not change while a winner keeps winning") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Instance instance = generate_instance(GenerateOptions{"matching", 1 + static_cast<int>(seed % 8), seed, 0});
    const BidProfile bids = instance.truthful_bids();
    const AgentSet out = greedy_isk(instance, bids, exact_solver());
    for (AgentId i : out) {
      for (int k = 0; k <= 8; ++k) {
        BidProfile other = bids.with_bid(i, bids[i] * Rational(k, 4));
        AgentSet moved = greedy_isk(instance, other, exact_solver());
        if (contains(moved, i)) CHECK(moved == out);
      }
    }
  }
}

TEST_CASE("value bounds against brute force") {
  for (const std::string family : {"knapsack", "matching", "forest", "partition-matroid", "kd-matching"}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Instance instance = generate_instance(GenerateOptions{family, 1 + static_cast<int>(seed % 10), seed, 0});
      const BidProfile bids = instance.truthful_bids();
      const Mechanism det(MechanismKind::kDetIsk);
      const UnbudgetedSolver solver = det.solver_for(independence_view(instance.valuation));
      const Rational rho = solver.rho;
      const Rational opt = reference_opt(instance, bids.bids);
      CHECK(opt == brute_force_opt(instance, bids).value);
      auto star = best_singleton(instance, bids);
      const Rational v_star = star ? singleton_value(instance.valuation, *star) : Rational(0);
      const Rational greedy = evaluate(instance.valuation, greedy_isk(instance, bids, solver));
      CHECK(Rational(2) * rho * greedy >= opt - v_star);
      const Rational det_value = evaluate(instance.valuation, det.allocate(instance, bids).winners);
      CHECK(opt <= (Rational(2) * rho + Rational(2)) * det_value);
      CHECK(opt <= (Rational(2) * rho + Rational(1)) * rand_isk_expectation(instance, bids, solver));
    }
  }
}

TEST_CASE("greedy-sm contract on coverage instances") {
  const Rational e = e_lower();
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    Instance instance = generate_instance(GenerateOptions{"coverage", 1 + static_cast<int>(seed % 8), seed, 0});
    const BidProfile bids = instance.truthful_bids();
    const Rational opt = reference_opt(instance, bids.bids);
    auto star = best_singleton(instance, bids);
    const Rational v_star = star ? singleton_value(instance.valuation, *star) : Rational(0);
    const Rational value = evaluate(instance.valuation, greedy_sm(instance, bids, instance.budget / Rational(2)));
    CHECK(value >= (e - Rational(1)) / (Rational(3) * e) * opt - Rational(2, 3) * v_star);
  }
}
