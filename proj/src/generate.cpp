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

#include "bfm/generate.hpp"

#include <algorithm>
#include <random>

#include "bfm/errors.hpp"

namespace bfm {
namespace {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  int between(int lo, int hi) {
    return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(int numerator, int denominator) { return between(1, denominator) <= numerator; }
  Rational cost() { return Rational(between(1, 20), between(1, 4)); }
  Rational value() { return Rational(between(1, 12), between(1, 2)); }

 private:
  std::mt19937_64 rng_;
};

std::vector<Rational> values(Draw& draw, int n) {
  std::vector<Rational> out;
  for (int i = 0; i < n; ++i) out.push_back(draw.value());
  return out;
}

IndependenceSystemSpec graph_system(Draw& draw, IndependenceVariant variant, int edges) {
  IndependenceSystemSpec spec;
  spec.variant = variant;
  spec.graph.vertices = std::max(2, edges / 2 + 2);
  for (int e = 0; e < edges; ++e) {
    int u = draw.between(0, spec.graph.vertices - 1);
    int v = draw.between(0, spec.graph.vertices - 2);
    if (v >= u) ++v;
    spec.graph.edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  spec.element_values = values(draw, edges);
  return spec;
}

ValuationSpec make_valuation(Draw& draw, const GenerateOptions& o) {
  const int n = o.size;
  const std::string& f = o.family;
  if (f == "coverage") {
    CoverageSpec spec;
    spec.num_elements = o.elements > 0 ? o.elements : std::min(10, n + 2);
    for (int j = 0; j < spec.num_elements; ++j) spec.weights.push_back(Rational(draw.between(1, 5)));
    for (int i = 0; i < n; ++i) {
      AgentSet subset;
      for (int j = 0; j < spec.num_elements; ++j) {
        if (draw.chance(1, 3)) subset.push_back(j);
      }
      if (subset.empty()) subset.push_back(draw.between(0, spec.num_elements - 1));
      spec.subsets.push_back(subset);
    }
    return spec;
  }
  if (f == "knapsack") return AdditiveSpec{values(draw, n)};
  if (f == "matching") return graph_system(draw, IndependenceVariant::kGraphMatching, n);
  if (f == "forest") return graph_system(draw, IndependenceVariant::kGraphicMatroid, n);
  if (f == "independent-set") {
    IndependenceSystemSpec spec;
    spec.variant = IndependenceVariant::kGraphIndependentSet;
    spec.graph.vertices = n;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (draw.chance(3, 10)) spec.graph.edges.emplace_back(u, v);
      }
    }
    spec.element_values = values(draw, n);
    return spec;
  }
  if (f == "partition-matroid") {
    IndependenceSystemSpec spec;
    spec.variant = IndependenceVariant::kPartitionMatroid;
    const int classes = std::max(1, (n + 2) / 3);
    for (int i = 0; i < n; ++i) spec.partition.classes.push_back(draw.between(0, classes - 1));
    for (int c = 0; c < classes; ++c) spec.partition.capacities.push_back(draw.between(1, 2));
    spec.element_values = values(draw, n);
    return spec;
  }
  if (f == "kd-matching") {
    IndependenceSystemSpec spec;
    spec.variant = IndependenceVariant::kKDMatching;
    spec.hypergraph.k = 3;
    const int part = std::max(2, n / 2 + 1);
    spec.hypergraph.parts.assign(3, part);
    for (int e = 0; e < n; ++e) {
      std::vector<int> edge;
      for (int p = 0; p < 3; ++p) edge.push_back(draw.between(0, part - 1));
      spec.hypergraph.hyperedges.push_back(edge);
    }
    spec.element_values = values(draw, n);
    return spec;
  }
  throw InputError("unknown family \"" + f + "\"");
}

}  // namespace

const std::vector<std::string>& instance_families() {
  static const std::vector<std::string> families = {
      "coverage", "knapsack", "matching", "forest", "partition-matroid", "independent-set", "kd-matching"};
  return families;
}

Instance generate_instance(const GenerateOptions& options) {
  if (options.size < 0) throw InputError("instance size must be nonnegative");
  if (options.elements < 0) throw InputError("element count must be nonnegative");
  Draw draw(options.seed);
  Instance instance;
  instance.valuation = make_valuation(draw, options);
  Rational total(0);
  Rational largest(0);
  for (int i = 0; i < options.size; ++i) {
    Rational c = draw.cost();
    total += c;
    largest = max(largest, c);
    instance.agents.push_back(Agent{i, c});
  }
  if (options.size == 0) {
    instance.budget = Rational(1);
  } else {
    instance.budget = largest + (total - largest) * Rational(draw.between(0, 8), 8);
  }
  instance.validate();
  return instance;
}

Instance tight_matching_instance(const Rational& v, const Rational& eps, const Rational& delta) {
  IndependenceSystemSpec spec;
  spec.variant = IndependenceVariant::kGraphMatching;
  spec.graph.vertices = 8;
  spec.graph.edges = {{0, 1}, {2, 3}, {4, 5}, {6, 7}};
  spec.element_values = {v + Rational(2) * eps, v, v, v + eps};
  Instance instance;
  instance.valuation = spec;
  const std::vector<Rational> costs = {delta, Rational(10), Rational(10), delta};
  for (int i = 0; i < 4; ++i) instance.agents.push_back(Agent{i, costs[static_cast<std::size_t>(i)]});
  instance.budget = Rational(20) + Rational(2) * delta;
  instance.validate();
  return instance;
}

}  // namespace bfm
