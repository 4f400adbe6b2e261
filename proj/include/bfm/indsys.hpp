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

#ifndef BFM_INDSYS_HPP
#define BFM_INDSYS_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "bfm/agent_set.hpp"
#include "bfm/rational.hpp"

namespace bfm {

enum class IndependenceVariant {
  kFree,                 // every subset is independent (knapsack)
  kGraphMatching,        // elements are edges, independent = matching
  kGraphicMatroid,       // elements are edges, independent = forest
  kPartitionMatroid,     // at most capacity[c] elements from class c
  kGraphIndependentSet,  // elements are vertices, independent = no edge inside
  kKDMatching,           // elements are hyperedges of a k-partite hypergraph
};

std::string to_string(IndependenceVariant variant);

struct Graph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
};

struct Partition {
  std::vector<int> classes;     // class of each element
  std::vector<int> capacities;  // per class
};

/// k-uniform k-partite hypergraph. hyperedges[e][p] is a vertex index local
/// to part p, in [0, parts[p]).
struct Hypergraph {
  int k = 0;
  std::vector<int> parts;
  std::vector<std::vector<int>> hyperedges;
};

/// Independence system with public per-element values. Only the structure
/// matching `variant` is consulted.
struct IndependenceSystemSpec {
  IndependenceVariant variant = IndependenceVariant::kFree;
  Graph graph;
  Partition partition;
  Hypergraph hypergraph;
  std::vector<Rational> element_values;

  int size() const { return static_cast<int>(element_values.size()); }

  /// Structural checks: sizes agree, endpoints in range, no self loops,
  /// positive capacities, so every singleton is independent.
  void validate() const;
};

/// Largest ground set the exhaustive searches will accept.
inline constexpr int kExactSearchCap = 24;

bool is_independent(const IndependenceSystemSpec& spec, const AgentSet& set);

/// Whether independent set `base` stays independent after adding `element`.
bool can_extend(const IndependenceSystemSpec& spec, const AgentSet& base, AgentId element);

Rational total_value(const IndependenceSystemSpec& spec, const AgentSet& set);

/// Maximum-value independent subset of `within`. Exact for every variant:
/// greedy for the matroids, branch and bound otherwise (capped at
/// kExactSearchCap elements).
AgentSet max_weight_independent(const IndependenceSystemSpec& spec, const AgentSet& within);

/// Scans hyperedges by descending value (ties: ascending index) and keeps each
/// one disjoint from those already kept. A k-approximation.
AgentSet greedy_k_set_packing(const IndependenceSystemSpec& spec, const AgentSet& active);

/// Deterministic unbudgeted solver f(spec, A) -> independent M subset of A
/// with v(M) >= OPT(A) / rho.
struct UnbudgetedSolver {
  using Procedure = std::function<AgentSet(const IndependenceSystemSpec&, const AgentSet&)>;

  std::string name;
  Rational rho{1};
  Procedure procedure;

  AgentSet operator()(const IndependenceSystemSpec& spec, const AgentSet& active) const {
    return procedure(spec, active);
  }
};

UnbudgetedSolver exact_solver();
UnbudgetedSolver greedy_packing_solver(int k);

/// rho = 1 exact search for every variant except k-D matching, which gets
/// the greedy packing with rho = k.
UnbudgetedSolver default_solver(const IndependenceSystemSpec& spec);

/// Wraps `solver` with a private cache keyed by the active set. The cache
/// lives inside the returned object (copies share it); use one per audit.
UnbudgetedSolver memoized(UnbudgetedSolver solver);

struct UnbudgetedResult {
  AgentSet independent;
  Rational rho;
};

UnbudgetedResult solve_unbudgeted(const IndependenceSystemSpec& spec, const AgentSet& active);

}  // namespace bfm

#endif  // BFM_INDSYS_HPP
