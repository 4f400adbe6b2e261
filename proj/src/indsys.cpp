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

#include "bfm/indsys.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "bfm/errors.hpp"

namespace bfm {
namespace {

using Size = std::size_t;

void check_ids(const IndependenceSystemSpec& spec, const AgentSet& set) {
  for (AgentId e : set) {
    if (e < 0 || e >= spec.size()) throw InputError("independence system: unknown element " + std::to_string(e));
  }
}

int find_root(std::vector<int>& parent, int v) {
  while (parent[static_cast<Size>(v)] != v) {
    parent[static_cast<Size>(v)] = parent[static_cast<Size>(parent[static_cast<Size>(v)])];
    v = parent[static_cast<Size>(v)];
  }
  return v;
}

bool shares_vertex(const std::pair<int, int>& a, const std::pair<int, int>& b) {
  return a.first == b.first || a.first == b.second || a.second == b.first || a.second == b.second;
}

bool hyperedges_overlap(const std::vector<int>& a, const std::vector<int>& b) {
  for (Size p = 0; p < a.size(); ++p) {
    if (a[p] == b[p]) return true;
  }
  return false;
}

bool adjacent(const Graph& graph, int u, int v) {
  for (const auto& [a, b] : graph.edges) {
    if ((a == u && b == v) || (a == v && b == u)) return true;
  }
  return false;
}

// Elements of `within` with positive value, by descending value then id.
std::vector<AgentId> by_descending_value(const IndependenceSystemSpec& spec, const AgentSet& within,
                                         bool drop_zero) {
  std::vector<AgentId> order;
  for (AgentId e : within) {
    if (!drop_zero || spec.element_values[static_cast<Size>(e)].sign() > 0) order.push_back(e);
  }
  std::stable_sort(order.begin(), order.end(), [&](AgentId a, AgentId b) {
    return spec.element_values[static_cast<Size>(b)] < spec.element_values[static_cast<Size>(a)];
  });
  return order;
}

AgentSet greedy_independent(const IndependenceSystemSpec& spec, const std::vector<AgentId>& order) {
  AgentSet chosen;
  for (AgentId e : order) {
    if (can_extend(spec, chosen, e)) chosen = with(chosen, e);
  }
  return chosen;
}

class BranchAndBound {
 public:
  BranchAndBound(const IndependenceSystemSpec& spec, std::vector<AgentId> order)
      : spec_(spec), order_(std::move(order)), suffix_(order_.size() + 1) {
    for (Size k = order_.size(); k-- > 0;) {
      suffix_[k] = suffix_[k + 1] + spec_.element_values[static_cast<Size>(order_[k])];
    }
  }

  AgentSet run() {
    AgentSet current;
    search(0, current, Rational(0));
    return best_;
  }

 private:
  void search(Size index, AgentSet& current, const Rational& value) {
    if (best_value_ < value) {
      best_value_ = value;
      best_ = current;
    }
    if (index == order_.size()) return;
    if (!(best_value_ < value + suffix_[index])) return;
    const AgentId e = order_[index];
    if (can_extend(spec_, current, e)) {
      AgentSet next = with(current, e);
      search(index + 1, next, value + spec_.element_values[static_cast<Size>(e)]);
    }
    search(index + 1, current, value);
  }

  const IndependenceSystemSpec& spec_;
  std::vector<AgentId> order_;
  std::vector<Rational> suffix_;
  AgentSet best_;
  Rational best_value_{0};
};

}  // namespace

std::string to_string(IndependenceVariant variant) {
  switch (variant) {
    case IndependenceVariant::kFree: return "free";
    case IndependenceVariant::kGraphMatching: return "matching";
    case IndependenceVariant::kGraphicMatroid: return "forest";
    case IndependenceVariant::kPartitionMatroid: return "partition-matroid";
    case IndependenceVariant::kGraphIndependentSet: return "independent-set";
    case IndependenceVariant::kKDMatching: return "kd-matching";
  }
  return "unknown";
}

void IndependenceSystemSpec::validate() const {
  for (const Rational& v : element_values) {
    if (v.sign() < 0) throw InputError("independence system: negative value " + v.to_string());
  }
  auto check_graph = [this](Size expected_elements) {
    if (graph.vertices < 0) throw InputError("graph: negative vertex count");
    if (expected_elements != element_values.size()) {
      throw InputError("graph: element count " + std::to_string(expected_elements) + " does not match " +
                       std::to_string(element_values.size()) + " values");
    }
    for (const auto& [u, v] : graph.edges) {
      if (u < 0 || v < 0 || u >= graph.vertices || v >= graph.vertices) {
        throw InputError("graph: edge endpoint out of range");
      }
      if (u == v) throw InputError("graph: self loops are not allowed");
    }
  };
  switch (variant) {
    case IndependenceVariant::kFree:
      break;
    case IndependenceVariant::kGraphMatching:
    case IndependenceVariant::kGraphicMatroid:
      check_graph(graph.edges.size());
      break;
    case IndependenceVariant::kGraphIndependentSet:
      check_graph(static_cast<Size>(graph.vertices));
      break;
    case IndependenceVariant::kPartitionMatroid:
      if (partition.classes.size() != element_values.size()) {
        throw InputError("partition matroid: one class per element required");
      }
      for (int c : partition.classes) {
        if (c < 0 || c >= static_cast<int>(partition.capacities.size())) {
          throw InputError("partition matroid: class index out of range");
        }
      }
      for (int cap : partition.capacities) {
        if (cap < 1) throw InputError("partition matroid: capacities must be at least 1");
      }
      break;
    case IndependenceVariant::kKDMatching:
      if (hypergraph.k < 2) throw InputError("k-D matching: k must be at least 2");
      if (static_cast<int>(hypergraph.parts.size()) != hypergraph.k) {
        throw InputError("k-D matching: expected k part sizes");
      }
      if (hypergraph.hyperedges.size() != element_values.size()) {
        throw InputError("k-D matching: one value per hyperedge required");
      }
      for (const auto& edge : hypergraph.hyperedges) {
        if (static_cast<int>(edge.size()) != hypergraph.k) throw InputError("k-D matching: hyperedge arity != k");
        for (Size p = 0; p < edge.size(); ++p) {
          if (edge[p] < 0 || edge[p] >= hypergraph.parts[p]) {
            throw InputError("k-D matching: vertex index out of range");
          }
        }
      }
      break;
  }
}

bool can_extend(const IndependenceSystemSpec& spec, const AgentSet& base, AgentId element) {
  const Size e = static_cast<Size>(element);
  switch (spec.variant) {
    case IndependenceVariant::kFree:
      return true;
    case IndependenceVariant::kGraphMatching:
      for (AgentId b : base) {
        if (b == element || shares_vertex(spec.graph.edges[static_cast<Size>(b)], spec.graph.edges[e])) return false;
      }
      return true;
    case IndependenceVariant::kGraphicMatroid: {
      std::vector<int> parent(static_cast<Size>(spec.graph.vertices));
      std::iota(parent.begin(), parent.end(), 0);
      for (AgentId b : base) {
        if (b == element) return false;
        const auto& [u, v] = spec.graph.edges[static_cast<Size>(b)];
        parent[static_cast<Size>(find_root(parent, u))] = find_root(parent, v);
      }
      const auto& [u, v] = spec.graph.edges[e];
      return find_root(parent, u) != find_root(parent, v);
    }
    case IndependenceVariant::kPartitionMatroid: {
      const int cls = spec.partition.classes[e];
      int used = 0;
      for (AgentId b : base) {
        if (b == element) return false;
        if (spec.partition.classes[static_cast<Size>(b)] == cls) ++used;
      }
      return used < spec.partition.capacities[static_cast<Size>(cls)];
    }
    case IndependenceVariant::kGraphIndependentSet:
      for (AgentId b : base) {
        if (b == element || adjacent(spec.graph, b, element)) return false;
      }
      return true;
    case IndependenceVariant::kKDMatching:
      for (AgentId b : base) {
        if (b == element ||
            hyperedges_overlap(spec.hypergraph.hyperedges[static_cast<Size>(b)], spec.hypergraph.hyperedges[e])) {
          return false;
        }
      }
      return true;
  }
  return false;
}

bool is_independent(const IndependenceSystemSpec& spec, const AgentSet& set) {
  check_ids(spec, set);
  AgentSet prefix;
  for (AgentId e : set) {
    if (!can_extend(spec, prefix, e)) return false;
    prefix.push_back(e);
  }
  return true;
}

Rational total_value(const IndependenceSystemSpec& spec, const AgentSet& set) {
  check_ids(spec, set);
  Rational total;
  for (AgentId e : set) total += spec.element_values[static_cast<Size>(e)];
  return total;
}

AgentSet max_weight_independent(const IndependenceSystemSpec& spec, const AgentSet& within) {
  check_ids(spec, within);
  switch (spec.variant) {
    case IndependenceVariant::kFree: {
      AgentSet out;
      for (AgentId e : within) {
        if (spec.element_values[static_cast<Size>(e)].sign() > 0) out.push_back(e);
      }
      return out;
    }
    case IndependenceVariant::kGraphicMatroid:
    case IndependenceVariant::kPartitionMatroid:
      return greedy_independent(spec, by_descending_value(spec, within, true));
    case IndependenceVariant::kGraphMatching:
    case IndependenceVariant::kGraphIndependentSet:
    case IndependenceVariant::kKDMatching: {
      auto order = by_descending_value(spec, within, true);
      if (static_cast<int>(order.size()) > kExactSearchCap) {
        throw CapExceeded("exact independent-set search limited to " + std::to_string(kExactSearchCap) +
                          " elements, got " + std::to_string(order.size()));
      }
      return BranchAndBound(spec, std::move(order)).run();
    }
  }
  return {};
}

AgentSet greedy_k_set_packing(const IndependenceSystemSpec& spec, const AgentSet& active) {
  if (spec.variant != IndependenceVariant::kKDMatching) {
    throw InputError("greedy_k_set_packing requires a k-D matching system");
  }
  check_ids(spec, active);
  return greedy_independent(spec, by_descending_value(spec, active, false));
}

UnbudgetedSolver exact_solver() {
  return UnbudgetedSolver{"exact", Rational(1), [](const IndependenceSystemSpec& spec, const AgentSet& active) {
                            return max_weight_independent(spec, active);
                          }};
}

UnbudgetedSolver greedy_packing_solver(int k) {
  if (k < 2) throw InputError("greedy packing needs k >= 2");
  return UnbudgetedSolver{"greedy-packing", Rational(k),
                          [](const IndependenceSystemSpec& spec, const AgentSet& active) {
                            return greedy_k_set_packing(spec, active);
                          }};
}

UnbudgetedSolver default_solver(const IndependenceSystemSpec& spec) {
  if (spec.variant == IndependenceVariant::kKDMatching) return greedy_packing_solver(spec.hypergraph.k);
  return exact_solver();
}

UnbudgetedSolver memoized(UnbudgetedSolver solver) {
  struct Cache {
    std::mutex mutex;
    std::map<std::pair<const IndependenceSystemSpec*, AgentSet>, AgentSet> entries;
  };
  auto cache = std::make_shared<Cache>();
  auto inner = solver.procedure;
  solver.name += "+memo";
  solver.procedure = [cache, inner](const IndependenceSystemSpec& spec, const AgentSet& active) {
    if (spec.variant == IndependenceVariant::kFree) return inner(spec, active);
    auto key = std::make_pair(&spec, active);
    {
      std::lock_guard lock(cache->mutex);
      auto it = cache->entries.find(key);
      if (it != cache->entries.end()) return it->second;
    }
    AgentSet result = inner(spec, active);
    std::lock_guard lock(cache->mutex);
    cache->entries.emplace(std::move(key), result);
    return result;
  };
  return solver;
}

UnbudgetedResult solve_unbudgeted(const IndependenceSystemSpec& spec, const AgentSet& active) {
  const UnbudgetedSolver solver = default_solver(spec);
  return {solver(spec, active), solver.rho};
}

}  // namespace bfm
