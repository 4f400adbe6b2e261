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

#include "bfm/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bfm/errors.hpp"

namespace bfm {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& message) { throw InputError("instance: " + message); }

const Json& field(const Json& object, const char* key) {
  if (!object.is_object()) fail("expected an object around \"" + std::string(key) + "\"");
  auto it = object.find(key);
  if (it == object.end()) fail("missing field \"" + std::string(key) + "\"");
  return *it;
}

Rational read_rational(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const InputError&) {
      fail(what + " is not a rational: \"" + j.get<std::string>() + "\"");
    }
  }
  fail(what + " must be a \"p/q\" string or an integer");
}

int read_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) fail(what + " must be an integer");
  return j.get<int>();
}

const Json& read_array(const Json& j, const std::string& what) {
  if (!j.is_array()) fail(what + " must be an array");
  return j;
}

std::vector<int> read_ints(const Json& j, const std::string& what) {
  std::vector<int> out;
  for (const Json& x : read_array(j, what)) out.push_back(read_int(x, what + " entry"));
  return out;
}

std::vector<Rational> read_rationals(const Json& j, const std::string& what) {
  std::vector<Rational> out;
  for (const Json& x : read_array(j, what)) out.push_back(read_rational(x, what + " entry"));
  return out;
}

Json write_rationals(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const Rational& v : values) out.push_back(v.to_string());
  return out;
}

IndependenceSystemSpec read_graph_system(const Json& v, IndependenceVariant variant) {
  IndependenceSystemSpec spec;
  spec.variant = variant;
  spec.graph.vertices = read_int(field(v, "vertices"), "vertices");
  for (const Json& e : read_array(field(v, "edges"), "edges")) {
    std::vector<int> ends = read_ints(e, "edge");
    if (ends.size() != 2) fail("each edge needs exactly two endpoints");
    spec.graph.edges.emplace_back(ends[0], ends[1]);
  }
  spec.element_values = read_rationals(field(v, "values"), "values");
  return spec;
}

ValuationSpec read_valuation(const std::string& family, const Json& v) {
  if (family == "coverage") {
    CoverageSpec spec;
    spec.weights = read_rationals(field(v, "weights"), "weights");
    spec.num_elements = static_cast<int>(spec.weights.size());
    for (const Json& s : read_array(field(v, "subsets"), "subsets")) {
      spec.subsets.push_back(normalized(read_ints(s, "subset")));
    }
    return spec;
  }
  if (family == "knapsack") return AdditiveSpec{read_rationals(field(v, "values"), "values")};
  if (family == "matching") return read_graph_system(v, IndependenceVariant::kGraphMatching);
  if (family == "forest") return read_graph_system(v, IndependenceVariant::kGraphicMatroid);
  if (family == "independent-set") {
    return read_graph_system(v, IndependenceVariant::kGraphIndependentSet);
  }
  if (family == "partition-matroid") {
    IndependenceSystemSpec spec;
    spec.variant = IndependenceVariant::kPartitionMatroid;
    spec.partition.classes = read_ints(field(v, "classes"), "classes");
    spec.partition.capacities = read_ints(field(v, "capacities"), "capacities");
    spec.element_values = read_rationals(field(v, "values"), "values");
    return spec;
  }
  if (family == "kd-matching") {
    IndependenceSystemSpec spec;
    spec.variant = IndependenceVariant::kKDMatching;
    spec.hypergraph.k = read_int(field(v, "k"), "k");
    spec.hypergraph.parts = read_ints(field(v, "parts"), "parts");
    for (const Json& e : read_array(field(v, "hyperedges"), "hyperedges")) {
      spec.hypergraph.hyperedges.push_back(read_ints(e, "hyperedge"));
    }
    spec.element_values = read_rationals(field(v, "values"), "values");
    return spec;
  }
  fail("unknown family \"" + family + "\"");
}

Json write_valuation(const ValuationSpec& valuation) {
  Json v = Json::object();
  if (const auto* c = std::get_if<CoverageSpec>(&valuation)) {
    v["weights"] = write_rationals(c->weights);
    Json subsets = Json::array();
    for (const AgentSet& s : c->subsets) subsets.push_back(s);
    v["subsets"] = subsets;
  } else if (const auto* a = std::get_if<AdditiveSpec>(&valuation)) {
    v["values"] = write_rationals(a->values);
  } else {
    const auto& s = std::get<IndependenceSystemSpec>(valuation);
    switch (s.variant) {
      case IndependenceVariant::kFree:
        break;
      case IndependenceVariant::kGraphMatching:
      case IndependenceVariant::kGraphicMatroid:
      case IndependenceVariant::kGraphIndependentSet: {
        v["vertices"] = s.graph.vertices;
        Json edges = Json::array();
        for (const auto& [a, b] : s.graph.edges) edges.push_back({a, b});
        v["edges"] = edges;
        break;
      }
      case IndependenceVariant::kPartitionMatroid:
        v["classes"] = s.partition.classes;
        v["capacities"] = s.partition.capacities;
        break;
      case IndependenceVariant::kKDMatching:
        v["k"] = s.hypergraph.k;
        v["parts"] = s.hypergraph.parts;
        v["hyperedges"] = s.hypergraph.hyperedges;
        break;
    }
    v["values"] = write_rationals(s.element_values);
  }
  return v;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  Instance instance;
  const Json& family = field(root, "family");
  if (!family.is_string()) fail("family must be a string");
  instance.budget = read_rational(field(root, "budget"), "budget");
  int expected_id = 0;
  for (const Json& a : read_array(field(root, "agents"), "agents")) {
    Agent agent;
    agent.id = read_int(field(a, "id"), "agent id");
    if (agent.id != expected_id) fail("agent ids must be 0..n-1 in order");
    ++expected_id;
    agent.true_cost = read_rational(field(a, "cost"), "agent cost");
    instance.agents.push_back(agent);
  }
  instance.valuation = read_valuation(family.get<std::string>(), field(root, "valuation"));
  instance.validate();
  return instance;
}

std::string serialize_instance(const Instance& instance) {
  Json root = Json::object();
  root["family"] = family_name(instance.valuation);
  root["budget"] = instance.budget.to_string();
  Json agents = Json::array();
  for (const Agent& a : instance.agents) {
    agents.push_back(Json{{"id", a.id}, {"cost", a.true_cost.to_string()}});
  }
  root["agents"] = agents;
  root["valuation"] = write_valuation(instance.valuation);
  return root.dump(2) + "\n";
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_instance(text.str());
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << serialize_instance(instance);
}

}  // namespace bfm
