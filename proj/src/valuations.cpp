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

#include "bfm/valuations.hpp"

#include <sstream>
#include <string>

#include "bfm/errors.hpp"

namespace bfm {

std::string to_string(const AgentSet& set) {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (k) os << ',';
    os << set[k];
  }
  os << '}';
  return os.str();
}

std::vector<AgentSet> CoverageSpec::element_owners() const {
  std::vector<AgentSet> owners(static_cast<std::size_t>(num_elements));
  for (int i = 0; i < num_sets(); ++i) {
    for (int j : subsets[static_cast<std::size_t>(i)]) owners[static_cast<std::size_t>(j)].push_back(i);
  }
  return owners;
}

void CoverageSpec::validate() const {
  if (num_elements < 0) throw InputError("coverage: negative element count");
  if (static_cast<int>(weights.size()) != num_elements) {
    throw InputError("coverage: expected " + std::to_string(num_elements) + " weights, got " +
                     std::to_string(weights.size()));
  }
  for (const Rational& w : weights) {
    if (w.sign() < 0) throw InputError("coverage: negative weight " + w.to_string());
  }
  for (const AgentSet& subset : subsets) {
    for (int j : subset) {
      if (j < 0 || j >= num_elements) throw InputError("coverage: element " + std::to_string(j) + " out of range");
    }
    if (normalized(subset) != subset) throw InputError("coverage: subsets must be sorted and duplicate-free");
  }
}

void AdditiveSpec::validate() const {
  for (const Rational& v : values) {
    if (v.sign() < 0) throw InputError("additive: negative value " + v.to_string());
  }
}

Rational coverage_value(const CoverageSpec& spec, const AgentSet& chosen) {
  std::vector<char> covered(static_cast<std::size_t>(spec.num_elements), 0);
  for (AgentId i : chosen) {
    if (i < 0 || i >= spec.num_sets()) throw InputError("coverage: unknown set " + std::to_string(i));
    for (int j : spec.subsets[static_cast<std::size_t>(i)]) covered[static_cast<std::size_t>(j)] = 1;
  }
  Rational total;
  for (std::size_t j = 0; j < covered.size(); ++j) {
    if (covered[j]) total += spec.weights[j];
  }
  return total;
}

Rational additive_value(const AdditiveSpec& spec, const AgentSet& chosen) {
  Rational total;
  for (AgentId i : chosen) {
    if (i < 0 || i >= static_cast<int>(spec.values.size())) {
      throw InputError("additive: unknown agent " + std::to_string(i));
    }
    total += spec.values[static_cast<std::size_t>(i)];
  }
  return total;
}

}  // namespace bfm
