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

#ifndef BFM_INSTANCE_IO_HPP
#define BFM_INSTANCE_IO_HPP

#include <filesystem>
#include <string>

#include "bfm/core.hpp"

namespace bfm {

// Instance files are JSON:
//   {"family": str, "budget": "p/q",
//    "agents": [{"id": int, "cost": "p/q"}, ...],
//    "valuation": {...}}
// with rationals always written as "p/q" strings. Valuation objects:
//   coverage           {"weights": [...], "subsets": [[int...]...]}
//   knapsack           {"values": [...]}
//   matching, forest   {"vertices": int, "edges": [[u, v]...], "values": [...]}
//   independent-set    same as graphs, one value per vertex
//   partition-matroid  {"classes": [int...], "capacities": [int...], "values": [...]}
//   kd-matching        {"k": int, "parts": [int...], "hyperedges": [[int...]...], "values": [...]}

/// Parses and validates. Throws InputError with a readable message.
Instance parse_instance(const std::string& text);

/// Canonical text form (2-space indented JSON, trailing newline).
std::string serialize_instance(const Instance& instance);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& instance, const std::filesystem::path& path);

}  // namespace bfm

#endif  // BFM_INSTANCE_IO_HPP
