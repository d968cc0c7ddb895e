// Copyright 2026 The selfstab Authors
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

#ifndef SELFSTAB_GENERATORS_HPP_
#define SELFSTAB_GENERATORS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "json.hpp"
#include "selfstab/graph.hpp"

namespace selfstab {

enum class GraphClass { kTree, kBipartite, kUnitDisk, kConnected };

std::string_view to_string(GraphClass c);
/// Accepts "tree", "bipartite", "unitdisk" (or "unit-disk") and "connected".
GraphClass parse_graph_class(std::string_view name);

/// Parameters for one generated graph. Unset `p` / `r` fall back to the
/// defaults below.
struct GenSpec {
  GraphClass graph_class = GraphClass::kTree;
  std::size_t n = 1;
  std::optional<double> p;
  std::optional<double> r;
  std::uint64_t seed = 0;
};

/// 2 ln(n) / n, clamped to (0, 1].
/// {"class": ..., "n": ..., "p": ..., "r": ..., "seed": ...}; unset p/r are omitted.
nlohmann::json to_json(const GenSpec& spec);
GenSpec gen_spec_from_json(const nlohmann::json& j);

double default_edge_probability(std::size_t n);
/// sqrt(8 / (pi n)): about eight expected neighbours, clamped to sqrt(2).
double default_radius(std::size_t n);

/// Uniform labelled tree, decoded from a random Pruefer sequence.
Graph gen_tree(std::size_t n, std::uint64_t seed);

/// Random cross edges between two shuffled halves, then the fewest cross
/// edges needed to join the components.
Graph gen_bipartite(std::size_t n, double p, std::uint64_t seed);

/// Points uniform in the unit square, edge iff distance <= r. Whole point
/// sets are redrawn until the graph is connected (at most 1000 attempts).
Graph gen_unit_disk(std::size_t n, double r, std::uint64_t seed);

/// G(n, p), then random edges between distinct components until connected.
Graph gen_connected(std::size_t n, double p, std::uint64_t seed);

struct Point {
  double x;
  double y;
};

/// Intersection graph of the given points at radius r (inclusive).
Graph unit_disk_graph(std::span<const Point> points, double r);

Graph generate(const GenSpec& spec);

}  // namespace selfstab

#endif  // SELFSTAB_GENERATORS_HPP_
