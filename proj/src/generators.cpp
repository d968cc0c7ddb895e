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

#include "selfstab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <queue>
#include <vector>

#include "selfstab/rng.hpp"

namespace selfstab {

namespace {

constexpr int kUnitDiskAttempts = 1000;

void check_probability(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("edge probability must lie in (0, 1]");
}

template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_below(rng, i)]);
}

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
  std::vector<std::size_t> parent;
};

Edge make_edge(std::size_t a, std::size_t b) {
  return {NodeId(static_cast<std::uint32_t>(a)), NodeId(static_cast<std::uint32_t>(b))};
}

}  // namespace

std::string_view to_string(GraphClass c) {
  switch (c) {
    case GraphClass::kTree: return "tree";
    case GraphClass::kBipartite: return "bipartite";
    case GraphClass::kUnitDisk: return "unitdisk";
    case GraphClass::kConnected: return "connected";
  }
  return "?";
}

GraphClass parse_graph_class(std::string_view name) {
  if (name == "tree") return GraphClass::kTree;
  if (name == "bipartite") return GraphClass::kBipartite;
  if (name == "unitdisk" || name == "unit-disk") return GraphClass::kUnitDisk;
  if (name == "connected") return GraphClass::kConnected;
  throw DomainError("unknown graph class '" + std::string(name) + "'");
}

nlohmann::json to_json(const GenSpec& spec) {
  nlohmann::json j{{"class", to_string(spec.graph_class)}, {"n", spec.n}, {"seed", spec.seed}};
  if (spec.p) j["p"] = *spec.p;
  if (spec.r) j["r"] = *spec.r;
  return j;
}

GenSpec gen_spec_from_json(const nlohmann::json& j) {
  try {
    GenSpec spec;
    spec.graph_class = parse_graph_class(j.at("class").get<std::string>());
    spec.n = j.at("n").get<std::size_t>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("p")) spec.p = j["p"].get<double>();
    if (j.contains("r")) spec.r = j["r"].get<double>();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("bad generator spec: ") + e.what());
  }
}

double default_edge_probability(std::size_t n) {
  if (n < 2) return 1.0;
  return std::min(1.0, 2.0 * std::log(static_cast<double>(n)) / static_cast<double>(n));
}

double default_radius(std::size_t n) {
  if (n == 0) return std::numbers::sqrt2;
  return std::min(std::numbers::sqrt2,
                  std::sqrt(8.0 / (std::numbers::pi * static_cast<double>(n))));
}

Graph gen_tree(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("tree order must be at least 1");
  if (n == 1) return Graph(1, {});
  Rng rng(seed);
  std::vector<std::size_t> code(n - 2);
  for (auto& c : code) c = uniform_below(rng, n);

  std::vector<std::size_t> remaining(n, 1);
  for (auto c : code) ++remaining[c];
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> leaves;
  for (std::size_t v = 0; v < n; ++v)
    if (remaining[v] == 1) leaves.push(v);

  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (auto c : code) {
    std::size_t leaf = leaves.top();
    leaves.pop();
    edges.push_back(make_edge(leaf, c));
    if (--remaining[c] == 1) leaves.push(c);
  }
  std::size_t a = leaves.top();
  leaves.pop();
  edges.push_back(make_edge(a, leaves.top()));
  return Graph(n, edges);
}

Graph gen_bipartite(std::size_t n, double p, std::uint64_t seed) {
  if (n < 2) throw DomainError("bipartite order must be at least 2");
  check_probability(p);
  Rng rng(seed);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  shuffle(perm, rng);
  const std::size_t left_size = (n + 1) / 2;
  std::vector<bool> left(n, false);
  for (std::size_t k = 0; k < left_size; ++k) left[perm[k]] = true;

  std::vector<Edge> edges;
  UnionFind uf(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (left[a] != left[b] && coin(rng, p)) {
        edges.push_back(make_edge(a, b));
        uf.unite(a, b);
      }

  // Grow one component outward; every join is a single cross edge.
  std::vector<std::vector<std::size_t>> members(n);
  for (std::size_t v = 0; v < n; ++v) members[uf.find(v)].push_back(v);
  std::vector<std::size_t> roots;
  for (std::size_t v = 0; v < n; ++v)
    if (!members[v].empty()) roots.push_back(v);
  if (roots.size() > 1) {
    // Start from the largest component; a singleton start is extended with
    // an opposite-side node first so that both sides are present.
    std::stable_sort(roots.begin(), roots.end(), [&](std::size_t x, std::size_t y) {
      return members[x].size() > members[y].size();
    });
    std::vector<std::size_t> main_left, main_right;
    auto absorb = [&](std::size_t root) {
      for (auto v : members[root]) (left[v] ? main_left : main_right).push_back(v);
    };
    auto pick = [&](const std::vector<std::size_t>& from) {
      return from[uniform_below(rng, from.size())];
    };
    absorb(roots.front());
    std::vector<std::size_t> pending(roots.begin() + 1, roots.end());
    while (!pending.empty()) {
      std::size_t idx = 0;
      if (main_left.empty() || main_right.empty()) {
        const bool need_left = main_left.empty();
        idx = static_cast<std::size_t>(
            std::find_if(pending.begin(), pending.end(),
                         [&](std::size_t root) {
                           return std::any_of(members[root].begin(), members[root].end(),
                                              [&](std::size_t v) { return left[v] == need_left; });
                         }) -
            pending.begin());
      }
      const std::size_t root = pending[idx];
      pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(idx));
      std::vector<std::size_t> comp_left, comp_right;
      for (auto v : members[root]) (left[v] ? comp_left : comp_right).push_back(v);
      // When both orientations are possible, pick one at random.
      const bool can_lr = !comp_left.empty() && !main_right.empty();
      const bool can_rl = !comp_right.empty() && !main_left.empty();
      const bool use_lr = can_lr && (!can_rl || coin(rng, 0.5));
      if (use_lr)
        edges.push_back(make_edge(pick(comp_left), pick(main_right)));
      else
        edges.push_back(make_edge(pick(comp_right), pick(main_left)));
      absorb(root);
    }
  }
  return Graph(n, edges);
}

Graph unit_disk_graph(std::span<const Point> points, double r) {
  const double r2 = r * r;
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < points.size(); ++a)
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      const double dx = points[a].x - points[b].x;
      const double dy = points[a].y - points[b].y;
      if (dx * dx + dy * dy <= r2) edges.push_back(make_edge(a, b));
    }
  return Graph(points.size(), edges);
}

Graph gen_unit_disk(std::size_t n, double r, std::uint64_t seed) {
  if (n == 0) throw DomainError("unit disk order must be at least 1");
  if (!(r > 0.0 && r <= std::numbers::sqrt2))
    throw DomainError("unit disk radius must lie in (0, sqrt(2)]");
  Rng rng(seed);
  std::vector<Point> points(n);
  for (int attempt = 0; attempt < kUnitDiskAttempts; ++attempt) {
    for (auto& pt : points) {
      pt.x = uniform_unit(rng);
      pt.y = uniform_unit(rng);
    }
    Graph g = unit_disk_graph(points, r);
    if (is_connected(g)) return g;
  }
  throw DomainError("no connected unit disk graph after " + std::to_string(kUnitDiskAttempts) +
                    " attempts (n=" + std::to_string(n) + ", r=" + std::to_string(r) +
                    "); increase r");
}

Graph gen_connected(std::size_t n, double p, std::uint64_t seed) {
  if (n == 0) throw DomainError("graph order must be at least 1");
  check_probability(p);
  Rng rng(seed);
  std::vector<Edge> edges;
  UnionFind uf(n);
  std::size_t components = n;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (coin(rng, p)) {
        edges.push_back(make_edge(a, b));
        if (uf.unite(a, b)) --components;
      }
  while (components > 1) {
    // Uniform over node pairs that straddle two components.
    const std::size_t a = uniform_below(rng, n);
    const std::size_t b = uniform_below(rng, n);
    if (uf.find(a) == uf.find(b)) continue;
    edges.push_back(make_edge(std::min(a, b), std::max(a, b)));
    uf.unite(a, b);
    --components;
  }
  return Graph(n, edges);
}

Graph generate(const GenSpec& spec) {
  switch (spec.graph_class) {
    case GraphClass::kTree: return gen_tree(spec.n, spec.seed);
    case GraphClass::kBipartite:
      return gen_bipartite(spec.n, spec.p.value_or(default_edge_probability(spec.n)), spec.seed);
    case GraphClass::kUnitDisk:
      return gen_unit_disk(spec.n, spec.r.value_or(default_radius(spec.n)), spec.seed);
    case GraphClass::kConnected:
      return gen_connected(spec.n, spec.p.value_or(default_edge_probability(spec.n)), spec.seed);
  }
  throw DomainError("unknown graph class");
}

}  // namespace selfstab
