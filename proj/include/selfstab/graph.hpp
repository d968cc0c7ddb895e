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

#ifndef SELFSTAB_GRAPH_HPP_
#define SELFSTAB_GRAPH_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace selfstab {

/// Thrown when an operation receives an argument outside its domain
/// (unknown node id, invalid generator parameter, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown by the edge-list reader. `line()` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Unique, totally ordered node identifier. Distributed guards break ties
/// by comparing these values.
struct NodeId {
  std::uint32_t value = 0;

  constexpr NodeId() = default;
  constexpr explicit NodeId(std::uint32_t v) : value(v) {}
  constexpr auto operator<=>(const NodeId&) const = default;
};

std::ostream& operator<<(std::ostream& os, NodeId id);

/// Sorted, duplicate-free set of node ids.
class NodeSet {
 public:
  NodeSet() = default;
  NodeSet(std::initializer_list<NodeId> ids);
  explicit NodeSet(std::vector<NodeId> ids);

  bool contains(NodeId id) const;
  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  auto begin() const noexcept { return ids_.begin(); }
  auto end() const noexcept { return ids_.end(); }
  const std::vector<NodeId>& ids() const noexcept { return ids_; }

  friend bool operator==(const NodeSet&, const NodeSet&) = default;

 private:
  std::vector<NodeId> ids_;
};

struct Edge {
  NodeId u;
  NodeId v;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable undirected simple graph.
///
/// Nodes are stored at dense positions 0..n-1 ("slots") in ascending id
/// order, so for generated graphs slot and id coincide. Induced subgraphs
/// keep the ids of the parent graph. Adjacency is CSR with sorted rows and
/// degrees are fixed at construction.
class Graph {
 public:
  using Slot = std::uint32_t;

  Graph() = default;

  /// Graph on ids 0..n-1.
  Graph(std::size_t n, std::span<const Edge> edges);
  Graph(std::size_t n, std::initializer_list<Edge> edges)
      : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  /// Graph on an arbitrary set of distinct ids.
  static Graph with_ids(std::vector<NodeId> ids, std::span<const Edge> edges);

  std::size_t order() const noexcept { return ids_.size(); }
  std::size_t size() const noexcept { return adjacency_.size() / 2; }
  std::size_t max_degree() const noexcept { return max_degree_; }

  /// True when the ids are exactly 0..n-1.
  bool has_dense_ids() const noexcept { return dense_; }

  bool has_node(NodeId id) const noexcept;
  NodeSet nodes() const;
  std::vector<Edge> edges() const;

  NodeSet neighbors(NodeId v) const;
  std::size_t degree(NodeId v) const;
  bool adjacent(NodeId u, NodeId v) const;

  // Slot-level access used by the rule engine and oracle.
  Slot slot_of(NodeId id) const;
  NodeId id_at(Slot s) const noexcept { return ids_[s]; }
  std::span<const Slot> neighbor_slots(Slot s) const noexcept {
    return {adjacency_.data() + offsets_[s], adjacency_.data() + offsets_[s + 1]};
  }
  std::uint32_t degree_at(Slot s) const noexcept {
    return static_cast<std::uint32_t>(offsets_[s + 1] - offsets_[s]);
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.ids_ == b.ids_ && a.offsets_ == b.offsets_ && a.adjacency_ == b.adjacency_;
  }

 private:
  void build(std::vector<std::pair<Slot, Slot>> slot_edges);

  std::vector<NodeId> ids_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Slot> adjacency_;
  std::size_t max_degree_ = 0;
  bool dense_ = true;
};

/// Subgraph on `s` with every edge of `g` whose endpoints both lie in `s`.
Graph induced_subgraph(const Graph& g, const NodeSet& s);

/// Empty and single-node graphs count as connected.
bool is_connected(const Graph& g);

/// Number of connected components, and a component label per slot.
std::pair<std::size_t, std::vector<std::uint32_t>> connected_components(const Graph& g);

/// Parse the edge-list text format: first data line is the node count, then
/// one "u v" pair per line. Blank lines and lines starting with '#' are
/// ignored.
Graph read_edge_list(std::string_view text);

/// Canonical edge-list text (edges sorted, u < v). Requires dense ids.
std::string write_edge_list(const Graph& g);

}  // namespace selfstab

template <>
struct std::hash<selfstab::NodeId> {
  std::size_t operator()(selfstab::NodeId id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};

#endif  // SELFSTAB_GRAPH_HPP_
