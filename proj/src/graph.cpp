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

#include "selfstab/graph.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <optional>
#include <sstream>
#include <unordered_set>

namespace selfstab {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

std::ostream& operator<<(std::ostream& os, NodeId id) { return os << id.value; }

NodeSet::NodeSet(std::initializer_list<NodeId> ids) : NodeSet(std::vector<NodeId>(ids)) {}

NodeSet::NodeSet(std::vector<NodeId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool NodeSet::contains(NodeId id) const {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

Graph::Graph(std::size_t n, std::span<const Edge> edges) {
  if (n > std::numeric_limits<Slot>::max()) throw DomainError("graph order too large");
  ids_.resize(n);
  for (std::size_t i = 0; i < n; ++i) ids_[i] = NodeId(static_cast<std::uint32_t>(i));
  std::vector<std::pair<Slot, Slot>> slot_edges;
  slot_edges.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u.value >= n || e.v.value >= n)
      throw DomainError("edge endpoint out of range: " + std::to_string(e.u.value) + " " +
                        std::to_string(e.v.value));
    slot_edges.emplace_back(e.u.value, e.v.value);
  }
  build(std::move(slot_edges));
}

Graph Graph::with_ids(std::vector<NodeId> ids, std::span<const Edge> edges) {
  Graph g;
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    throw DomainError("duplicate node id");
  g.ids_ = std::move(ids);
  g.dense_ = true;
  for (std::size_t i = 0; i < g.ids_.size(); ++i)
    if (g.ids_[i].value != i) g.dense_ = false;
  std::vector<std::pair<Slot, Slot>> slot_edges;
  slot_edges.reserve(edges.size());
  for (const Edge& e : edges) slot_edges.emplace_back(g.slot_of(e.u), g.slot_of(e.v));
  g.build(std::move(slot_edges));
  return g;
}

void Graph::build(std::vector<std::pair<Slot, Slot>> slot_edges) {
  const std::size_t n = ids_.size();
  for (auto& [a, b] : slot_edges) {
    if (a == b) throw DomainError("self-loop at node " + std::to_string(ids_[a].value));
    if (a > b) std::swap(a, b);
  }
  std::sort(slot_edges.begin(), slot_edges.end());
  if (auto dup = std::adjacent_find(slot_edges.begin(), slot_edges.end());
      dup != slot_edges.end())
    throw DomainError("duplicate edge " + std::to_string(ids_[dup->first].value) + " " +
                      std::to_string(ids_[dup->second].value));

  std::vector<std::size_t> deg(n, 0);
  for (const auto& [a, b] : slot_edges) {
    ++deg[a];
    ++deg[b];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + deg[i];
  adjacency_.assign(offsets_[n], 0);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [a, b] : slot_edges) {
    adjacency_[fill[a]++] = b;
    adjacency_[fill[b]++] = a;
  }
  for (std::size_t i = 0; i < n; ++i)
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]));
  max_degree_ = n == 0 ? 0 : *std::max_element(deg.begin(), deg.end());
}

bool Graph::has_node(NodeId id) const noexcept {
  if (dense_) return id.value < ids_.size();
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

Graph::Slot Graph::slot_of(NodeId id) const {
  if (dense_) {
    if (id.value >= ids_.size()) throw DomainError("unknown node id " + std::to_string(id.value));
    return id.value;
  }
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id)
    throw DomainError("unknown node id " + std::to_string(id.value));
  return static_cast<Slot>(it - ids_.begin());
}

NodeSet Graph::nodes() const { return NodeSet(ids_); }

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(size());
  for (Slot s = 0; s < order(); ++s)
    for (Slot t : neighbor_slots(s))
      if (s < t) out.push_back({ids_[s], ids_[t]});
  return out;
}

NodeSet Graph::neighbors(NodeId v) const {
  std::vector<NodeId> out;
  for (Slot t : neighbor_slots(slot_of(v))) out.push_back(ids_[t]);
  return NodeSet(std::move(out));
}

std::size_t Graph::degree(NodeId v) const { return degree_at(slot_of(v)); }

bool Graph::adjacent(NodeId u, NodeId v) const {
  auto row = neighbor_slots(slot_of(u));
  return std::binary_search(row.begin(), row.end(), slot_of(v));
}

Graph induced_subgraph(const Graph& g, const NodeSet& s) {
  for (NodeId id : s)
    if (!g.has_node(id)) throw DomainError("unknown node id " + std::to_string(id.value));
  std::vector<Edge> kept;
  for (NodeId id : s)
    for (Graph::Slot t : g.neighbor_slots(g.slot_of(id))) {
      NodeId other = g.id_at(t);
      if (id < other && s.contains(other)) kept.push_back({id, other});
    }
  return Graph::with_ids(s.ids(), kept);
}

std::pair<std::size_t, std::vector<std::uint32_t>> connected_components(const Graph& g) {
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  const std::size_t n = g.order();
  std::vector<std::uint32_t> label(n, kUnset);
  std::vector<Graph::Slot> stack;
  std::uint32_t count = 0;
  for (Graph::Slot root = 0; root < n; ++root) {
    if (label[root] != kUnset) continue;
    label[root] = count;
    stack.push_back(root);
    while (!stack.empty()) {
      Graph::Slot s = stack.back();
      stack.pop_back();
      for (Graph::Slot t : g.neighbor_slots(s))
        if (label[t] == kUnset) {
          label[t] = count;
          stack.push_back(t);
        }
    }
    ++count;
  }
  return {count, std::move(label)};
}

bool is_connected(const Graph& g) { return connected_components(g).first <= 1; }

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Parses whitespace-separated unsigned integers; fails on anything else.
bool parse_uints(std::string_view line, std::vector<std::uint64_t>& out) {
  out.clear();
  const char* p = line.data();
  const char* end = p + line.size();
  while (p < end) {
    while (p < end && (*p == ' ' || *p == '\t')) ++p;
    if (p == end) break;
    std::uint64_t v = 0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc() || (next < end && *next != ' ' && *next != '\t')) return false;
    out.push_back(v);
    p = next;
  }
  return true;
}

}  // namespace

Graph read_edge_list(std::string_view text) {
  std::size_t line_no = 0;
  std::optional<std::size_t> n;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<std::uint64_t> fields;
  std::unordered_set<std::uint64_t> seen;

  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    if (!parse_uints(line, fields)) throw ParseError(line_no, "malformed line '" + std::string(line) + "'");
    if (!n) {
      if (fields.size() != 1) throw ParseError(line_no, "expected node count");
      if (fields[0] > std::numeric_limits<Graph::Slot>::max())
        throw ParseError(line_no, "node count too large");
      n = fields[0];
      continue;
    }
    if (fields.size() != 2) throw ParseError(line_no, "expected 'u v'");
    auto u = fields[0], v = fields[1];
    if (u >= *n || v >= *n) throw ParseError(line_no, "node id out of range");
    if (u == v) throw ParseError(line_no, "self-loop at node " + std::to_string(u));
    if (u > v) std::swap(u, v);
    if (!seen.insert((u << 32) | v).second)
      throw ParseError(line_no, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    edges.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
  }
  if (!n) throw ParseError(line_no == 0 ? 1 : line_no, "missing node count");

  std::vector<Edge> out;
  out.reserve(edges.size());
  for (auto [u, v] : edges) out.push_back({NodeId(u), NodeId(v)});
  return Graph(*n, out);
}

std::string write_edge_list(const Graph& g) {
  if (!g.has_dense_ids()) throw DomainError("edge-list output requires ids 0..n-1");
  std::ostringstream os;
  os << g.order() << '\n';
  for (const Edge& e : g.edges()) os << e.u.value << ' ' << e.v.value << '\n';
  return os.str();
}

}  // namespace selfstab
