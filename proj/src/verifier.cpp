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

#include "selfstab/verifier.hpp"

#include <algorithm>

namespace selfstab {

namespace {

void require_subset(const Graph& g, const NodeSet& x) {
  for (NodeId id : x)
    if (!g.has_node(id)) throw DomainError("set contains unknown node id " + std::to_string(id.value));
}

std::vector<char> membership(const Graph& g, const NodeSet& x) {
  std::vector<char> in(g.order(), 0);
  for (NodeId id : x) in[g.slot_of(id)] = 1;
  return in;
}

Verdict undominated(const Graph& g, const std::vector<char>& in, const char* property) {
  Verdict v;
  for (Graph::Slot s = 0; s < g.order(); ++s) {
    if (in[s]) continue;
    auto row = g.neighbor_slots(s);
    if (std::none_of(row.begin(), row.end(), [&](Graph::Slot t) { return in[t] != 0; }))
      v.violations.push_back({property, {g.id_at(s)}});
  }
  return v;
}

}  // namespace

void Verdict::merge(const Verdict& other) {
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
}

nlohmann::json to_json(const Verdict& v) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& violation : v.violations) {
    nlohmann::json witness = nlohmann::json::array();
    for (NodeId id : violation.witness) witness.push_back(id.value);
    list.push_back({{"property", violation.property}, {"witness", std::move(witness)}});
  }
  return {{"ok", v.ok()}, {"violations", std::move(list)}};
}

Verdict is_independent(const Graph& g, const NodeSet& x) {
  require_subset(g, x);
  const auto in = membership(g, x);
  Verdict v;
  for (Graph::Slot s = 0; s < g.order(); ++s) {
    if (!in[s]) continue;
    for (Graph::Slot t : g.neighbor_slots(s))
      if (s < t && in[t]) v.violations.push_back({"independent", {g.id_at(s), g.id_at(t)}});
  }
  return v;
}

Verdict is_dominating(const Graph& g, const NodeSet& x) {
  require_subset(g, x);
  return undominated(g, membership(g, x), "dominating");
}

Verdict is_maximal_independent(const Graph& g, const NodeSet& x) {
  Verdict v = is_independent(g, x);
  v.merge(undominated(g, membership(g, x), "maximal"));
  return v;
}

Verdict verify_two_layer(const Graph& g, const NodeSet& r, const NodeSet& b) {
  require_subset(g, r);
  require_subset(g, b);
  for (NodeId id : b)
    if (r.contains(id)) throw DomainError("R and B overlap at node " + std::to_string(id.value));
  Verdict v;
  for (auto violation : is_maximal_independent(g, r).violations) {
    violation.property = "R." + violation.property;
    v.violations.push_back(std::move(violation));
  }
  std::vector<NodeId> rest;
  for (NodeId id : g.nodes())
    if (!r.contains(id)) rest.push_back(id);
  const Graph remainder = induced_subgraph(g, NodeSet(std::move(rest)));
  for (auto violation : is_maximal_independent(remainder, b).violations) {
    violation.property = "B." + violation.property;
    v.violations.push_back(std::move(violation));
  }
  return v;
}

Verdict verify_outcome(const AlgorithmId& algo, const Graph& g, const Trace& trace) {
  Verdict v;
  if (!trace.stabilized) {
    v.violations.push_back({"stabilized", {}});
    return v;
  }
  if (!is_legal(algo.family(), trace.final)) v.violations.push_back({"legal-states", {}});
  for (Graph::Slot s = 0; s < g.order(); ++s)
    if (trace.final[s] == NodeState::kWait) v.violations.push_back({"no-wait", {g.id_at(s)}});
  for (Graph::Slot s : eligible_nodes(algo, g, trace.final))
    v.violations.push_back({"silent", {g.id_at(s)}});
  if (!v.ok()) return v;
  const ExtractedSets sets = extract_sets(algo, g, trace);
  if (sets.b)
    v.merge(verify_two_layer(g, sets.x, *sets.b));
  else
    v.merge(is_maximal_independent(g, sets.x));
  return v;
}

std::string_view to_string(BoundStatus s) {
  switch (s) {
    case BoundStatus::kWithin: return "within";
    case BoundStatus::kExceeded: return "exceeded";
    case BoundStatus::kUnboundedMonitored: return "unbounded-monitored";
  }
  return "?";
}

BoundCheck check_move_bound(const AlgorithmId& algo, std::uint64_t n, std::uint64_t max_degree,
                            std::uint64_t total_moves) {
  std::optional<std::uint64_t> bound;
  bool proven = true;
  switch (algo.family()) {
    case Family::C1:
    case Family::C2: bound = 2 * n; break;
    case Family::C3:
    case Family::C5:
    case Family::D2: bound = 3 * n; break;
    case Family::D1: bound = std::max<std::int64_t>(3 * static_cast<std::int64_t>(n) - 5,
                                                    2 * static_cast<std::int64_t>(n));
      break;
    case Family::D3:
    case Family::D5:
      bound = 3 * max_degree * n;
      proven = false;
      break;
    case Family::C4:
    case Family::D4: return {BoundStatus::kUnboundedMonitored, std::nullopt, false};
  }
  return {total_moves <= *bound ? BoundStatus::kWithin : BoundStatus::kExceeded, bound, proven};
}

Verdict audit_terminal_moves(const AlgorithmId& algo, const Graph& g, const Trace& trace) {
  Verdict v;
  const Family f = algo.family();
  const bool rin_terminal = f == Family::C2 || f == Family::D2;
  const bool rinvw_terminal = f == Family::C3 || f == Family::D3;
  const bool d5 = f == Family::D5;
  if (!rin_terminal && !rinvw_terminal && !d5) return v;

  // Replays the trace so the D5 check can see which colour RIn wrote.
  Configuration config = trace.initial;
  std::vector<const char*> frozen_by(g.order(), nullptr);
  for (const Step& step : trace.steps) {
    for (const Move& m : step) {
      const Graph::Slot s = g.slot_of(m.node);
      if (frozen_by[s]) v.violations.push_back({std::string("moved-after-") + frozen_by[s], {m.node}});
    }
    // Statements of one step read the same snapshot; the trace only records
    // which rule fired, so recompute outcomes before writing.
    std::vector<NodeState> next;
    next.reserve(step.size());
    for (const Move& m : step) {
      const Graph::Slot s = g.slot_of(m.node);
      const Rule* rule = nullptr;
      for (const Rule& candidate : rule_table(f))
        if (candidate.name == m.rule) rule = &candidate;
      next.push_back(rule->statement(GuardContext{g, config, s, algo.variant()}));
    }
    for (std::size_t k = 0; k < step.size(); ++k) {
      const Graph::Slot s = g.slot_of(step[k].node);
      config[s] = next[k];
      if (rin_terminal && step[k].rule == RuleName::kRIn) frozen_by[s] = "RIn";
      if (rinvw_terminal && step[k].rule == RuleName::kRInVW) frozen_by[s] = "RInVW";
      if (d5 && step[k].rule == RuleName::kRIn && next[k] == NodeState::k1) frozen_by[s] = "RIn-color-1";
    }
  }
  return v;
}

}  // namespace selfstab
