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

#include "selfstab/engine.hpp"

#include <algorithm>

namespace selfstab {

namespace {

// Picks a non-empty random subset of `eligible`, one coin per node in order.
std::vector<Graph::Slot> draw_subset(const std::vector<Graph::Slot>& eligible, Rng& rng) {
  std::vector<Graph::Slot> chosen;
  while (chosen.empty())
    for (Graph::Slot s : eligible)
      if (coin(rng, 0.5)) chosen.push_back(s);
  return chosen;
}

// Fires the first eligible rule of every node in `movers` against one
// snapshot of `config`, then writes all new states.
Step fire_simultaneously(const AlgorithmId& algo, const Graph& g, Configuration& config,
                         const std::vector<Graph::Slot>& movers) {
  Step step;
  step.reserve(movers.size());
  std::vector<NodeState> next;
  next.reserve(movers.size());
  for (Graph::Slot s : movers) {
    const Rule* rule = first_eligible_rule(algo, g, config, s);
    next.push_back(rule->statement(GuardContext{g, config, s, algo.variant()}));
    step.push_back({g.id_at(s), rule->name});
  }
  for (std::size_t k = 0; k < movers.size(); ++k) config[movers[k]] = next[k];
  return step;
}

// Counts of eligible slots with k-th element selection, so the central
// daemon can pick uniformly in slot order without rescanning the graph.
class EligibleIndex {
 public:
  explicit EligibleIndex(std::size_t n) : flags_(n, 0), tree_(n + 1, 0) {
    while ((std::size_t{1} << (log_ + 1)) <= n) ++log_;
  }

  void set(Graph::Slot s, bool eligible) {
    const char want = eligible ? 1 : 0;
    if (flags_[s] == want) return;
    flags_[s] = want;
    const std::int64_t delta = eligible ? 1 : -1;
    for (std::size_t i = s + 1; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
    total_ += static_cast<std::size_t>(delta);
  }

  bool eligible(Graph::Slot s) const { return flags_[s] != 0; }
  std::size_t count() const { return total_; }

  // Slot of the k-th (0-based) eligible node.
  Graph::Slot select(std::size_t k) const {
    std::size_t pos = 0;
    auto remaining = static_cast<std::int64_t>(k);
    for (std::size_t step = std::size_t{1} << log_; step != 0; step >>= 1) {
      if (pos + step < tree_.size() && tree_[pos + step] <= remaining) {
        pos += step;
        remaining -= tree_[pos];
      }
    }
    return static_cast<Graph::Slot>(pos);
  }

  std::vector<Graph::Slot> slots() const {
    std::vector<Graph::Slot> out;
    out.reserve(total_);
    for (Graph::Slot s = 0; s < flags_.size(); ++s)
      if (flags_[s]) out.push_back(s);
    return out;
  }

 private:
  std::vector<char> flags_;
  std::vector<std::int64_t> tree_;
  std::size_t total_ = 0;
  unsigned log_ = 0;
};

}  // namespace

std::array<std::uint64_t, kRuleCount> Trace::rule_histogram() const {
  std::array<std::uint64_t, kRuleCount> out{};
  for (const Step& step : steps)
    for (const Move& m : step) ++out[static_cast<std::size_t>(m.rule)];
  return out;
}

nlohmann::json to_json(const Trace& trace, const Graph& g) {
  auto states = [](const Configuration& c) {
    std::string s;
    s.reserve(c.size());
    for (NodeState x : c) s += to_char(x);
    return s;
  };
  nlohmann::json steps = nlohmann::json::array();
  for (const Step& step : trace.steps) {
    nlohmann::json js = nlohmann::json::array();
    for (const Move& m : step) js.push_back({{"node", m.node.value}, {"rule", to_string(m.rule)}});
    steps.push_back(std::move(js));
  }
  nlohmann::json histogram = nlohmann::json::object();
  const auto counts = trace.rule_histogram();
  for (std::size_t r = 0; r < kRuleCount; ++r)
    if (counts[r] != 0) histogram[std::string(to_string(static_cast<RuleName>(r)))] = counts[r];
  nlohmann::json ids = nlohmann::json::array();
  for (Graph::Slot s = 0; s < g.order(); ++s) ids.push_back(g.id_at(s).value);
  return {
      {"node_ids", std::move(ids)},
      {"initial", states(trace.initial)},
      {"final", states(trace.final)},
      {"stabilized", trace.stabilized},
      {"total_moves", trace.total_moves},
      {"rule_histogram", std::move(histogram)},
      {"steps", std::move(steps)},
  };
}

Configuration random_initial(const AlgorithmId& algo, const Graph& g, std::uint64_t seed,
                             InitDomain domain) {
  std::vector<NodeState> choices;
  for (NodeState s : state_domain(algo.family()))
    if (domain == InitDomain::kFull || s != NodeState::kWait) choices.push_back(s);
  Rng rng(seed);
  Configuration config(g.order());
  for (auto& x : config) x = choices[uniform_below(rng, choices.size())];
  return config;
}

std::vector<Graph::Slot> eligible_nodes(const AlgorithmId& algo, const Graph& g,
                                        const Configuration& config) {
  std::vector<Graph::Slot> out;
  for (Graph::Slot s = 0; s < g.order(); ++s)
    if (first_eligible_rule(algo, g, config, s)) out.push_back(s);
  return out;
}

std::optional<Move> step_central(const AlgorithmId& algo, const Graph& g, Configuration& config,
                                 Rng& rng) {
  const auto eligible = eligible_nodes(algo, g, config);
  if (eligible.empty()) return std::nullopt;
  const Graph::Slot s = eligible[uniform_below(rng, eligible.size())];
  return fire_simultaneously(algo, g, config, {s}).front();
}

Step step_distributed(const AlgorithmId& algo, const Graph& g, Configuration& config, Rng& rng) {
  const auto eligible = eligible_nodes(algo, g, config);
  if (eligible.empty()) return {};
  return fire_simultaneously(algo, g, config, draw_subset(eligible, rng));
}

std::uint64_t default_move_cap(const Graph& g) {
  return 10 * std::max<std::uint64_t>(g.max_degree(), 1) * std::max<std::uint64_t>(g.order(), 1);
}

Trace run(const AlgorithmId& algo, const Graph& g, Configuration init, std::uint64_t seed,
          std::uint64_t move_cap) {
  if (move_cap == 0) throw DomainError("move cap must be at least 1");
  if (init.size() != g.order()) throw DomainError("configuration length differs from graph order");
  if (!is_legal(algo.family(), init))
    throw DomainError("configuration has states outside the " + algo.name() + " domain");

  Trace trace;
  trace.initial = init;
  Configuration& config = init;
  Rng rng(seed);

  EligibleIndex index(g.order());
  for (Graph::Slot s = 0; s < g.order(); ++s)
    index.set(s, first_eligible_rule(algo, g, config, s) != nullptr);

  std::vector<char> touched(g.order(), 0);
  std::vector<Graph::Slot> dirty;
  auto refresh_around = [&](const std::vector<Graph::Slot>& movers) {
    // A move can only change guards within distance one of the mover.
    for (Graph::Slot s : movers) {
      if (!touched[s]) touched[s] = 1, dirty.push_back(s);
      for (Graph::Slot t : g.neighbor_slots(s))
        if (!touched[t]) touched[t] = 1, dirty.push_back(t);
    }
    for (Graph::Slot s : dirty) {
      index.set(s, first_eligible_rule(algo, g, config, s) != nullptr);
      touched[s] = 0;
    }
    dirty.clear();
  };

  std::vector<Graph::Slot> movers;
  while (index.count() != 0 && trace.total_moves < move_cap) {
    if (algo.distributed())
      movers = draw_subset(index.slots(), rng);
    else
      movers.assign(1, index.select(uniform_below(rng, index.count())));
    trace.steps.push_back(fire_simultaneously(algo, g, config, movers));
    trace.total_moves += movers.size();
    refresh_around(movers);
  }
  trace.stabilized = index.count() == 0;
  trace.final = std::move(config);
  return trace;
}

ExtractedSets extract_sets(const AlgorithmId& algo, const Graph& g, const Configuration& final) {
  if (final.size() != g.order()) throw DomainError("configuration length differs from graph order");
  if (!eligible_nodes(algo, g, final).empty())
    throw DomainError("cannot extract sets from a configuration with eligible nodes");
  std::vector<NodeId> x, b;
  for (Graph::Slot s = 0; s < g.order(); ++s) {
    if (final[s] == NodeState::k1) x.push_back(g.id_at(s));
    if (final[s] == NodeState::k2) b.push_back(g.id_at(s));
  }
  ExtractedSets out{NodeSet(std::move(x)), std::nullopt};
  if (is_coloring(algo.family())) out.b = NodeSet(std::move(b));
  return out;
}

ExtractedSets extract_sets(const AlgorithmId& algo, const Graph& g, const Trace& trace) {
  if (!trace.stabilized) throw DomainError("cannot extract sets from a run that did not stabilize");
  return extract_sets(algo, g, trace.final);
}

}  // namespace selfstab
