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

#ifndef SELFSTAB_ENGINE_HPP_
#define SELFSTAB_ENGINE_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"
#include "selfstab/graph.hpp"
#include "selfstab/rng.hpp"
#include "selfstab/rules.hpp"

namespace selfstab {

/// Which states random_initial draws from.
enum class InitDomain {
  kFull,    // the family's whole legal domain, wait state included
  kNoWait,  // distributed families restricted to their central domain
};

/// Each node's state drawn uniformly from the domain.
Configuration random_initial(const AlgorithmId& algo, const Graph& g, std::uint64_t seed,
                             InitDomain domain = InitDomain::kFull);

struct Move {
  NodeId node;
  RuleName rule;
  friend bool operator==(const Move&, const Move&) = default;
};

/// One scheduler step: every move in it read the same snapshot.
using Step = std::vector<Move>;

struct Trace {
  std::vector<Step> steps;
  std::uint64_t total_moves = 0;
  bool stabilized = false;
  Configuration initial;
  Configuration final;

  /// Moves per rule, indexed by RuleName.
  std::array<std::uint64_t, kRuleCount> rule_histogram() const;

  friend bool operator==(const Trace&, const Trace&) = default;
};

nlohmann::json to_json(const Trace& trace, const Graph& g);

/// Central daemon: one eligible node, chosen uniformly, fires its first
/// eligible rule. Updates `config` in place; nullopt means stable.
std::optional<Move> step_central(const AlgorithmId& algo, const Graph& g, Configuration& config,
                                 Rng& rng);

/// Distributed daemon: each eligible node joins independently with
/// probability 1/2 (redrawn while empty); all guards and statements read the
/// pre-step snapshot. Empty result means stable.
Step step_distributed(const AlgorithmId& algo, const Graph& g, Configuration& config, Rng& rng);

/// 10 * max(Delta, 1) * max(n, 1).
std::uint64_t default_move_cap(const Graph& g);

/// Runs the algorithm's own daemon until no node is eligible or `move_cap`
/// moves have been made. Produces the same trajectory as repeated
/// step_central / step_distributed calls on an Rng seeded with `seed`.
Trace run(const AlgorithmId& algo, const Graph& g, Configuration init, std::uint64_t seed,
          std::uint64_t move_cap);

/// Nodes that are eligible under `config`, in slot order.
std::vector<Graph::Slot> eligible_nodes(const AlgorithmId& algo, const Graph& g,
                                        const Configuration& config);

/// X for the MIS families; R (colour 1) and B (colour 2) for the colouring
/// families.
struct ExtractedSets {
  NodeSet x;
  std::optional<NodeSet> b;
};

/// Throws DomainError for a trace that did not stabilize.
ExtractedSets extract_sets(const AlgorithmId& algo, const Graph& g, const Trace& trace);
ExtractedSets extract_sets(const AlgorithmId& algo, const Graph& g, const Configuration& final);

}  // namespace selfstab

#endif  // SELFSTAB_ENGINE_HPP_
