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

#ifndef SELFSTAB_RULES_HPP_
#define SELFSTAB_RULES_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "selfstab/graph.hpp"

namespace selfstab {

/// Local state x(i). The MIS families use {0, 1} (central) or {0, 1, W}
/// (distributed); the colouring families use {1, 2, 3} and {1, 2, 3, W}.
enum class NodeState : std::uint8_t { k0 = 0, k1 = 1, k2 = 2, k3 = 3, kWait = 4 };

char to_char(NodeState s);

/// States indexed by graph slot.
using Configuration = std::vector<NodeState>;

enum class Family : std::uint8_t { C1, C2, C3, C4, C5, D1, D2, D3, D4, D5 };

/// Direction of every degree comparison in a rule table. kBeta0 biases
/// towards large sets (deg(i) >= deg(j)), kI towards small ones
/// (deg(i) <= deg(j)).
enum class Variant : std::uint8_t { kNone, kBeta0, kI };

bool is_distributed(Family f);
bool has_variants(Family f);
bool is_coloring(Family f);

class AlgorithmId {
 public:
  /// Throws DomainError unless variant == kNone exactly for C1, C5, D1, D5.
  AlgorithmId(Family family, Variant variant = Variant::kNone);

  Family family() const noexcept { return family_; }
  Variant variant() const noexcept { return variant_; }
  bool distributed() const noexcept { return is_distributed(family_); }

  /// "C1", "C2b0", "C2i", ..., "D5".
  std::string name() const;
  /// The baseline of the same scheduler kind: C1 or D1.
  AlgorithmId baseline() const;

  friend bool operator==(const AlgorithmId&, const AlgorithmId&) = default;

 private:
  Family family_;
  Variant variant_;
};

/// Case-insensitive; "b0"/"beta0" and "i" suffixes select the variant.
AlgorithmId parse_algorithm(std::string_view name);

/// The sixteen algorithm/variant rows in table order (C1 ... C5, D1 ... D5).
std::span<const AlgorithmId> all_algorithms();

enum class RuleName : std::uint8_t { kRIn, kROut, kRInVW, kRWait, kRBack, kRecolor };
inline constexpr std::size_t kRuleCount = 6;

std::string_view to_string(RuleName r);

/// What a guard may look at: the node, its neighbours' states, ids and
/// degrees.
struct GuardContext {
  const Graph& graph;
  const Configuration& config;
  Graph::Slot node;
  Variant variant;

  NodeState self() const { return config[node]; }
};

struct Rule {
  RuleName name;
  bool (*guard)(const GuardContext&);
  NodeState (*statement)(const GuardContext&);
};

/// Rules of `family` in listing order. When several guards hold at once
/// the first listed rule is the one that fires.
std::span<const Rule> rule_table(Family family);

/// States a configuration of this family may contain.
std::span<const NodeState> state_domain(Family family);
bool is_legal(Family family, const Configuration& config);

/// Eligible rules at one node as a bitmask indexed by RuleName.
class RuleSet {
 public:
  void insert(RuleName r) { bits_ |= static_cast<std::uint8_t>(1u << static_cast<unsigned>(r)); }
  bool contains(RuleName r) const { return (bits_ >> static_cast<unsigned>(r)) & 1u; }
  bool empty() const { return bits_ == 0; }
  std::size_t size() const;
  std::vector<RuleName> names() const;
  friend bool operator==(const RuleSet&, const RuleSet&) = default;

 private:
  std::uint8_t bits_ = 0;
};

RuleSet eligible_rules(const AlgorithmId& algo, const Graph& g, const Configuration& config,
                       Graph::Slot v);

/// First eligible rule in listing order, or nullptr when `v` is not eligible.
const Rule* first_eligible_rule(const AlgorithmId& algo, const Graph& g,
                                const Configuration& config, Graph::Slot v);

/// Smallest colour in {1, 2, 3} not held by a neighbour coloured 1 or 2.
NodeState color(const Graph& g, const Configuration& config, Graph::Slot v);

/// True iff some neighbour with a smaller id is waiting.
bool smaller_waiting_neighbor(const Graph& g, const Configuration& config, Graph::Slot v);

}  // namespace selfstab

#endif  // SELFSTAB_RULES_HPP_
