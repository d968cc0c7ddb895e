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

#ifndef SELFSTAB_VERIFIER_HPP_
#define SELFSTAB_VERIFIER_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "selfstab/engine.hpp"
#include "selfstab/graph.hpp"
#include "selfstab/rules.hpp"

namespace selfstab {

struct Violation {
  std::string property;
  std::vector<NodeId> witness;
  friend bool operator==(const Violation&, const Violation&) = default;
};

struct Verdict {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  void merge(const Verdict& other);
};

nlohmann::json to_json(const Verdict& v);

/// Witness: the first edge inside `x`.
Verdict is_independent(const Graph& g, const NodeSet& x);
/// Independence plus every node outside `x` having a neighbour in `x`.
Verdict is_maximal_independent(const Graph& g, const NodeSet& x);
Verdict is_dominating(const Graph& g, const NodeSet& x);

/// `r` maximal independent in g and `b` maximal independent in g[V - r].
/// Throws DomainError if r and b overlap.
Verdict verify_two_layer(const Graph& g, const NodeSet& r, const NodeSet& b);

/// Checks a stabilized run end to end: legal final states, no waiting node,
/// X maximal independent (or the R/B pair for the colouring families).
Verdict verify_outcome(const AlgorithmId& algo, const Graph& g, const Trace& trace);

enum class BoundStatus { kWithin, kExceeded, kUnboundedMonitored };

struct BoundCheck {
  BoundStatus status;
  /// Move bound compared against; absent for C4/D4.
  std::optional<std::uint64_t> bound;
  /// False for the O(Delta n) families, whose 3 Delta n ceiling is monitored
  /// rather than proven.
  bool proven;
};

/// C1, C2: 2n. C3, C5, D2: 3n. D1: max(3n - 5, 2n). D3, D5: 3 Delta n
/// (monitored). C4, D4: no known bound.
BoundCheck check_move_bound(const AlgorithmId& algo, std::uint64_t n, std::uint64_t max_degree,
                            std::uint64_t total_moves);

std::string_view to_string(BoundStatus s);

/// Per-node move lemmas replayed over a trace: RIn is terminal under C2/D2,
/// RInVW is terminal under C3/D3, and under D5 an RIn that sets colour 1 is
/// terminal. Other families yield an empty verdict.
Verdict audit_terminal_moves(const AlgorithmId& algo, const Graph& g, const Trace& trace);

}  // namespace selfstab

#endif  // SELFSTAB_VERIFIER_HPP_
