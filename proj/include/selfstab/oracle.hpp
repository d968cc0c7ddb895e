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

#ifndef SELFSTAB_ORACLE_HPP_
#define SELFSTAB_ORACLE_HPP_

#include <cstddef>
#include <functional>
#include <vector>

#include "selfstab/graph.hpp"

namespace selfstab {

inline constexpr std::size_t kDefaultOracleLimit = 24;

/// Calls `visit` once for every maximal independent set of `g`. Throws
/// DomainError when g has more than `limit` nodes.
void enumerate_maximal_independent_sets(const Graph& g,
                                        const std::function<void(const NodeSet&)>& visit,
                                        std::size_t limit = kDefaultOracleLimit);

std::vector<NodeSet> maximal_independent_sets(const Graph& g,
                                              std::size_t limit = kDefaultOracleLimit);

/// i(G) and beta0(G). Both are 0 for the empty graph.
struct ExactBounds {
  std::size_t i = 0;
  std::size_t beta0 = 0;
};

ExactBounds exact_bounds(const Graph& g, std::size_t limit = kDefaultOracleLimit);

/// beta0(g) / |x| <= (Delta + 2) / 3. Throws DomainError unless `x` is a
/// maximal independent set.
bool approximation_ratio_check(const Graph& g, const NodeSet& x,
                               std::size_t limit = kDefaultOracleLimit);

}  // namespace selfstab

#endif  // SELFSTAB_ORACLE_HPP_
