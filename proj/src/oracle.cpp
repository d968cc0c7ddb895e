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

#include "selfstab/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>

#include "selfstab/verifier.hpp"

namespace selfstab {

namespace {

using Mask = std::uint32_t;

class MisEnumerator {
 public:
  MisEnumerator(const Graph& g, const std::function<void(const NodeSet&)>& visit)
      : g_(g), visit_(visit), neighbors_(g.order(), 0) {
    for (Graph::Slot s = 0; s < g.order(); ++s)
      for (Graph::Slot t : g.neighbor_slots(s)) neighbors_[s] |= Mask{1} << t;
    all_ = g.order() == 32 ? ~Mask{0} : (Mask{1} << g.order()) - 1;
  }

  void run() { branch(0, 0); }

 private:
  // Every excluded node still needs an included or undecided neighbour.
  bool feasible(Mask in, Mask out) const {
    const Mask open = in | (all_ & ~(in | out));
    for (Mask rest = out; rest != 0; rest &= rest - 1) {
      const int s = std::countr_zero(rest);
      if ((neighbors_[s] & open) == 0) return false;
    }
    return true;
  }

  void branch(Mask in, Mask out) {
    const Mask undecided = all_ & ~(in | out);
    if (undecided == 0) {
      emit(in);
      return;
    }
    const int v = std::countr_zero(undecided);
    const Mask bit = Mask{1} << v;

    const Mask in_with = in | bit;
    const Mask out_with = out | (neighbors_[v] & undecided);
    if (feasible(in_with, out_with)) branch(in_with, out_with);

    if (feasible(in, out | bit)) branch(in, out | bit);
  }

  void emit(Mask in) const {
    std::vector<NodeId> ids;
    for (Mask rest = in; rest != 0; rest &= rest - 1)
      ids.push_back(g_.id_at(static_cast<Graph::Slot>(std::countr_zero(rest))));
    visit_(NodeSet(std::move(ids)));
  }

  const Graph& g_;
  const std::function<void(const NodeSet&)>& visit_;
  std::vector<Mask> neighbors_;
  Mask all_ = 0;
};

}  // namespace

void enumerate_maximal_independent_sets(const Graph& g,
                                        const std::function<void(const NodeSet&)>& visit,
                                        std::size_t limit) {
  if (g.order() > limit || g.order() > 32)
    throw DomainError("graph of order " + std::to_string(g.order()) +
                      " exceeds the enumeration limit " + std::to_string(std::min<std::size_t>(limit, 32)));
  MisEnumerator(g, visit).run();
}

std::vector<NodeSet> maximal_independent_sets(const Graph& g, std::size_t limit) {
  std::vector<NodeSet> out;
  enumerate_maximal_independent_sets(g, [&](const NodeSet& s) { out.push_back(s); }, limit);
  return out;
}

ExactBounds exact_bounds(const Graph& g, std::size_t limit) {
  ExactBounds b{std::numeric_limits<std::size_t>::max(), 0};
  enumerate_maximal_independent_sets(
      g,
      [&](const NodeSet& s) {
        b.i = std::min(b.i, s.size());
        b.beta0 = std::max(b.beta0, s.size());
      },
      limit);
  return b;
}

bool approximation_ratio_check(const Graph& g, const NodeSet& x, std::size_t limit) {
  if (!is_maximal_independent(g, x).ok()) throw DomainError("set is not a maximal independent set");
  const ExactBounds b = exact_bounds(g, limit);
  return 3 * b.beta0 <= (g.max_degree() + 2) * x.size();
}

}  // namespace selfstab
