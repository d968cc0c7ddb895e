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

#include "selfstab/rules.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

namespace selfstab {

namespace {

using S = NodeState;

// ---------------------------------------------------------------------------
// Neighbourhood predicates. Every guard below is a conjunction of these, so
// nothing outside N[i] is ever read.

template <class Pred>
bool any_neighbor(const GuardContext& c, Pred pred) {
  for (Graph::Slot j : c.graph.neighbor_slots(c.node))
    if (pred(j)) return true;
  return false;
}

bool in_set(const GuardContext& c, Graph::Slot j) { return c.config[j] == S::k1; }

bool neighbor_in_set(const GuardContext& c) {
  return any_neighbor(c, [&](Graph::Slot j) { return in_set(c, j); });
}

// deg(i) >= deg(j) for the beta0 tables, deg(i) <= deg(j) for the i tables.
bool yields_to(const GuardContext& c, Graph::Slot j) {
  const auto di = c.graph.degree_at(c.node);
  const auto dj = c.graph.degree_at(j);
  return c.variant == Variant::kI ? di <= dj : di >= dj;
}

bool yields_to_set_neighbor(const GuardContext& c) {
  return any_neighbor(c, [&](Graph::Slot j) { return in_set(c, j) && yields_to(c, j); });
}

// No neighbour j with the degree comparison holding: the "very weak" test.
bool very_weak(const GuardContext& c) {
  return !any_neighbor(c, [&](Graph::Slot j) { return yields_to(c, j); });
}

// (forall k in N(i)) x(k) != w or id(k) > id(i), resp. >= when `inclusive`.
template <bool inclusive>
bool wins_wait_tie(const GuardContext& c) {
  const NodeId me = c.graph.id_at(c.node);
  return !any_neighbor(c, [&](Graph::Slot k) {
    if (c.config[k] != S::kWait) return false;
    const NodeId other = c.graph.id_at(k);
    return inclusive ? !(other >= me) : !(other > me);
  });
}

NodeState to_zero(const GuardContext&) { return S::k0; }
NodeState to_one(const GuardContext&) { return S::k1; }
NodeState to_three(const GuardContext&) { return S::k3; }
NodeState to_wait(const GuardContext&) { return S::kWait; }
NodeState to_color(const GuardContext& c) { return color(c.graph, c.config, c.node); }

// ---------------------------------------------------------------------------
// Shared rules.

bool rin_basic(const GuardContext& c) { return c.self() == S::k0 && !neighbor_in_set(c); }
bool rout_basic(const GuardContext& c) { return c.self() == S::k1 && neighbor_in_set(c); }
bool rout_degree(const GuardContext& c) { return c.self() == S::k1 && yields_to_set_neighbor(c); }

bool rwait_basic(const GuardContext& c) { return c.self() == S::k0 && !neighbor_in_set(c); }
bool rback_basic(const GuardContext& c) { return c.self() == S::kWait && neighbor_in_set(c); }

template <bool inclusive>
bool rin_wait(const GuardContext& c) {
  return c.self() == S::kWait && !neighbor_in_set(c) && wins_wait_tie<inclusive>(c);
}

constexpr Rule kC1[] = {
    {RuleName::kRIn, rin_basic, to_one},
    {RuleName::kROut, rout_basic, to_zero},
};

constexpr Rule kC2[] = {
    {RuleName::kRIn, rin_basic, to_one},
    {RuleName::kROut, rout_degree, to_zero},
};

constexpr Rule kC3[] = {
    {RuleName::kRIn, rin_basic, to_one},
    {RuleName::kRInVW, [](const GuardContext& c) { return c.self() == S::k0 && very_weak(c); },
     to_one},
    {RuleName::kROut, rout_degree, to_zero},
};

constexpr Rule kC4[] = {
    {RuleName::kRIn,
     [](const GuardContext& c) { return c.self() == S::k0 && !yields_to_set_neighbor(c); },
     to_one},
    {RuleName::kROut, rout_degree, to_zero},
};

constexpr Rule kC5[] = {
    {RuleName::kRecolor, [](const GuardContext& c) { return c.self() != to_color(c); }, to_color},
};

constexpr Rule kD1[] = {
    {RuleName::kRWait, rwait_basic, to_wait},
    {RuleName::kRBack, rback_basic, to_zero},
    {RuleName::kRIn, rin_wait<false>, to_one},
    {RuleName::kROut, rout_basic, to_zero},
};

constexpr Rule kD2[] = {
    {RuleName::kRWait, rwait_basic, to_wait},
    {RuleName::kRBack, rback_basic, to_zero},
    {RuleName::kRIn, rin_wait<true>, to_one},
    {RuleName::kROut, rout_degree, to_zero},
};

// The second disjunct of RWait and the second conjunct of RBack test the
// degree comparison against all neighbours, as listed.
constexpr Rule kD3[] = {
    {RuleName::kRWait,
     [](const GuardContext& c) {
       return c.self() == S::k0 && (!neighbor_in_set(c) || very_weak(c));
     },
     to_wait},
    {RuleName::kRBack,
     [](const GuardContext& c) {
       return c.self() == S::kWait && neighbor_in_set(c) && !very_weak(c);
     },
     to_zero},
    {RuleName::kRIn, rin_wait<true>, to_one},
    {RuleName::kRInVW, [](const GuardContext& c) { return c.self() == S::kWait && very_weak(c); },
     to_one},
    {RuleName::kROut, rout_degree, to_zero},
};

constexpr Rule kD4[] = {
    {RuleName::kRWait,
     [](const GuardContext& c) {
       return c.self() == S::k0 && (!neighbor_in_set(c) || !yields_to_set_neighbor(c));
     },
     to_wait},
    {RuleName::kRBack,
     [](const GuardContext& c) {
       return c.self() == S::kWait && neighbor_in_set(c) && yields_to_set_neighbor(c);
     },
     to_zero},
    {RuleName::kRIn,
     [](const GuardContext& c) { return c.self() == S::kWait && !yields_to_set_neighbor(c); },
     to_one},
    {RuleName::kROut, rout_degree, to_zero},
};

constexpr Rule kD5[] = {
    {RuleName::kRWait, [](const GuardContext& c) { return c.self() == S::k3 && to_color(c) != S::k3; },
     to_wait},
    {RuleName::kRBack,
     [](const GuardContext& c) { return c.self() == S::kWait && to_color(c) == S::k3; }, to_three},
    {RuleName::kRIn,
     [](const GuardContext& c) {
       return c.self() == S::kWait && to_color(c) != S::k3 &&
              !smaller_waiting_neighbor(c.graph, c.config, c.node);
     },
     to_color},
    {RuleName::kROut,
     [](const GuardContext& c) {
       return (c.self() == S::k1 || c.self() == S::k2) && c.self() != to_color(c);
     },
     to_three},
};

constexpr NodeState kBinary[] = {S::k0, S::k1};
constexpr NodeState kBinaryWait[] = {S::k0, S::k1, S::kWait};
constexpr NodeState kColors[] = {S::k1, S::k2, S::k3};
constexpr NodeState kColorsWait[] = {S::k1, S::k2, S::k3, S::kWait};

const std::array<AlgorithmId, 16> kAllAlgorithms = {
    AlgorithmId(Family::C1),
    AlgorithmId(Family::C2, Variant::kBeta0),
    AlgorithmId(Family::C2, Variant::kI),
    AlgorithmId(Family::C3, Variant::kBeta0),
    AlgorithmId(Family::C3, Variant::kI),
    AlgorithmId(Family::C4, Variant::kBeta0),
    AlgorithmId(Family::C4, Variant::kI),
    AlgorithmId(Family::C5),
    AlgorithmId(Family::D1),
    AlgorithmId(Family::D2, Variant::kBeta0),
    AlgorithmId(Family::D2, Variant::kI),
    AlgorithmId(Family::D3, Variant::kBeta0),
    AlgorithmId(Family::D3, Variant::kI),
    AlgorithmId(Family::D4, Variant::kBeta0),
    AlgorithmId(Family::D4, Variant::kI),
    AlgorithmId(Family::D5),
};

}  // namespace

char to_char(NodeState s) {
  switch (s) {
    case S::k0: return '0';
    case S::k1: return '1';
    case S::k2: return '2';
    case S::k3: return '3';
    case S::kWait: return 'W';
  }
  return '?';
}

bool is_distributed(Family f) { return f >= Family::D1; }

bool has_variants(Family f) {
  switch (f) {
    case Family::C1:
    case Family::C5:
    case Family::D1:
    case Family::D5: return false;
    default: return true;
  }
}

bool is_coloring(Family f) { return f == Family::C5 || f == Family::D5; }

AlgorithmId::AlgorithmId(Family family, Variant variant) : family_(family), variant_(variant) {
  if (has_variants(family) == (variant == Variant::kNone))
    throw DomainError(has_variants(family) ? "algorithm needs a b0 or i variant"
                                           : "algorithm takes no variant");
}

std::string AlgorithmId::name() const {
  static constexpr const char* kFamilies[] = {"C1", "C2", "C3", "C4", "C5",
                                              "D1", "D2", "D3", "D4", "D5"};
  std::string out = kFamilies[static_cast<int>(family_)];
  if (variant_ == Variant::kBeta0) out += "b0";
  if (variant_ == Variant::kI) out += "i";
  return out;
}

AlgorithmId AlgorithmId::baseline() const {
  return AlgorithmId(distributed() ? Family::D1 : Family::C1);
}

AlgorithmId parse_algorithm(std::string_view name) {
  std::string s;
  for (char ch : name)
    if (ch != '_' && ch != '-') s += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (s.size() < 2 || (s[0] != 'c' && s[0] != 'd') || s[1] < '1' || s[1] > '5')
    throw DomainError("unknown algorithm '" + std::string(name) + "'");
  const int index = (s[0] == 'd' ? 5 : 0) + (s[1] - '1');
  const auto family = static_cast<Family>(index);
  const std::string suffix = s.substr(2);
  Variant variant;
  if (suffix.empty())
    variant = Variant::kNone;
  else if (suffix == "b0" || suffix == "beta0")
    variant = Variant::kBeta0;
  else if (suffix == "i")
    variant = Variant::kI;
  else
    throw DomainError("unknown algorithm '" + std::string(name) + "'");
  try {
    return AlgorithmId(family, variant);
  } catch (const DomainError& e) {
    throw DomainError("algorithm '" + std::string(name) + "': " + e.what());
  }
}

std::span<const AlgorithmId> all_algorithms() { return kAllAlgorithms; }

std::string_view to_string(RuleName r) {
  switch (r) {
    case RuleName::kRIn: return "RIn";
    case RuleName::kROut: return "ROut";
    case RuleName::kRInVW: return "RInVW";
    case RuleName::kRWait: return "RWait";
    case RuleName::kRBack: return "RBack";
    case RuleName::kRecolor: return "Re-color";
  }
  return "?";
}

std::span<const Rule> rule_table(Family family) {
  switch (family) {
    case Family::C1: return kC1;
    case Family::C2: return kC2;
    case Family::C3: return kC3;
    case Family::C4: return kC4;
    case Family::C5: return kC5;
    case Family::D1: return kD1;
    case Family::D2: return kD2;
    case Family::D3: return kD3;
    case Family::D4: return kD4;
    case Family::D5: return kD5;
  }
  return {};
}

std::span<const NodeState> state_domain(Family family) {
  if (is_coloring(family)) return is_distributed(family) ? std::span<const NodeState>(kColorsWait)
                                                          : std::span<const NodeState>(kColors);
  return is_distributed(family) ? std::span<const NodeState>(kBinaryWait)
                                : std::span<const NodeState>(kBinary);
}

bool is_legal(Family family, const Configuration& config) {
  auto domain = state_domain(family);
  return std::all_of(config.begin(), config.end(), [&](NodeState s) {
    return std::find(domain.begin(), domain.end(), s) != domain.end();
  });
}

std::size_t RuleSet::size() const { return static_cast<std::size_t>(std::popcount(bits_)); }

std::vector<RuleName> RuleSet::names() const {
  std::vector<RuleName> out;
  for (std::size_t r = 0; r < kRuleCount; ++r)
    if (contains(static_cast<RuleName>(r))) out.push_back(static_cast<RuleName>(r));
  return out;
}

RuleSet eligible_rules(const AlgorithmId& algo, const Graph& g, const Configuration& config,
                       Graph::Slot v) {
  const GuardContext ctx{g, config, v, algo.variant()};
  RuleSet out;
  for (const Rule& rule : rule_table(algo.family()))
    if (rule.guard(ctx)) out.insert(rule.name);
  return out;
}

const Rule* first_eligible_rule(const AlgorithmId& algo, const Graph& g,
                                const Configuration& config, Graph::Slot v) {
  const GuardContext ctx{g, config, v, algo.variant()};
  for (const Rule& rule : rule_table(algo.family()))
    if (rule.guard(ctx)) return &rule;
  return nullptr;
}

NodeState color(const Graph& g, const Configuration& config, Graph::Slot v) {
  bool used1 = false, used2 = false;
  for (Graph::Slot j : g.neighbor_slots(v)) {
    used1 |= config[j] == S::k1;
    used2 |= config[j] == S::k2;
  }
  if (!used1) return S::k1;
  if (!used2) return S::k2;
  return S::k3;
}

bool smaller_waiting_neighbor(const Graph& g, const Configuration& config, Graph::Slot v) {
  const NodeId me = g.id_at(v);
  for (Graph::Slot j : g.neighbor_slots(v))
    if (config[j] == S::kWait && g.id_at(j) < me) return true;
  return false;
}

}  // namespace selfstab
