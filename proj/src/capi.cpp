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

#include "selfstab/selfstab.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "selfstab/engine.hpp"
#include "selfstab/experiment.hpp"
#include "selfstab/generators.hpp"
#include "selfstab/graph.hpp"
#include "selfstab/rules.hpp"
#include "selfstab/verifier.hpp"

struct ss_graph {
  std::shared_ptr<const selfstab::Graph> graph;
};

struct ss_trace {
  std::shared_ptr<const selfstab::Graph> graph;
  selfstab::AlgorithmId algo;
  selfstab::Trace trace;
};

struct ss_results {
  selfstab::ResultsTable table;
};

namespace {

using namespace selfstab;

thread_local std::string g_last_error;

ss_status fail(ss_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Maps exceptions escaping `body` onto status codes.
template <class Fn>
ss_status guarded(Fn&& body) noexcept {
  try {
    g_last_error.clear();
    return body();
  } catch (const VerificationFailure& e) {
    return fail(SS_ERR_VERIFICATION, std::string(e.what()) + "\n" + e.detail().dump(2));
  } catch (const ParseError& e) {
    return fail(SS_ERR_PARSE, e.what());
  } catch (const DomainError& e) {
    return fail(SS_ERR_DOMAIN, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SS_ERR_INTERNAL, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

bool valid_algorithm(ss_algorithm algo) {
  return algo >= 0 && static_cast<std::size_t>(algo) < all_algorithms().size();
}

const AlgorithmId& algorithm_at(ss_algorithm algo) {
  return all_algorithms()[static_cast<std::size_t>(algo)];
}

bool valid_class(ss_graph_class c) { return c >= SS_GRAPH_TREE && c <= SS_GRAPH_CONNECTED; }

GraphClass to_class(ss_graph_class c) { return static_cast<GraphClass>(c); }

ExperimentSpec to_spec(const ss_experiment_spec& in) {
  if (in.algorithm_count != 0 && in.algorithms == nullptr)
    throw DomainError("algorithms is null");
  if (in.order_count != 0 && in.orders == nullptr) throw DomainError("orders is null");
  if (!valid_class(in.graph_class)) throw DomainError("unknown graph class");
  ExperimentSpec spec;
  spec.algorithms.clear();
  for (std::size_t k = 0; k < in.algorithm_count; ++k) {
    if (!valid_algorithm(in.algorithms[k])) throw DomainError("unknown algorithm id");
    spec.algorithms.push_back(algorithm_at(in.algorithms[k]));
  }
  spec.graph_class = to_class(in.graph_class);
  spec.orders.assign(in.orders, in.orders + in.order_count);
  spec.trials = in.trials;
  spec.seed = in.seed;
  if (in.p > 0) spec.p = in.p;
  if (in.r > 0) spec.r = in.r;
  if (in.move_cap > 0) spec.move_cap = in.move_cap;
  spec.init_domain = in.init_domain == SS_INIT_NO_WAIT ? InitDomain::kNoWait : InitDomain::kFull;
  spec.threads = in.threads;
  return spec;
}

ss_status make_trace(const ss_graph* g, ss_algorithm algo, Configuration init, std::uint64_t seed,
                     std::uint64_t move_cap, ss_trace** out) {
  const AlgorithmId& id = algorithm_at(algo);
  const std::uint64_t cap = move_cap ? move_cap : default_move_cap(*g->graph);
  auto t = std::make_unique<ss_trace>(
      ss_trace{g->graph, id, run(id, *g->graph, std::move(init), trial_scheduler_seed(seed), cap)});
  *out = t.release();
  return SS_OK;
}

}  // namespace

extern "C" {

SS_API const char* ss_last_error(void) { return g_last_error.c_str(); }

SS_API const char* ss_status_name(ss_status status) {
  switch (status) {
    case SS_OK: return "ok";
    case SS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SS_ERR_DOMAIN: return "domain error";
    case SS_ERR_PARSE: return "parse error";
    case SS_ERR_IO: return "i/o error";
    case SS_ERR_VERIFICATION: return "verification failure";
    case SS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

SS_API void ss_string_free(char* s) { std::free(s); }

SS_API size_t ss_algorithm_count(void) { return all_algorithms().size(); }

SS_API ss_status ss_algorithm_parse(const char* name, ss_algorithm* out) {
  if (!name || !out) return fail(SS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const AlgorithmId id = parse_algorithm(name);
    const auto all = all_algorithms();
    *out = static_cast<ss_algorithm>(std::find(all.begin(), all.end(), id) - all.begin());
    return SS_OK;
  });
}

SS_API const char* ss_algorithm_name(ss_algorithm algo) {
  static const auto names = [] {
    std::vector<std::string> out;
    for (const AlgorithmId& a : all_algorithms()) out.push_back(a.name());
    return out;
  }();
  return valid_algorithm(algo) ? names[static_cast<std::size_t>(algo)].c_str() : nullptr;
}

SS_API ss_status ss_graph_read_edge_list(const char* text, ss_graph** out) {
  if (!text || !out) return fail(SS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new ss_graph{std::make_shared<const Graph>(read_edge_list(text))};
    return SS_OK;
  });
}

SS_API ss_status ss_graph_load(const char* path, ss_graph** out) {
  if (!path || !out) return fail(SS_ERR_INVALID_ARGUMENT, "null argument");
  std::ifstream in(path, std::ios::binary);
  if (!in) return fail(SS_ERR_IO, std::string("cannot open ") + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return guarded([&] {
    *out = new ss_graph{std::make_shared<const Graph>(read_edge_list(buf.str()))};
    return SS_OK;
  });
}

SS_API ss_status ss_graph_write_edge_list(const ss_graph* g, char** out) {
  if (!g || !out) return fail(SS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = copy_string(write_edge_list(*g->graph));
    return SS_OK;
  });
}

SS_API ss_status ss_graph_generate(ss_graph_class cls, size_t n, double param, uint64_t seed,
                                   ss_graph** out) {
  if (!out) return fail(SS_ERR_INVALID_ARGUMENT, "null argument");
  if (!valid_class(cls)) return fail(SS_ERR_INVALID_ARGUMENT, "unknown graph class");
  return guarded([&] {
    GenSpec spec{to_class(cls), n, std::nullopt, std::nullopt, seed};
    if (param > 0) (cls == SS_GRAPH_UNIT_DISK ? spec.r : spec.p) = param;
    *out = new ss_graph{std::make_shared<const Graph>(generate(spec))};
    return SS_OK;
  });
}

SS_API void ss_graph_free(ss_graph* g) { delete g; }

SS_API size_t ss_graph_order(const ss_graph* g) { return g ? g->graph->order() : 0; }
SS_API size_t ss_graph_size(const ss_graph* g) { return g ? g->graph->size() : 0; }
SS_API size_t ss_graph_max_degree(const ss_graph* g) { return g ? g->graph->max_degree() : 0; }

SS_API ss_status ss_graph_degree(const ss_graph* g, uint32_t node, size_t* out) {
  if (!g || !out) return fail(SS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = g->graph->degree(NodeId(node));
    return SS_OK;
  });
}

SS_API int ss_graph_is_connected(const ss_graph* g) { return g && is_connected(*g->graph) ? 1 : 0; }

SS_API ss_status ss_run(const ss_graph* g, ss_algorithm algo, uint64_t seed, uint64_t move_cap,
                        ss_init_domain domain, ss_trace** out) {
  if (!g || !out) return fail(SS_ERR_INVALID_ARGUMENT, "null argument");
  if (!valid_algorithm(algo)) return fail(SS_ERR_INVALID_ARGUMENT, "unknown algorithm id");
  return guarded([&] {
    const AlgorithmId& id = algorithm_at(algo);
    const InitDomain d = domain == SS_INIT_NO_WAIT ? InitDomain::kNoWait : InitDomain::kFull;
    Configuration init = random_initial(id, *g->graph, trial_initial_seed(seed, id, d), d);
    return make_trace(g, algo, std::move(init), seed, move_cap, out);
  });
}

SS_API ss_status ss_run_from_states(const ss_graph* g, ss_algorithm algo, const char* states,
                                    uint64_t seed, uint64_t move_cap, ss_trace** out) {
  if (!g || !states || !out) return fail(SS_ERR_INVALID_ARGUMENT, "null argument");
  if (!valid_algorithm(algo)) return fail(SS_ERR_INVALID_ARGUMENT, "unknown algorithm id");
  return guarded([&] {
    const std::string_view text(states);
    if (text.size() != g->graph->order())
      throw DomainError("expected " + std::to_string(g->graph->order()) + " states, got " +
                        std::to_string(text.size()));
    Configuration init;
    for (char ch : text) {
      switch (ch) {
        case '0': init.push_back(NodeState::k0); break;
        case '1': init.push_back(NodeState::k1); break;
        case '2': init.push_back(NodeState::k2); break;
        case '3': init.push_back(NodeState::k3); break;
        case 'W':
        case 'w': init.push_back(NodeState::kWait); break;
        default: throw DomainError(std::string("unknown state '") + ch + "'");
      }
    }
    return make_trace(g, algo, std::move(init), seed, move_cap, out);
  });
}

SS_API void ss_trace_free(ss_trace* t) { delete t; }

SS_API int ss_trace_stabilized(const ss_trace* t) { return t && t->trace.stabilized ? 1 : 0; }
SS_API uint64_t ss_trace_total_moves(const ss_trace* t) { return t ? t->trace.total_moves : 0; }
SS_API size_t ss_trace_step_count(const ss_trace* t) { return t ? t->trace.steps.size() : 0; }

SS_API ss_status ss_trace_set_size(const ss_trace* t, size_t* out) {
  if (!t || !out) return fail(SS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = extract_sets(t->algo, *t->graph, t->trace).x.size();
    return SS_OK;
  });
}

SS_API ss_status ss_trace_to_json(const ss_trace* t, char** out) {
  if (!t || !out) return fail(SS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    nlohmann::json j = to_json(t->trace, *t->graph);
    j["algorithm"] = t->algo.name();
    *out = copy_string(j.dump(2));
    return SS_OK;
  });
}

SS_API ss_status ss_trace_verify(const ss_trace* t, int* ok, char** verdict_json) {
  if (!t || !ok || !verdict_json) return fail(SS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const Graph& g = *t->graph;
    const Verdict outcome = verify_outcome(t->algo, g, t->trace);
    const Verdict lemmas = audit_terminal_moves(t->algo, g, t->trace);
    const BoundCheck bound = check_move_bound(t->algo, g.order(), g.max_degree(), t->trace.total_moves);
    nlohmann::json j = {
        {"algorithm", t->algo.name()},
        {"n", g.order()},
        {"max_degree", g.max_degree()},
        {"stabilized", t->trace.stabilized},
        {"total_moves", t->trace.total_moves},
        {"outcome", to_json(outcome)},
        {"lemmas", to_json(lemmas)},
        {"move_bound",
         {{"status", std::string(to_string(bound.status))},
          {"bound", bound.bound ? nlohmann::json(*bound.bound) : nlohmann::json(nullptr)},
          {"proven", bound.proven}}},
    };
    if (t->trace.stabilized) {
      const ExtractedSets sets = extract_sets(t->algo, g, t->trace);
      nlohmann::json x = nlohmann::json::array();
      for (NodeId id : sets.x) x.push_back(id.value);
      j["set"] = std::move(x);
      if (sets.b) {
        nlohmann::json b = nlohmann::json::array();
        for (NodeId id : *sets.b) b.push_back(id.value);
        j["b_set"] = std::move(b);
      }
    }
    const bool bound_ok = !(bound.proven && bound.status == BoundStatus::kExceeded);
    *ok = outcome.ok() && lemmas.ok() && bound_ok ? 1 : 0;
    j["ok"] = *ok == 1;
    *verdict_json = copy_string(j.dump(2));
    return SS_OK;
  });
}

SS_API ss_experiment_spec ss_experiment_spec_default(void) {
  ss_experiment_spec spec{};
  spec.trials = 200;
  spec.seed = 1;
  return spec;
}

SS_API ss_status ss_experiment_run(const ss_experiment_spec* spec, ss_results** out) {
  if (!spec || !out) return fail(SS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto res = std::make_unique<ss_results>(ss_results{run_experiment(to_spec(*spec))});
    *out = res.release();
    return SS_OK;
  });
}

SS_API ss_status ss_results_emit(const ss_results* res, ss_format format, char** out) {
  if (!res || !out) return fail(SS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = copy_string(emit(res->table, format == SS_FORMAT_JSON ? OutputFormat::kJson : OutputFormat::kCsv));
    return SS_OK;
  });
}

SS_API size_t ss_results_row_count(const ss_results* res) { return res ? res->table.rows.size() : 0; }

SS_API uint64_t ss_results_bound_violations(const ss_results* res) {
  if (!res) return 0;
  std::uint64_t total = 0;
  for (const ResultRow& row : res->table.rows) total += row.bound_violations;
  return total;
}

SS_API void ss_results_free(ss_results* res) { delete res; }

SS_API ss_status ss_scaling_run(const ss_experiment_spec* spec, ss_format format, char** out) {
  if (!spec || !out) return fail(SS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto series = emit_scaling_series(to_spec(*spec));
    *out = copy_string(emit(series, format == SS_FORMAT_JSON ? OutputFormat::kJson : OutputFormat::kCsv));
    return SS_OK;
  });
}

}  // extern "C"
