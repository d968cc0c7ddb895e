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

// bench: experiment driver over the selfstab C API.
//
//   bench run      --algo C1,C2b0 --class tree --n 100 --trials 200 --seed 1
//   bench scaling  --algo C4b0,C4i --class tree --orders 250,500,1000,2000
//   bench verify   --graph g.txt --algo D2b0 --seed 7
//   bench gen      --class unitdisk --n 50 --seed 3 --out g.txt
//
// Exit status: 0 on success, 1 when a run fails verification or exceeds a
// proven move bound, 2 on usage or input errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "selfstab/selfstab.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct StringDeleter {
  void operator()(char* s) const { ss_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

struct GraphDeleter {
  void operator()(ss_graph* g) const { ss_graph_free(g); }
};
struct TraceDeleter {
  void operator()(ss_trace* t) const { ss_trace_free(t); }
};
struct ResultsDeleter {
  void operator()(ss_results* r) const { ss_results_free(r); }
};

int report(ss_status status) {
  std::cerr << "bench: " << ss_status_name(status) << ": " << ss_last_error() << "\n";
  return status == SS_ERR_VERIFICATION ? kExitFailure : kExitUsage;
}

bool write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return static_cast<bool>(std::cout);
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) std::cerr << "bench: cannot write " << path << "\n";
  return static_cast<bool>(out);
}

struct CommonOptions {
  std::vector<std::string> algorithms;
  std::string graph_class = "tree";
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  double p = 0;
  double r = 0;
  std::uint64_t move_cap = 0;
  std::string format = "csv";
  std::string out;
  unsigned threads = 0;
  bool no_wait_init = false;
  bool full_scale = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--algo", o.algorithms, "Algorithms (C1, C2b0, C2i, ..., D5) or 'all'")
      ->delimiter(',');
  cmd->add_option("--class", o.graph_class, "Graph class")
      ->check(CLI::IsMember({"tree", "bipartite", "unitdisk", "unit-disk", "connected"}));
  cmd->add_option("--trials", o.trials, "Graphs per order")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "Base seed");
  cmd->add_option("--p", o.p, "Edge probability (bipartite, connected)")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--r", o.r, "Unit disk radius")->check(CLI::Range(0.0, 1.4142135623730951));
  cmd->add_option("--move-cap", o.move_cap, "Per-run move cap (default 10*max(D,1)*n)");
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.out, "Output file (default stdout)");
  cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  cmd->add_flag("--no-wait-init", o.no_wait_init,
                "Draw distributed initial states without the wait state");
}

ss_graph_class parse_class(const std::string& name) {
  if (name == "bipartite") return SS_GRAPH_BIPARTITE;
  if (name == "unitdisk" || name == "unit-disk") return SS_GRAPH_UNIT_DISK;
  if (name == "connected") return SS_GRAPH_CONNECTED;
  return SS_GRAPH_TREE;
}

// Returns false (after printing) on an unknown name.
bool resolve_algorithms(const std::vector<std::string>& names, std::vector<ss_algorithm>& out) {
  for (const std::string& name : names) {
    if (name == "all") {
      for (std::size_t k = 0; k < ss_algorithm_count(); ++k)
        out.push_back(static_cast<ss_algorithm>(k));
      continue;
    }
    ss_algorithm id = 0;
    if (ss_status s = ss_algorithm_parse(name.c_str(), &id); s != SS_OK) {
      report(s);
      return false;
    }
    out.push_back(id);
  }
  return true;
}

ss_experiment_spec make_spec(const CommonOptions& o, const std::vector<ss_algorithm>& algos,
                             const std::vector<std::size_t>& orders) {
  ss_experiment_spec spec = ss_experiment_spec_default();
  spec.algorithms = algos.data();
  spec.algorithm_count = algos.size();
  spec.graph_class = parse_class(o.graph_class);
  spec.orders = orders.data();
  spec.order_count = orders.size();
  spec.trials = o.trials;
  spec.seed = o.seed;
  spec.p = o.p;
  spec.r = o.r;
  spec.move_cap = o.move_cap;
  spec.init_domain = o.no_wait_init ? SS_INIT_NO_WAIT : SS_INIT_FULL;
  spec.threads = o.threads;
  return spec;
}

ss_format format_of(const CommonOptions& o) { return o.format == "json" ? SS_FORMAT_JSON : SS_FORMAT_CSV; }

int cmd_run(CommonOptions& o, std::vector<std::size_t> orders) {
  if (o.full_scale) {
    o.trials = 5000;
    orders = {500};
  }
  if (o.algorithms.empty()) o.algorithms = {"all"};
  std::vector<ss_algorithm> algos;
  if (!resolve_algorithms(o.algorithms, algos)) return kExitUsage;
  const ss_experiment_spec spec = make_spec(o, algos, orders);

  ss_results* raw = nullptr;
  if (ss_status s = ss_experiment_run(&spec, &raw); s != SS_OK) return report(s);
  std::unique_ptr<ss_results, ResultsDeleter> results(raw);
  char* text = nullptr;
  if (ss_status s = ss_results_emit(results.get(), format_of(o), &text); s != SS_OK)
    return report(s);
  CString owned(text);
  if (!write_output(owned.get(), o.out)) return kExitUsage;
  if (const auto violations = ss_results_bound_violations(results.get()); violations != 0) {
    std::cerr << "bench: " << violations << " run(s) exceeded a proven move bound\n";
    return kExitFailure;
  }
  return 0;
}

int cmd_scaling(CommonOptions& o, const std::vector<std::size_t>& orders) {
  if (o.algorithms.empty()) o.algorithms = {"C4b0", "C4i", "D4b0", "D4i"};
  std::vector<ss_algorithm> algos;
  if (!resolve_algorithms(o.algorithms, algos)) return kExitUsage;
  const ss_experiment_spec spec = make_spec(o, algos, orders);
  char* text = nullptr;
  if (ss_status s = ss_scaling_run(&spec, format_of(o), &text); s != SS_OK) return report(s);
  CString owned(text);
  return write_output(owned.get(), o.out) ? 0 : kExitUsage;
}

struct VerifyOptions {
  std::string graph;
  std::string algorithm;
  std::uint64_t seed = 1;
  std::string init;
  std::uint64_t move_cap = 0;
  bool no_wait_init = false;
  bool with_trace = false;
  std::string out;
};

int cmd_verify(const VerifyOptions& o) {
  ss_graph* graw = nullptr;
  if (ss_status s = ss_graph_load(o.graph.c_str(), &graw); s != SS_OK) return report(s);
  std::unique_ptr<ss_graph, GraphDeleter> graph(graw);
  ss_algorithm algo = 0;
  if (ss_status s = ss_algorithm_parse(o.algorithm.c_str(), &algo); s != SS_OK) return report(s);

  ss_trace* traw = nullptr;
  ss_status s = o.init.empty()
                    ? ss_run(graph.get(), algo, o.seed, o.move_cap,
                             o.no_wait_init ? SS_INIT_NO_WAIT : SS_INIT_FULL, &traw)
                    : ss_run_from_states(graph.get(), algo, o.init.c_str(), o.seed, o.move_cap, &traw);
  if (s != SS_OK) return report(s);
  std::unique_ptr<ss_trace, TraceDeleter> trace(traw);

  int ok = 0;
  char* verdict = nullptr;
  if (ss_status vs = ss_trace_verify(trace.get(), &ok, &verdict); vs != SS_OK) return report(vs);
  CString verdict_text(verdict);
  std::string text = verdict_text.get();
  if (o.with_trace) {
    char* tj = nullptr;
    if (ss_status ts = ss_trace_to_json(trace.get(), &tj); ts != SS_OK) return report(ts);
    CString trace_text(tj);
    text = "{\n\"verdict\": " + text + ",\n\"trace\": " + trace_text.get() + "\n}";
  }
  if (!write_output(text + "\n", o.out)) return kExitUsage;
  return ok ? 0 : kExitFailure;
}

struct GenOptions {
  std::string graph_class = "tree";
  std::size_t n = 100;
  double param = 0;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_gen(const GenOptions& o) {
  ss_graph* raw = nullptr;
  if (ss_status s = ss_graph_generate(parse_class(o.graph_class), o.n, o.param, o.seed, &raw);
      s != SS_OK)
    return report(s);
  std::unique_ptr<ss_graph, GraphDeleter> graph(raw);
  char* text = nullptr;
  if (ss_status s = ss_graph_write_edge_list(graph.get(), &text); s != SS_OK) return report(s);
  CString owned(text);
  return write_output(owned.get(), o.out) ? 0 : kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-stabilizing MIS algorithm simulator"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  std::vector<std::size_t> run_orders{100};
  auto* run = app.add_subcommand("run", "Aggregate set sizes and move counts over random graphs");
  add_common(run, run_opts);
  run->add_option("--n", run_orders, "Graph order(s)")->delimiter(',');
  run->add_flag("--full-scale", run_opts.full_scale, "5000 graphs of order 500 per class");

  CommonOptions scaling_opts;
  scaling_opts.trials = 100;
  std::vector<std::size_t> scaling_orders{250, 500, 1000, 2000};
  auto* scaling = app.add_subcommand("scaling", "Mean moves against graph order");
  add_common(scaling, scaling_opts);
  scaling->add_option("--orders", scaling_orders, "Ascending graph orders")->delimiter(',');

  VerifyOptions verify_opts;
  auto* verify = app.add_subcommand("verify", "One traced run on an edge-list graph, with verdicts");
  verify->add_option("--graph", verify_opts.graph, "Edge-list file")->required();
  verify->add_option("--algo", verify_opts.algorithm, "Algorithm")->required();
  verify->add_option("--seed", verify_opts.seed, "Seed");
  verify->add_option("--init", verify_opts.init, "Initial states, one of 0123W per node");
  verify->add_option("--move-cap", verify_opts.move_cap, "Move cap");
  verify->add_flag("--no-wait-init", verify_opts.no_wait_init, "No wait state in the initial draw");
  verify->add_flag("--trace", verify_opts.with_trace, "Include the full trace");
  verify->add_option("--out", verify_opts.out, "Output file (default stdout)");

  GenOptions gen_opts;
  auto* gen = app.add_subcommand("gen", "Write one generated graph as an edge list");
  gen->add_option("--class", gen_opts.graph_class, "Graph class")
      ->check(CLI::IsMember({"tree", "bipartite", "unitdisk", "unit-disk", "connected"}));
  gen->add_option("--n", gen_opts.n, "Order")->check(CLI::PositiveNumber);
  gen->add_option("--param", gen_opts.param, "p, or r for unit disk (default per class)");
  gen->add_option("--seed", gen_opts.seed, "Seed");
  gen->add_option("--out", gen_opts.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (*run) return cmd_run(run_opts, run_orders);
  if (*scaling) return cmd_scaling(scaling_opts, scaling_orders);
  if (*verify) return cmd_verify(verify_opts);
  if (*gen) return cmd_gen(gen_opts);
  return kExitUsage;
}
