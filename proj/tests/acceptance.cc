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


// Acceptance suite: one PASS/FAIL line per criterion, plus indented detail.
//
//   acceptance [--golden DIR] [--regen-golden] [--only N]
//
// Exit status is the number of failed criteria.

#include <array>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "selfstab/engine.hpp"
#include "selfstab/experiment.hpp"
#include "selfstab/generators.hpp"
#include "selfstab/oracle.hpp"
#include "selfstab/rng.hpp"
#include "selfstab/verifier.hpp"

namespace {

using namespace selfstab;

// ---- pinned parameters ----
constexpr std::size_t kOrder = 100;
constexpr std::size_t kRunsPerClass = 200;        // criteria 1-2
constexpr std::size_t kAuditRuns = 1000;          // criterion 3, per audited algorithm
constexpr std::size_t kOracleGraphs = 500;        // criterion 4
constexpr std::size_t kOracleMaxOrder = 16;
constexpr std::size_t kOrderingTrials = 500;      // criteria 5-6
constexpr double kIndistinguishablePct = 2.0;     // |% diff| bound for C5/C1 and D5/D1
constexpr std::size_t kScalingTrials = 100;       // criterion 7
constexpr double kLinearFitTolerance = 0.10;      // relative deviation from c*n
constexpr double kFlatnessTolerancePp = 3.0;      // percentage points around the mean
constexpr std::uint64_t kSeed = 20260101;

const GraphClass kClasses[] = {GraphClass::kTree, GraphClass::kBipartite, GraphClass::kUnitDisk,
                               GraphClass::kConnected};

AlgorithmId alg(const char* name) { return parse_algorithm(name); }

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

struct Report {
  bool pass = true;
  std::vector<std::string> details;
  void note(std::string s) { details.push_back(std::move(s)); }
  void fail(std::string s) {
    pass = false;
    note("FAILED: " + std::move(s));
  }
};

// One seeded run, exactly as the experiment harness performs it.
struct TrialRun {
  Graph graph;
  Trace trace;
};

TrialRun seeded_run(const AlgorithmId& algo, GraphClass c, std::size_t n, std::size_t trial,
                    std::uint64_t base) {
  const std::uint64_t gs = trial_graph_seed(base, c, n, trial);
  TrialRun out{generate({c, n, std::nullopt, std::nullopt, gs}), {}};
  out.trace = run(algo, out.graph, random_initial(algo, out.graph, trial_initial_seed(gs, algo, InitDomain::kFull)),
                  trial_scheduler_seed(gs), default_move_cap(out.graph));
  return out;
}

// ---- criteria 1 and 2 share one sweep ----
struct Sweep {
  Report stabilization;
  Report bounds;
};

Sweep sweep_all() {
  Sweep s;
  std::size_t runs = 0, unstable = 0, invalid = 0, exceeded = 0;
  std::map<std::string, std::size_t> monitored_excess;
  std::map<std::string, std::uint64_t> max_moves;
  for (GraphClass c : kClasses) {
    for (const AlgorithmId& algo : all_algorithms()) {
      for (std::size_t t = 0; t < kRunsPerClass; ++t) {
        const TrialRun r = seeded_run(algo, c, kOrder, t, kSeed);
        ++runs;
        if (!r.trace.stabilized) {
          ++unstable;
          s.stabilization.fail(fmt("%s %s trial %zu hit the move cap", algo.name().c_str(),
                                   std::string(to_string(c)).c_str(), t));
          continue;
        }
        const Verdict v = verify_outcome(algo, r.graph, r.trace);
        if (!v.ok()) {
          ++invalid;
          s.stabilization.fail(fmt("%s %s trial %zu: %s", algo.name().c_str(),
                                   std::string(to_string(c)).c_str(), t, to_json(v).dump().c_str()));
        }
        const BoundCheck b = check_move_bound(algo, r.graph.order(), r.graph.max_degree(),
                                              r.trace.total_moves);
        auto& mx = max_moves[algo.name()];
        mx = std::max(mx, r.trace.total_moves);
        if (b.status == BoundStatus::kExceeded) {
          if (b.proven) {
            ++exceeded;
            s.bounds.fail(fmt("%s %s trial %zu: %llu moves > %llu", algo.name().c_str(),
                              std::string(to_string(c)).c_str(), t,
                              static_cast<unsigned long long>(r.trace.total_moves),
                              static_cast<unsigned long long>(*b.bound)));
          } else {
            ++monitored_excess[algo.name()];
          }
        }
      }
    }
  }
  s.stabilization.note(fmt("%zu runs (16 algorithms x 4 classes x %zu, n=%zu): %zu unstable, %zu invalid",
                           runs, kRunsPerClass, kOrder, unstable, invalid));
  s.bounds.note(fmt("%zu proven-bound violations", exceeded));
  for (const char* name : {"D3b0", "D3i", "D5"})
    s.bounds.note(fmt("monitored 3*Delta*n ceiling, %s: %zu runs above", name, monitored_excess[name]));
  std::string maxima = "max moves per run:";
  for (const AlgorithmId& a : all_algorithms())
    maxima += fmt(" %s=%llu", a.name().c_str(), static_cast<unsigned long long>(max_moves[a.name()]));
  s.bounds.note(maxima);
  return s;
}

// ---- criterion 3 ----
Report lemma_audit() {
  Report rep;
  const char* audited[] = {"C2b0", "C2i", "C3b0", "C3i", "D2b0", "D2i", "D3b0", "D3i", "D5"};
  std::size_t runs = 0, violations = 0;
  for (const char* name : audited) {
    const AlgorithmId algo = alg(name);
    std::array<std::uint64_t, kRuleCount> fired{};
    for (std::size_t t = 0; t < kAuditRuns; ++t) {
      const GraphClass c = kClasses[t % 4];
      const std::size_t n = 10 + (t * 37) % 91;  // 10..100
      const TrialRun r = seeded_run(algo, c, n, t, kSeed + 3);
      ++runs;
      const auto h = r.trace.rule_histogram();
      for (std::size_t k = 0; k < kRuleCount; ++k) fired[k] += h[k];
      const Verdict v = audit_terminal_moves(algo, r.graph, r.trace);
      if (!v.ok()) {
        violations += v.violations.size();
        rep.fail(fmt("%s trial %zu: %s", name, t, to_json(v).dump().c_str()));
      }
    }
    // The audit is vacuous if the terminal rule never fires.
    const RuleName terminal = (algo.family() == Family::C3 || algo.family() == Family::D3)
                                  ? RuleName::kRInVW
                                  : RuleName::kRIn;
    const auto count = fired[static_cast<std::size_t>(terminal)];
    rep.note(fmt("%s: %zu runs, %s fired %llu times", name, kAuditRuns,
                 std::string(to_string(terminal)).c_str(), static_cast<unsigned long long>(count)));
    if (count == 0) rep.fail(fmt("%s: terminal rule never exercised", name));
  }
  rep.note(fmt("%zu audited runs, %zu violations", runs, violations));
  return rep;
}

// ---- criterion 4 ----
Report oracle_sandwich() {
  Report rep;
  std::size_t checks = 0, violations = 0, tight_low = 0, tight_high = 0;
  Rng rng(kSeed + 4);
  for (std::size_t k = 0; k < kOracleGraphs; ++k) {
    const std::size_t n = 2 + uniform_below(rng, kOracleMaxOrder - 1);  // 2..16
    const double p = 0.1 + 0.6 * uniform_unit(rng);
    const std::uint64_t gs = derive_seed(kSeed + 4, {k});
    const Graph g = gen_connected(n, p, gs);
    const ExactBounds eb = exact_bounds(g);
    for (const AlgorithmId& algo : all_algorithms()) {
      const Trace t = run(algo, g, random_initial(algo, g, trial_initial_seed(gs, algo, InitDomain::kFull)),
                          trial_scheduler_seed(gs), default_move_cap(g));
      ++checks;
      if (!t.stabilized) {
        ++violations;
        rep.fail(fmt("%s graph %zu did not stabilize", algo.name().c_str(), k));
        continue;
      }
      const std::size_t x = extract_sets(algo, g, t).x.size();
      if (x < eb.i || x > eb.beta0) {
        ++violations;
        rep.fail(fmt("%s graph %zu: |X|=%zu outside [%zu, %zu]\n%s", algo.name().c_str(), k, x, eb.i,
                     eb.beta0, write_edge_list(g).c_str()));
      }
      tight_low += x == eb.i;
      tight_high += x == eb.beta0;
    }
  }
  rep.note(fmt("%zu graphs (n<=%zu) x 16 algorithms = %zu runs, %zu violations", kOracleGraphs,
               kOracleMaxOrder, checks, violations));
  rep.note(fmt("|X| = i in %zu runs, |X| = beta0 in %zu runs", tight_low, tight_high));
  return rep;
}

// ---- criteria 5 and 6 share the paired runs ----
struct Paired {
  Report sizes;
  Report moves;
};

double mean_size(const std::vector<TrialOutcome>& v) {
  double s = 0;
  for (const auto& o : v) s += static_cast<double>(o.set_size);
  return s / static_cast<double>(v.size());
}

double mean_moves(const std::vector<TrialOutcome>& v) {
  double s = 0;
  for (const auto& o : v) s += static_cast<double>(o.moves);
  return s / static_cast<double>(v.size());
}

double paired_sign_p(const std::vector<TrialOutcome>& a, const std::vector<TrialOutcome>& b) {
  std::size_t wins = 0, losses = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    wins += a[k].set_size > b[k].set_size;
    losses += a[k].set_size < b[k].set_size;
  }
  return sign_test_p_value(wins, losses);
}

Paired paired_comparisons() {
  Paired out;
  for (GraphClass c : kClasses) {
    ExperimentSpec spec;
    spec.algorithms.assign(all_algorithms().begin(), all_algorithms().end());
    spec.graph_class = c;
    spec.orders = {kOrder};
    spec.trials = kOrderingTrials;
    spec.seed = kSeed + 5;
    const ExperimentRun run = run_experiment_detailed(spec);
    const std::string cls(to_string(c));
    const auto trials = [&](const char* name) -> const std::vector<TrialOutcome>& {
      return run.trials_of(alg(name), 0);
    };
    const auto size = [&](const char* name) { return mean_size(trials(name)); };
    const auto moves = [&](const char* name) { return mean_moves(trials(name)); };

    // Set sizes: monotone chains and the sign of each gap against C1.
    std::string line = cls + " mean |X|:";
    for (const AlgorithmId& a : all_algorithms()) line += fmt(" %s=%.2f", a.name().c_str(), size(a.name().c_str()));
    out.sizes.note(line);
    const char* up[] = {"C4b0", "C3b0", "C2b0", "C1"};
    const char* down[] = {"C4i", "C3i", "C2i", "C1"};
    for (std::size_t k = 0; k + 1 < 4; ++k) {
      if (!(size(up[k]) >= size(up[k + 1])))
        out.sizes.fail(fmt("%s: %s %.2f < %s %.2f (sign test p=%.3g)", cls.c_str(), up[k], size(up[k]),
                           up[k + 1], size(up[k + 1]), paired_sign_p(trials(up[k]), trials(up[k + 1]))));
      if (!(size(down[k]) <= size(down[k + 1])))
        out.sizes.fail(fmt("%s: %s %.2f > %s %.2f (sign test p=%.3g)", cls.c_str(), down[k],
                           size(down[k]), down[k + 1], size(down[k + 1]),
                           paired_sign_p(trials(down[k]), trials(down[k + 1]))));
      if (!(size(up[k]) > size("C1"))) out.sizes.fail(fmt("%s: %s not above C1", cls.c_str(), up[k]));
      if (!(size(down[k]) < size("C1"))) out.sizes.fail(fmt("%s: %s not below C1", cls.c_str(), down[k]));
    }
    for (auto [x, base] : {std::pair{"C5", "C1"}, std::pair{"D5", "D1"}}) {
      const double pct = percent_difference(size(x), size(base));
      const double p = paired_sign_p(trials(x), trials(base));
      out.sizes.note(fmt("%s: %s vs %s %+.2f%% (sign test p=%.3g)", cls.c_str(), x, base, pct, p));
      if (!(std::abs(pct) < kIndistinguishablePct))
        out.sizes.fail(fmt("%s: |%%diff| %s vs %s = %.2f >= %.1f", cls.c_str(), x, base, std::abs(pct),
                           kIndistinguishablePct));
    }
    // Distributed chains are reported, not asserted.
    out.sizes.note(fmt("%s: D4b0-D3b0-D2b0-D1 = %.2f %.2f %.2f %.2f; D4i-D3i-D2i = %.2f %.2f %.2f",
                       cls.c_str(), size("D4b0"), size("D3b0"), size("D2b0"), size("D1"), size("D4i"),
                       size("D3i"), size("D2i")));

    // Moves: every distributed row at least its central counterpart.
    const std::pair<const char*, const char*> counterpart[] = {
        {"D1", "C1"},   {"D2b0", "C2b0"}, {"D2i", "C2i"}, {"D3b0", "C3b0"},
        {"D3i", "C3i"}, {"D4b0", "C4b0"}, {"D4i", "C4i"}, {"D5", "C5"}};
    std::string mline = cls + " mean moves:";
    for (auto [d, ctr] : counterpart) {
      mline += fmt(" %s/%s=%.1f/%.1f", d, ctr, moves(d), moves(ctr));
      if (!(moves(d) >= moves(ctr)))
        out.moves.fail(fmt("%s: %s moves %.2f < %s moves %.2f", cls.c_str(), d, moves(d), ctr, moves(ctr)));
    }
    out.moves.note(mline);
    const double c2 = percent_difference(moves("C2b0"), moves("C1"));
    out.moves.note(fmt("%s: C2b0 vs C1 moves %+.2f%%", cls.c_str(), c2));
    if (!(moves("C2b0") < moves("C1"))) out.moves.fail(fmt("%s: C2b0 moves not below C1", cls.c_str()));
  }
  return out;
}

// ---- criterion 7 ----
Report linear_scaling() {
  Report rep;
  ExperimentSpec spec;
  spec.algorithms = {alg("C4b0"), alg("C4i"), alg("D4b0"), alg("D4i")};
  spec.graph_class = GraphClass::kTree;
  spec.orders = {250, 500, 1000, 2000};
  spec.trials = kScalingTrials;
  spec.seed = kSeed + 7;
  const std::vector<ScalingPoint> series = emit_scaling_series(spec);
  for (const AlgorithmId& a : spec.algorithms) {
    std::vector<const ScalingPoint*> pts;
    for (const auto& p : series)
      if (p.algorithm == a.name()) pts.push_back(&p);
    // Least squares through the origin: c = sum(n m) / sum(n^2).
    double num = 0, den = 0, pct_mean = 0;
    for (const auto* p : pts) {
      const double n = static_cast<double>(p->n);
      num += n * p->mean_moves;
      den += n * n;
      pct_mean += p->pct_diff_moves;
    }
    const double c = num / den;
    pct_mean /= static_cast<double>(pts.size());
    std::string line = fmt("%s: c=%.4f;", a.name().c_str(), c);
    for (const auto* p : pts) {
      const double fit = c * static_cast<double>(p->n);
      const double dev = std::abs(p->mean_moves - fit) / fit;
      line += fmt(" n=%zu moves=%.1f dev=%.1f%% diff=%+.2f%%;", p->n, p->mean_moves, 100 * dev,
                  p->pct_diff_moves);
      if (!(dev < kLinearFitTolerance))
        rep.fail(fmt("%s n=%zu: %.1f%% from the linear fit", a.name().c_str(), p->n, 100 * dev));
      if (!(std::abs(p->pct_diff_moves - pct_mean) <= kFlatnessTolerancePp))
        rep.fail(fmt("%s n=%zu: %%diff %.2f strays %.2f pp from its mean %.2f", a.name().c_str(), p->n,
                     p->pct_diff_moves, std::abs(p->pct_diff_moves - pct_mean), pct_mean));
    }
    rep.note(line);
  }
  return rep;
}

// ---- criterion 8 ----
const char* kGoldenName = "all_tree_n30_t5_seed42.csv";

std::string golden_table() {
  ExperimentSpec spec;
  spec.algorithms.assign(all_algorithms().begin(), all_algorithms().end());
  spec.graph_class = GraphClass::kTree;
  spec.orders = {30};
  spec.trials = 5;
  spec.seed = 42;
  return emit(run_experiment(spec), OutputFormat::kCsv);
}

Report determinism(const std::filesystem::path& dir, bool regen) {
  Report rep;
  const std::string first = golden_table();
  if (golden_table() != first) rep.fail("two in-process reruns differ");
  const auto path = dir / kGoldenName;
  if (regen) {
    std::ofstream(path, std::ios::binary) << first;
    rep.note("rewrote " + path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    rep.fail("missing golden file " + path.string());
    return rep;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  if (ss.str() != first)
    rep.fail("CSV differs from " + path.string() + "\n--- produced ---\n" + first);
  else
    rep.note(fmt("byte-identical to %s (%zu bytes)", kGoldenName, first.size()));
  return rep;
}


}  // namespace

int main(int argc, char** argv) {
  std::filesystem::path golden_dir = "tests/golden";
  bool regen = false;
  int only = 0;
  for (int k = 1; k < argc; ++k) {
    if (!std::strcmp(argv[k], "--golden") && k + 1 < argc) golden_dir = argv[++k];
    else if (!std::strcmp(argv[k], "--regen-golden")) regen = true;
    else if (!std::strcmp(argv[k], "--only") && k + 1 < argc) only = std::atoi(argv[++k]);
    else {
      std::fprintf(stderr, "usage: %s [--golden DIR] [--regen-golden] [--only N]\n", argv[0]);
      return 2;
    }
  }

  int failed = 0;
  const auto emit_report = [&](int number, const char* title, const Report& rep, double seconds) {
    std::printf("%s  %d %s (%.1fs)\n", rep.pass ? "PASS" : "FAIL", number, title, seconds);
    std::size_t shown = 0;
    for (const auto& d : rep.details) {
      if (++shown > 40) {
        std::printf("      ... %zu more\n", rep.details.size() - 40);
        break;
      }
      std::printf("      %s\n", d.c_str());
    }
    std::fflush(stdout);
    failed += !rep.pass;
  };
  const auto timed = [](auto&& fn) {
    const auto start = std::chrono::steady_clock::now();
    auto result = fn();
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return std::pair{std::move(result), s};
  };
  const auto want = [&](int n) { return only == 0 || only == n; };

  if (want(1) || want(2)) {
    auto [sweep, s] = timed(sweep_all);
    if (want(1)) emit_report(1, "stabilization and correctness", sweep.stabilization, s);
    if (want(2)) emit_report(2, "move-bound theorems", sweep.bounds, s);
  }
  if (want(3)) {
    auto [rep, s] = timed(lemma_audit);
    emit_report(3, "per-node lemma conformance", rep, s);
  }
  if (want(4)) {
    auto [rep, s] = timed(oracle_sandwich);
    emit_report(4, "oracle sandwich i <= |X| <= beta0", rep, s);
  }
  if (want(5) || want(6)) {
    auto [paired, s] = timed(paired_comparisons);
    if (want(5)) emit_report(5, "set-size ordering", paired.sizes, s);
    if (want(6)) emit_report(6, "moves comparison", paired.moves, s);
  }
  if (want(7)) {
    auto [rep, s] = timed(linear_scaling);
    emit_report(7, "linear scaling of C4/D4 moves on trees", rep, s);
  }
  if (want(8)) {
    auto [rep, s] = timed([&] { return determinism(golden_dir, regen); });
    emit_report(8, "determinism against golden CSV", rep, s);
  }
  std::printf("%d criteria failed\n", failed);
  return failed;
}
