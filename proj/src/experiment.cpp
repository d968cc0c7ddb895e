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

#include "selfstab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "selfstab/verifier.hpp"

namespace selfstab {

namespace {

constexpr std::uint64_t kSchedulerTag = 0x5C4ED;

std::vector<AlgorithmId> with_baselines(const std::vector<AlgorithmId>& requested) {
  std::vector<AlgorithmId> out;
  for (const AlgorithmId& a : all_algorithms()) {
    const bool wanted = std::find(requested.begin(), requested.end(), a) != requested.end();
    const bool is_needed_baseline =
        std::any_of(requested.begin(), requested.end(),
                    [&](const AlgorithmId& r) { return r.baseline() == a; });
    if (wanted || is_needed_baseline) out.push_back(a);
  }
  return out;
}

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  // Avoid "-0.0000" so golden files do not depend on rounding direction.
  if (std::string_view(buf) == "-0.0000") return "0.0000";
  return buf;
}

// Runs fn(task) for task in [0, count) on `threads` workers. If tasks throw,
// the exception of the lowest task index is rethrown.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_task = count;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t task = next++; task < count; task = next++) {
      try {
        fn(task);
      } catch (...) {
        std::lock_guard lock(mu);
        if (task < failed_task) {
          failed_task = task;
          failure = std::current_exception();
        }
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

VerificationFailure::VerificationFailure(const std::string& what, nlohmann::json detail)
    : std::runtime_error(what), detail_(std::move(detail)) {}

const ResultRow* ResultsTable::find(const std::string& algorithm, std::size_t n) const {
  for (const ResultRow& row : rows)
    if (row.algorithm == algorithm && row.n == n) return &row;
  return nullptr;
}

const std::vector<TrialOutcome>& ExperimentRun::trials_of(const AlgorithmId& algo,
                                                          std::size_t order_index) const {
  auto it = std::find(algorithms.begin(), algorithms.end(), algo);
  if (it == algorithms.end()) throw DomainError("algorithm " + algo.name() + " was not run");
  return outcomes.at(order_index)[static_cast<std::size_t>(it - algorithms.begin())];
}

void validate(const ExperimentSpec& spec) {
  if (spec.algorithms.empty()) throw DomainError("experiment needs at least one algorithm");
  if (spec.orders.empty()) throw DomainError("experiment needs at least one order");
  if (spec.trials == 0) throw DomainError("experiment needs at least one trial");
  if (spec.move_cap && *spec.move_cap == 0) throw DomainError("move cap must be at least 1");
  for (std::size_t n : spec.orders)
    if (n == 0) throw DomainError("graph order must be at least 1");
}

std::uint64_t trial_graph_seed(std::uint64_t base, GraphClass c, std::size_t n, std::size_t trial) {
  return derive_seed(base, {static_cast<std::uint64_t>(c), n, trial});
}

std::uint64_t trial_scheduler_seed(std::uint64_t graph_seed) {
  return derive_seed(graph_seed, {kSchedulerTag});
}

std::uint64_t trial_initial_seed(std::uint64_t graph_seed, const AlgorithmId& algo, InitDomain d) {
  std::uint64_t tag = 0;
  for (NodeState s : state_domain(algo.family()))
    if (d == InitDomain::kFull || s != NodeState::kWait) tag |= std::uint64_t{1} << static_cast<int>(s);
  return derive_seed(graph_seed, {tag});
}

ExperimentRun run_experiment_detailed(const ExperimentSpec& spec) {
  validate(spec);
  ExperimentRun out;
  out.algorithms = with_baselines(spec.algorithms);
  const std::size_t n_algos = out.algorithms.size();
  out.outcomes.assign(spec.orders.size(),
                      std::vector<std::vector<TrialOutcome>>(
                          n_algos, std::vector<TrialOutcome>(spec.trials)));
  std::vector<std::vector<std::vector<BoundCheck>>> bounds(
      spec.orders.size(), std::vector<std::vector<BoundCheck>>(
                              n_algos, std::vector<BoundCheck>(spec.trials)));

  parallel_for(spec.orders.size() * spec.trials, spec.threads, [&](std::size_t task) {
    const std::size_t oi = task / spec.trials;
    const std::size_t trial = task % spec.trials;
    const std::size_t n = spec.orders[oi];
    const std::uint64_t graph_seed = trial_graph_seed(spec.seed, spec.graph_class, n, trial);
    const Graph g = generate(GenSpec{spec.graph_class, n, spec.p, spec.r, graph_seed});
    const std::uint64_t cap = spec.move_cap.value_or(default_move_cap(g));
    const std::uint64_t sched = trial_scheduler_seed(graph_seed);

    for (std::size_t ai = 0; ai < n_algos; ++ai) {
      const AlgorithmId& algo = out.algorithms[ai];
      Configuration init =
          random_initial(algo, g, trial_initial_seed(graph_seed, algo, spec.init_domain),
                         spec.init_domain);
      const Trace trace = run(algo, g, std::move(init), sched, cap);
      TrialOutcome& o = out.outcomes[oi][ai][trial];
      o.moves = trace.total_moves;
      o.stabilized = trace.stabilized;
      bounds[oi][ai][trial] = check_move_bound(algo, g.order(), g.max_degree(), trace.total_moves);
      if (!trace.stabilized) continue;
      const Verdict verdict = verify_outcome(algo, g, trace);
      if (!verdict.ok()) {
        nlohmann::json detail = {
            {"algorithm", algo.name()},
            {"class", std::string(to_string(spec.graph_class))},
            {"n", n},
            {"trial", trial},
            {"graph", write_edge_list(g)},
            {"verdict", to_json(verdict)},
            {"trace", to_json(trace, g)},
        };
        throw VerificationFailure(algo.name() + " produced an invalid result on " +
                                      std::string(to_string(spec.graph_class)) + " n=" +
                                      std::to_string(n) + " trial " + std::to_string(trial),
                                  std::move(detail));
      }
      o.set_size = extract_sets(algo, g, trace).x.size();
    }
  });

  // Deterministic fold in (order, algorithm, trial) order.
  for (std::size_t oi = 0; oi < spec.orders.size(); ++oi) {
    std::vector<ResultRow> rows;
    for (std::size_t ai = 0; ai < n_algos; ++ai) {
      ResultRow row;
      row.algorithm = out.algorithms[ai].name();
      row.graph_class = std::string(to_string(spec.graph_class));
      row.n = spec.orders[oi];
      row.trials = spec.trials;
      double size_sum = 0, moves_sum = 0;
      std::size_t stabilized = 0;
      for (std::size_t t = 0; t < spec.trials; ++t) {
        const TrialOutcome& o = out.outcomes[oi][ai][t];
        moves_sum += static_cast<double>(o.moves);
        if (o.stabilized) {
          ++stabilized;
          size_sum += static_cast<double>(o.set_size);
        }
        const BoundCheck& b = bounds[oi][ai][t];
        if (b.status == BoundStatus::kExceeded) ++(b.proven ? row.bound_violations : row.monitored_excess);
      }
      row.mean_size = stabilized ? size_sum / static_cast<double>(stabilized) : 0.0;
      row.mean_moves = moves_sum / static_cast<double>(spec.trials);
      row.stabilized_rate = static_cast<double>(stabilized) / static_cast<double>(spec.trials);
      rows.push_back(std::move(row));
    }
    for (std::size_t ai = 0; ai < n_algos; ++ai) {
      const std::string base = out.algorithms[ai].baseline().name();
      const auto it = std::find_if(rows.begin(), rows.end(),
                                   [&](const ResultRow& r) { return r.algorithm == base; });
      rows[ai].pct_diff_size = percent_difference(rows[ai].mean_size, it->mean_size);
      rows[ai].pct_diff_moves = percent_difference(rows[ai].mean_moves, it->mean_moves);
    }
    out.table.rows.insert(out.table.rows.end(), rows.begin(), rows.end());
  }
  return out;
}

ResultsTable run_experiment(const ExperimentSpec& spec) {
  return run_experiment_detailed(spec).table;
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  throw DomainError("unknown output format '" + std::string(name) + "'");
}

std::string emit(const ResultsTable& results, OutputFormat format) {
  if (format == OutputFormat::kJson) {
    nlohmann::json rows = nlohmann::json::array();
    for (const ResultRow& r : results.rows)
      rows.push_back({
          {"algorithm", r.algorithm},
          {"class", r.graph_class},
          {"n", r.n},
          {"trials", r.trials},
          {"mean_size", r.mean_size},
          {"pct_diff_size", r.pct_diff_size},
          {"mean_moves", r.mean_moves},
          {"pct_diff_moves", r.pct_diff_moves},
          {"stabilized_rate", r.stabilized_rate},
          {"bound_violations", r.bound_violations},
          {"monitored_excess", r.monitored_excess},
      });
    return nlohmann::json{{"rows", std::move(rows)}}.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "algorithm,class,n,mean_size,pct_diff_size,mean_moves,pct_diff_moves,stabilized_rate\n";
  for (const ResultRow& r : results.rows)
    os << r.algorithm << ',' << r.graph_class << ',' << r.n << ',' << fixed(r.mean_size) << ','
       << fixed(r.pct_diff_size) << ',' << fixed(r.mean_moves) << ',' << fixed(r.pct_diff_moves)
       << ',' << fixed(r.stabilized_rate) << '\n';
  return os.str();
}

ResultsTable results_from_json(const nlohmann::json& j) {
  ResultsTable t;
  for (const auto& r : j.at("rows")) {
    ResultRow row;
    row.algorithm = r.at("algorithm").get<std::string>();
    row.graph_class = r.at("class").get<std::string>();
    row.n = r.at("n").get<std::size_t>();
    row.trials = r.at("trials").get<std::size_t>();
    row.mean_size = r.at("mean_size").get<double>();
    row.pct_diff_size = r.at("pct_diff_size").get<double>();
    row.mean_moves = r.at("mean_moves").get<double>();
    row.pct_diff_moves = r.at("pct_diff_moves").get<double>();
    row.stabilized_rate = r.at("stabilized_rate").get<double>();
    row.bound_violations = r.at("bound_violations").get<std::uint64_t>();
    row.monitored_excess = r.at("monitored_excess").get<std::uint64_t>();
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<ScalingPoint> emit_scaling_series(const ExperimentSpec& spec) {
  if (!std::is_sorted(spec.orders.begin(), spec.orders.end()))
    throw DomainError("scaling orders must be ascending");
  const ResultsTable table = run_experiment(spec);
  std::vector<ScalingPoint> out;
  for (const AlgorithmId& algo : with_baselines(spec.algorithms)) {
    for (std::size_t n : spec.orders) {
      const ResultRow* row = table.find(algo.name(), n);
      out.push_back({row->algorithm, n, row->mean_moves, row->pct_diff_moves});
    }
  }
  return out;
}

std::string emit(const std::vector<ScalingPoint>& series, OutputFormat format) {
  if (format == OutputFormat::kJson) {
    nlohmann::json points = nlohmann::json::array();
    for (const ScalingPoint& p : series)
      points.push_back({{"algorithm", p.algorithm},
                        {"n", p.n},
                        {"mean_moves", p.mean_moves},
                        {"pct_diff_moves", p.pct_diff_moves}});
    return nlohmann::json{{"series", std::move(points)}}.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "algorithm,n,mean_moves,pct_diff_moves\n";
  for (const ScalingPoint& p : series)
    os << p.algorithm << ',' << p.n << ',' << fixed(p.mean_moves) << ',' << fixed(p.pct_diff_moves)
       << '\n';
  return os.str();
}

double percent_difference(double value, double baseline) {
  if (baseline == 0.0) return 0.0;
  return 100.0 * (value - baseline) / baseline;
}

double sign_test_p_value(std::size_t wins, std::size_t losses) {
  const std::size_t total = wins + losses;
  if (total == 0) return 1.0;
  const std::size_t k_max = std::min(wins, losses);
  const double n = static_cast<double>(total);
  double tail = 0.0;
  for (std::size_t k = 0; k <= k_max; ++k) {
    const double kk = static_cast<double>(k);
    tail += std::exp(std::lgamma(n + 1) - std::lgamma(kk + 1) - std::lgamma(n - kk + 1) -
                     n * std::log(2.0));
  }
  return std::min(1.0, 2.0 * tail);
}

}  // namespace selfstab
