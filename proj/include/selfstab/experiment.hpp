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

#ifndef SELFSTAB_EXPERIMENT_HPP_
#define SELFSTAB_EXPERIMENT_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "selfstab/engine.hpp"
#include "selfstab/generators.hpp"
#include "selfstab/rules.hpp"

namespace selfstab {

struct ExperimentSpec {
  std::vector<AlgorithmId> algorithms;
  GraphClass graph_class = GraphClass::kTree;
  std::vector<std::size_t> orders{100};
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  std::optional<double> p;
  std::optional<double> r;
  /// Per-run cap; defaults to default_move_cap(graph).
  std::optional<std::uint64_t> move_cap;
  InitDomain init_domain = InitDomain::kFull;
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Throws DomainError for an empty algorithm list, no orders or zero trials.
void validate(const ExperimentSpec& spec);

/// One aggregated cell: an algorithm on one graph class and order.
struct ResultRow {
  std::string algorithm;
  std::string graph_class;
  std::size_t n = 0;
  std::size_t trials = 0;
  double mean_size = 0;
  double pct_diff_size = 0;
  double mean_moves = 0;
  double pct_diff_moves = 0;
  double stabilized_rate = 0;
  /// Runs above a proven move bound.
  std::uint64_t bound_violations = 0;
  /// D3/D5 runs above the monitored 3 Delta n ceiling.
  std::uint64_t monitored_excess = 0;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

struct ResultsTable {
  std::vector<ResultRow> rows;
  const ResultRow* find(const std::string& algorithm, std::size_t n) const;
  friend bool operator==(const ResultsTable&, const ResultsTable&) = default;
};

/// Raw per-trial numbers, kept for paired statistics.
struct TrialOutcome {
  std::size_t set_size = 0;
  std::uint64_t moves = 0;
  bool stabilized = false;
};

struct ExperimentRun {
  ResultsTable table;
  /// Algorithms actually run: the requested ones plus any missing baseline,
  /// in canonical order.
  std::vector<AlgorithmId> algorithms;
  /// outcomes[order index][algorithm index][trial]
  std::vector<std::vector<std::vector<TrialOutcome>>> outcomes;

  const std::vector<TrialOutcome>& trials_of(const AlgorithmId& algo, std::size_t order_index) const;
};

/// A stabilized run whose final sets fail verification. Carries the trace
/// and verdict as JSON.
class VerificationFailure : public std::runtime_error {
 public:
  VerificationFailure(const std::string& what, nlohmann::json detail);
  const nlohmann::json& detail() const noexcept { return detail_; }

 private:
  nlohmann::json detail_;
};

/// Seeds for one trial. The graph and scheduler seeds depend only on
/// (base, class, n, trial); the initial configuration seed additionally on
/// the state domain, so algorithms sharing a domain start from the same
/// configuration.
std::uint64_t trial_graph_seed(std::uint64_t base, GraphClass c, std::size_t n, std::size_t trial);
std::uint64_t trial_scheduler_seed(std::uint64_t graph_seed);
std::uint64_t trial_initial_seed(std::uint64_t graph_seed, const AlgorithmId& algo, InitDomain d);

/// Generates, runs, verifies and aggregates every (order, trial, algorithm).
/// Output is independent of the thread count.
ExperimentRun run_experiment_detailed(const ExperimentSpec& spec);
ResultsTable run_experiment(const ExperimentSpec& spec);

enum class OutputFormat { kCsv, kJson };

OutputFormat parse_output_format(std::string_view name);

/// CSV columns: algorithm, class, n, mean_size, pct_diff_size, mean_moves,
/// pct_diff_moves, stabilized_rate. JSON carries every ResultRow field.
std::string emit(const ResultsTable& results, OutputFormat format);
ResultsTable results_from_json(const nlohmann::json& j);

struct ScalingPoint {
  std::string algorithm;
  std::size_t n = 0;
  double mean_moves = 0;
  double pct_diff_moves = 0;
};

/// Mean moves per order for `spec.algorithms`, with % difference against
/// the family baseline. Orders must be ascending.
std::vector<ScalingPoint> emit_scaling_series(const ExperimentSpec& spec);
std::string emit(const std::vector<ScalingPoint>& series, OutputFormat format);

/// 100 * (value - baseline) / baseline; 0 when the baseline is 0.
double percent_difference(double value, double baseline);

/// Two-sided exact sign test p-value for `wins` against `losses` (ties
/// already dropped).
double sign_test_p_value(std::size_t wins, std::size_t losses);

}  // namespace selfstab

#endif  // SELFSTAB_EXPERIMENT_HPP_
