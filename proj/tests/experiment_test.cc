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

#include <cmath>

#include "gtest/gtest.h"
#include "test_graphs.hpp"

namespace selfstab {
namespace {

using testing::states;

const AlgorithmId kC1{Family::C1};
const AlgorithmId kC2b0{Family::C2, Variant::kBeta0};
const AlgorithmId kD5{Family::D5};

TEST(ExperimentTest, K2SingleTrialFromBothInside) {
  // Trees of order 2 are K2. Find a base seed whose first trial starts C1 at
  // (1,1): the run must then report set size 1 after exactly one move.
  for (std::uint64_t base = 0; base < 64; ++base) {
    const std::uint64_t gs = trial_graph_seed(base, GraphClass::kTree, 2, 0);
    const Configuration init =
        random_initial(kC1, testing::complete(2), trial_initial_seed(gs, kC1, InitDomain::kFull));
    if (init != states("11")) continue;
    ExperimentSpec spec;
    spec.algorithms = {kC1};
    spec.orders = {2};
    spec.trials = 1;
    spec.seed = base;
    const ResultsTable table = run_experiment(spec);
    ASSERT_EQ(table.rows.size(), 1u);
    EXPECT_EQ(table.rows[0].mean_size, 1.0);
    EXPECT_EQ(table.rows[0].mean_moves, 1.0);
    EXPECT_EQ(table.rows[0].stabilized_rate, 1.0);
    return;
  }
  FAIL() << "no seed produced the (1,1) start";
}

TEST(ExperimentTest, BaselinesAreAddedAndHaveZeroDifference) {
  ExperimentSpec spec;
  spec.algorithms = {kD5, kC2b0};
  spec.graph_class = GraphClass::kConnected;
  spec.orders = {20, 30};
  spec.trials = 8;
  const ResultsTable table = run_experiment(spec);
  ASSERT_EQ(table.rows.size(), 8u);
  for (std::size_t n : {20u, 30u}) {
    for (const char* base : {"C1", "D1"}) {
      const ResultRow* row = table.find(base, n);
      ASSERT_NE(row, nullptr);
      EXPECT_EQ(row->pct_diff_size, 0.0);
      EXPECT_EQ(row->pct_diff_moves, 0.0);
    }
    const ResultRow* c2 = table.find("C2b0", n);
    ASSERT_NE(c2, nullptr);
    EXPECT_DOUBLE_EQ(c2->pct_diff_size,
                     100 * (c2->mean_size - table.find("C1", n)->mean_size) /
                         table.find("C1", n)->mean_size);
    EXPECT_EQ(c2->graph_class, "connected");
    EXPECT_EQ(c2->trials, 8u);
  }
  EXPECT_EQ(table.rows[0].algorithm, "C1");
  EXPECT_EQ(table.rows[0].n, 20u);
}

TEST(ExperimentTest, PairedRunsShareGraphsAndStarts) {
  // C2b0 and C2i run on the same graph from the same start, so outcomes are
  // paired trial by trial; check via the detailed per-trial outcomes that the
  // baseline and each variant were evaluated for every trial.
  ExperimentSpec spec;
  spec.algorithms = {kC2b0, AlgorithmId(Family::C2, Variant::kI)};
  spec.orders = {25};
  spec.trials = 12;
  const ExperimentRun run = run_experiment_detailed(spec);
  ASSERT_EQ(run.algorithms.size(), 3u);
  for (const AlgorithmId& a : run.algorithms) EXPECT_EQ(run.trials_of(a, 0).size(), 12u);
  EXPECT_EQ(trial_initial_seed(7, kC1, InitDomain::kFull),
            trial_initial_seed(7, kC2b0, InitDomain::kFull));
  EXPECT_NE(trial_initial_seed(7, kC1, InitDomain::kFull),
            trial_initial_seed(7, AlgorithmId(Family::D1), InitDomain::kFull));
  EXPECT_EQ(trial_initial_seed(7, kC1, InitDomain::kFull),
            trial_initial_seed(7, AlgorithmId(Family::D1), InitDomain::kNoWait));
}

TEST(ExperimentTest, RerunIsBitIdenticalAcrossThreadCounts) {
  ExperimentSpec spec;
  spec.algorithms = std::vector<AlgorithmId>(all_algorithms().begin(), all_algorithms().end());
  spec.graph_class = GraphClass::kUnitDisk;
  spec.orders = {40};
  spec.trials = 6;
  spec.threads = 1;
  const std::string a = emit(run_experiment(spec), OutputFormat::kCsv);
  spec.threads = 3;
  EXPECT_EQ(a, emit(run_experiment(spec), OutputFormat::kCsv));
  spec.seed = 2;
  EXPECT_NE(a, emit(run_experiment(spec), OutputFormat::kCsv));
}

TEST(ExperimentTest, Validation) {
  ExperimentSpec spec;
  EXPECT_THROW(validate(spec), DomainError);
  spec.algorithms = {kC1};
  spec.trials = 0;
  EXPECT_THROW(validate(spec), DomainError);
  spec.trials = 1;
  spec.orders = {};
  EXPECT_THROW(validate(spec), DomainError);
  spec.orders = {5};
  spec.move_cap = 0;
  EXPECT_THROW(validate(spec), DomainError);
}

TEST(EmitTest, CsvShapes) {
  const char* header =
      "algorithm,class,n,mean_size,pct_diff_size,mean_moves,pct_diff_moves,stabilized_rate\n";
  EXPECT_EQ(emit(ResultsTable{}, OutputFormat::kCsv), header);
  ResultsTable one;
  one.rows.push_back({"C1", "tree", 10, 3, 5.5, 0, 7.25, 0, 1.0, 0, 0});
  EXPECT_EQ(emit(one, OutputFormat::kCsv),
            std::string(header) + "C1,tree,10,5.5000,0.0000,7.2500,0.0000,1.0000\n");
}

TEST(EmitTest, JsonRoundTrip) {
  ResultsTable table;
  table.rows.push_back({"C1", "tree", 10, 3, 5.5, 0, 7.25, 0, 1.0, 0, 0});
  table.rows.push_back({"C4i", "tree", 10, 3, 4.125, -25.0, 9.0, 24.137931, 1.0, 0, 2});
  const std::string text = emit(table, OutputFormat::kJson);
  EXPECT_EQ(results_from_json(nlohmann::json::parse(text)), table);
  EXPECT_EQ(results_from_json(nlohmann::json::parse(emit(ResultsTable{}, OutputFormat::kJson))),
            ResultsTable{});
  EXPECT_THROW(parse_output_format("xml"), DomainError);
}

TEST(ScalingTest, SeriesShape) {
  ExperimentSpec spec;
  spec.algorithms = {AlgorithmId(Family::C4, Variant::kBeta0)};
  spec.orders = {20, 40};
  spec.trials = 5;
  const auto series = emit_scaling_series(spec);
  ASSERT_EQ(series.size(), 4u);  // C1 and C4b0 at two orders
  for (const auto& p : series) EXPECT_GT(p.mean_moves, 0.0);
  spec.orders = {40, 20};
  EXPECT_THROW(emit_scaling_series(spec), DomainError);
  spec.orders = {30};
  EXPECT_EQ(emit_scaling_series(spec).size(), 2u);
  EXPECT_EQ(emit(std::vector<ScalingPoint>{}, OutputFormat::kCsv), "algorithm,n,mean_moves,pct_diff_moves\n");
}

TEST(StatisticsTest, PercentDifference) {
  EXPECT_DOUBLE_EQ(percent_difference(110, 100), 10.0);
  EXPECT_DOUBLE_EQ(percent_difference(90, 100), -10.0);
}

TEST(StatisticsTest, SignTest) {
  EXPECT_DOUBLE_EQ(sign_test_p_value(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(sign_test_p_value(5, 5), 1.0);
  EXPECT_NEAR(sign_test_p_value(10, 0), 2.0 / 1024.0, 1e-12);
  // 2 * P(X <= 2), X ~ Bin(10, 1/2) = 2 * 56 / 1024
  EXPECT_NEAR(sign_test_p_value(8, 2), 112.0 / 1024.0, 1e-12);
  EXPECT_NEAR(sign_test_p_value(2, 8), 112.0 / 1024.0, 1e-12);
}

}  // namespace
}  // namespace selfstab
