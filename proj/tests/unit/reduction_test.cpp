// Copyright 2026 The camdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>

#include "camdp/errors.hpp"
#include "camdp/fixtures.hpp"
#include "camdp/reduction.hpp"
#include "oracles.hpp"

namespace camdp {
namespace {

SolverConfig config(double gamma) {
  SolverConfig cfg;
  cfg.gamma = gamma;
  return cfg;
}

TEST(Presets, PartitionCells) {
  const Dims d{2, 2, 2, 2, 2};
  const auto s0 = constraint_preset("s0-only", d);
  ASSERT_TRUE(s0);
  EXPECT_EQ(s0->classes, (std::vector<std::vector<int>>{{0, 1}, {2, 3}}));
  const auto ss = constraint_preset("ss-only", d);
  EXPECT_EQ(ss->classes, (std::vector<std::vector<int>>{{0, 2}, {1, 3}}));
  const auto s1 = constraint_preset("s1-only", d);
  EXPECT_EQ(s1->agent, AgentId::agent1);
  EXPECT_EQ(s1->classes, (std::vector<std::vector<int>>{{0, 1}, {2, 3}}));
  EXPECT_FALSE(constraint_preset("s2-only", d));
  EXPECT_EQ(s0->policy_count(d), 4);
  EXPECT_EQ(s0->policies(d).size(), 4u);
  for (const auto& p : ss->policies(d)) {
    EXPECT_TRUE(ss->admits(p));
    EXPECT_EQ(p[0], p[2]);
    EXPECT_EQ(p[1], p[3]);
  }
}

TEST(Partition, ParsesAndValidates) {
  const Dims d{2, 2, 2, 2, 2};
  const PolicyConstraint c = parse_partition("agent0:0,2;1,3", d);
  EXPECT_EQ(c.classes, (std::vector<std::vector<int>>{{0, 2}, {1, 3}}));
  EXPECT_THROW(parse_partition("agent0:0,2;1", d), DomainError);
  EXPECT_THROW(parse_partition("agent0:0,2;1,3,3", d), DomainError);
  EXPECT_THROW(parse_partition("agent2:0,1,2,3", d), DomainError);
  EXPECT_THROW(parse_partition("0,1,2,3", d), DomainError);
  EXPECT_THROW(parse_partition("agent1:0,x;1,2,3", d), DomainError);
}

TEST(ConstrainedBest, CaseStudyReductions) {
  const SolverConfig cfg = config(kCaseStudyGamma);
  const FactoredCamdp m = case_study_model();
  const ReductionReport ss = constrained_best(m, *constraint_preset("ss-only", m.dims), cfg);
  EXPECT_EQ(ss.original_count, 16);
  EXPECT_EQ(ss.reduced_count, 4);
  EXPECT_NEAR(ss.best_original, 9.989, 5e-4);
  EXPECT_NEAR(ss.best_reduced, 9.046, 5e-4);
  const ReductionReport s0 = constrained_best(m, *constraint_preset("s0-only", m.dims), cfg);
  EXPECT_EQ(s0.reduced_count, 4);
  EXPECT_NEAR(s0.best_reduced, 9.811, 5e-4);
  EXPECT_NEAR(s0.delta_v, s0.best_original - s0.best_reduced, 1e-15);
}

TEST(ConstrainedBest, VacuousConstraintLosesNothing) {
  const FactoredCamdp m = oracle::random_model(Dims{2, 2, 2, 2, 2}, 4);
  const ValueMatrix vm = enumerate_value_matrix(m, config(0.9));
  for (AgentId who : {AgentId::agent0, AgentId::agent1}) {
    const ReductionReport r = constrained_best(vm, vacuous_constraint(who, m.dims));
    EXPECT_EQ(r.delta_v, 0.0);
    EXPECT_EQ(r.reduced_count, r.original_count);
    EXPECT_NEAR(r.spread, vm.max() - vm.values.minCoeff(), 1e-15);
  }
}

TEST(ConstrainedBest, RefinementNeverIncreasesLoss) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const FactoredCamdp m = oracle::random_model(Dims{2, 2, 2, 2, 2}, seed);
    const ValueMatrix vm = enumerate_value_matrix(m, config(0.9));
    PolicyConstraint coarse;
    coarse.classes = {{0, 1, 2, 3}};
    const auto c = constrained_best(vm, coarse);
    const auto mid = constrained_best(vm, *constraint_preset("s0-only", m.dims));
    const auto fine = constrained_best(vm, vacuous_constraint(AgentId::agent0, m.dims));
    EXPECT_GE(c.delta_v, mid.delta_v);
    EXPECT_GE(mid.delta_v, fine.delta_v);
    EXPECT_GE(fine.delta_v, 0.0);
  }
}

TEST(Prune, ThresholdExtremes) {
  const FactoredCamdp m = oracle::random_model(Dims{2, 2, 2, 2, 2}, 6);
  const ValueMatrix vm = enumerate_value_matrix(m, config(0.9));
  EXPECT_TRUE(prune_by_value(vm, vm.values.minCoeff() * 0.5, AgentId::agent0).empty());
  EXPECT_EQ(prune_by_value(vm, vm.max() + 1, AgentId::agent1).size(), 16u);
  EXPECT_THROW(prune_by_value(vm, -1, AgentId::agent0), DomainError);
}

TEST(Prune, MatchesRowMaximumFilterAndKeepsOptimum) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const FactoredCamdp m = oracle::random_model(Dims{2, 2, 2, 2, 2}, seed);
    const ValueMatrix vm = enumerate_value_matrix(m, config(0.9));
    std::vector<double> row_max;
    for (long i = 0; i < vm.rows(); ++i) row_max.push_back(vm.values.row(i).maxCoeff());
    std::vector<double> sorted = row_max;
    std::sort(sorted.begin(), sorted.end());
    const double threshold = sorted[sorted.size() / 4];
    std::vector<long> expected;
    for (long i = 0; i < vm.rows(); ++i)
      if (row_max[i] <= threshold) expected.push_back(i);
    const auto pruned = prune_by_value(vm, threshold, AgentId::agent0);
    EXPECT_EQ(pruned, expected);
    double kept_max = -1;
    for (long i = 0; i < vm.rows(); ++i)
      if (std::find(pruned.begin(), pruned.end(), i) == pruned.end())
        kept_max = std::max(kept_max, row_max[i]);
    EXPECT_EQ(kept_max, vm.max());
    for (const auto& c : find_nash_equilibria(vm)) {
      if (c.value > threshold) EXPECT_EQ(std::count(pruned.begin(), pruned.end(), c.row), 0);
    }
  }
}

TEST(Prune, ReplayCountsVisitedPrunableSteps) {
  const SolverConfig cfg = config(kCaseStudyGamma);
  const FactoredCamdp m = case_study_model();
  const ValueMatrix vm = enumerate_value_matrix(m, cfg);
  const IterationTrace t = alternate_iterate(m, case_study_initial_policy(), cfg);
  const PruneReplay none = replay_pruning({t}, vm, 0.0);
  EXPECT_EQ(none.steps, static_cast<long>(t.steps.size()));
  EXPECT_EQ(none.prunable_steps, 0);
  const PruneReplay all = replay_pruning({t}, vm, vm.max() + 1);
  EXPECT_EQ(all.prunable_steps, all.steps);
  ASSERT_TRUE(all.best_prunable_value);
  double best = 0.0;
  for (const auto& step : t.steps) best = std::max(best, step.value);
  EXPECT_NEAR(*all.best_prunable_value, best, 1e-12);
}

}  // namespace
}  // namespace camdp
