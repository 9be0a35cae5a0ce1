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

#include <sstream>

#include "camdp/errors.hpp"
#include "camdp/experiments.hpp"
#include "camdp/fixtures.hpp"
#include "camdp/serialization.hpp"
#include "oracles.hpp"

#include <json.hpp>

namespace camdp {
namespace {

TEST(GammaSweep, ZeroDiscountIsImmediateReward) {
  const FactoredCamdp m = case_study_model();
  const JointPolicy p = case_study_initial_policy();
  const GammaSweep s = run_gamma_sweep(m, {p}, {0.0, 0.5});
  EXPECT_LT((s.values[0][0] - augment(m, p).r_exp).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(s.relative_spread[0].size(), 2u);
}

TEST(GammaSweep, SingleStateHasNoSpread) {
  const FactoredCamdp m = oracle::random_model(Dims{1, 1, 1, 2, 2}, 3);
  const GammaSweep s = run_gamma_sweep(m, {{{0}, {1}}}, {0.5, 0.75, 0.95, 0.998});
  for (double x : s.relative_spread[0]) EXPECT_EQ(x, 0.0);
}

TEST(GammaSweep, SpreadShrinksTowardOne) {
  GeneratorSpec spec;
  spec.seed = 99;
  const FactoredCamdp m = random_camdp(spec);
  const GammaSweep s = run_gamma_sweep(m, {oracle::random_policy(m.dims, 1)},
                                       {0.5, 0.75, 0.95, 0.998});
  for (std::size_t g = 1; g < 4; ++g) EXPECT_LE(s.relative_spread[0][g], s.relative_spread[0][g - 1]);
  EXPECT_LT(s.relative_spread[0][3], 0.01);
  const std::string csv = gamma_sweep_to_csv(s, config_to_json(SolverConfig{}));
  EXPECT_EQ(csv.rfind("# config: {", 0), 0u);
}

TEST(GammaSweep, RejectsBadGamma) {
  EXPECT_THROW(run_gamma_sweep(case_study_model(), {case_study_initial_policy()}, {1.0}),
               DomainError);
}

TEST(McConditions, IndependentOfThreadCount) {
  GeneratorSpec spec;
  spec.seed = 5;
  SolverConfig cfg;
  const auto a = run_mc_conditions(spec, 6, cfg, 1);
  const auto b = run_mc_conditions(spec, 6, cfg, 3);
  const std::string conf = config_to_json(cfg);
  EXPECT_EQ(mc_summary_to_csv(a, conf), mc_summary_to_csv(b, conf));
  EXPECT_EQ(a.failures, 0);
  EXPECT_EQ(a.implication_violations, 0);
  EXPECT_EQ(a.models[3].seed, 8u);
  for (std::size_t k = 0; k < a.models.size(); ++k) {
    EXPECT_EQ(condition_report_to_json(a.models[k].report, conf),
              condition_report_to_json(b.models[k].report, conf));
  }
}

TEST(CaseStudyRun, ReportsBaselineAndSeeds) {
  SolverConfig cfg;
  cfg.gamma = kCaseStudyGamma;
  cfg.epsilon_explore = 0.1;
  const CaseStudyReport r = run_case_study(cfg, 10);
  EXPECT_NEAR(r.vm.max(), 9.989, 5e-4);
  EXPECT_FALSE(r.baseline_visits_max);
  EXPECT_EQ(r.exploring.size(), 10u);
  EXPECT_LE(r.terminated_at_max, r.visited_max);
  EXPECT_EQ(r.alternating.final_policy(), (JointPolicy{{1, 1, 0, 0}, {1, 0, 0, 0}}));
}

TEST(Serialization, TraceRecordsCarryConfig) {
  SolverConfig cfg;
  cfg.gamma = kCaseStudyGamma;
  const IterationTrace t = alternate_iterate(case_study_model(), case_study_initial_policy(), cfg);
  const std::string text = trace_to_jsonl(t, config_to_json(cfg, R"({"command":"solve"})"),
                                          R"({"run_seed":3})");
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j["step"], n);
    EXPECT_EQ(j["config"]["gamma"], kCaseStudyGamma);
    EXPECT_EQ(j["config"]["command"], "solve");
    EXPECT_EQ(j["run_seed"], 3);
    EXPECT_EQ(j["v"].size(), 8u);
    ++n;
  }
  EXPECT_EQ(n, t.steps.size());
}

TEST(Serialization, ValueMatrixCsvLayout) {
  SolverConfig cfg;
  const ValueMatrix vm = enumerate_value_matrix(case_study_model(), cfg);
  const std::string csv = value_matrix_to_csv(vm, config_to_json(cfg));
  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 18u);
  EXPECT_EQ(lines[0].rfind("# config: ", 0), 0u);
  EXPECT_EQ(lines[1].rfind("pi0\\pi1,[0 0 0 0],[0 0 0 1]", 0), 0u);
  EXPECT_EQ(lines[2].rfind("[0 0 0 0],", 0), 0u);
  const auto j = nlohmann::json::parse(value_matrix_to_json(vm, config_to_json(cfg)));
  EXPECT_EQ(j["rows"], 16);
  EXPECT_EQ(j["values"].size(), 16u);
}

TEST(Serialization, ParseSubPolicy) {
  EXPECT_EQ(parse_sub_policy("1,0,0,0"), (SubPolicy{1, 0, 0, 0}));
  EXPECT_EQ(parse_sub_policy("[0 1 1 0]"), (SubPolicy{0, 1, 1, 0}));
  EXPECT_THROW(parse_sub_policy("1;0"), DomainError);
  EXPECT_THROW(parse_sub_policy(""), DomainError);
}

}  // namespace
}  // namespace camdp
