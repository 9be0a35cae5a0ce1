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

#include "camdp/equilibrium.hpp"
#include "camdp/errors.hpp"
#include "camdp/fixtures.hpp"
#include "camdp/policy_engine.hpp"
#include "oracles.hpp"

namespace camdp {
namespace {

// ns0 = ns1 = 1: each agent observes the full state.
const Dims kObservable{1, 3, 1, 2, 3};

SolverConfig config(double gamma) {
  SolverConfig cfg;
  cfg.gamma = gamma;
  return cfg;
}

// One state; reward 1 when actions match and 0.1 otherwise.
FactoredCamdp coordination_game() {
  FactoredCamdp m = FactoredCamdp::zeros(Dims{1, 1, 1, 2, 2});
  std::fill(m.p0.begin(), m.p0.end(), 1.0);
  std::fill(m.ps.begin(), m.ps.end(), 1.0);
  std::fill(m.p1.begin(), m.p1.end(), 1.0);
  std::fill(m.r0.begin(), m.r0.end(), 1.0);
  std::fill(m.r1.begin(), m.r1.end(), 1.0);
  for (int a0 = 0; a0 < 2; ++a0)
    for (int a1 = 0; a1 < 2; ++a1) m.rs[m.ps_index(a0, a1, 0, 0)] = a0 == a1 ? 1.0 : 0.1;
  return m;
}

TEST(SolverConfig, ValidatesRanges) {
  SolverConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.gamma = 1.0;
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg = SolverConfig{};
  cfg.epsilon_explore = 1.5;
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg = SolverConfig{};
  cfg.eta = -0.1;
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg = SolverConfig{};
  cfg.max_iterations = 0;
  EXPECT_THROW(cfg.validate(), DomainError);
}

TEST(CellActionValues, CurrentActionReproducesValue) {
  const FactoredCamdp m = oracle::random_model(Dims{2, 2, 2, 2, 2}, 1);
  const JointPolicy pol = oracle::random_policy(m.dims, 2);
  const Eigen::VectorXd v = evaluate_exact(augment(m, pol), 0.9).v;
  const Dims& d = m.dims;
  for (AgentId who : {AgentId::agent0, AgentId::agent1}) {
    for (const auto& cell : cell_action_values(m, pol, v, 0.9, who)) {
      const int own = cell.cell / d.nss;
      const int ss = cell.cell % d.nss;
      for (int u = 0; u < static_cast<int>(cell.q.size()); ++u) {
        const int i = who == AgentId::agent0 ? composite_index(own, ss, u, d)
                                             : composite_index(u, ss, own, d);
        EXPECT_NEAR(cell.q[u][pol.of(who)[cell.cell]], v(i), 1e-12);
      }
    }
  }
}

TEST(ImproveAgent, ObservableCellsTakePerStateArgmax) {
  const FactoredCamdp m = oracle::random_model(kObservable, 3);
  const JointPolicy pol = oracle::random_policy(kObservable, 4);
  const SolverConfig cfg = config(0.9);
  const Eigen::VectorXd v = evaluate_exact(augment(m, pol), cfg.gamma).v;
  const ImprovementResult imp = improve_agent(m, pol, v, cfg, AgentId::agent1);
  EXPECT_TRUE(imp.consistent());
  const oracle::Vector ref_v = oracle::value(m, pol, cfg.gamma);
  for (int ss = 0; ss < kObservable.nss; ++ss) {
    int best = 0;
    double best_q = -1;
    for (int a = 0; a < kObservable.na1; ++a) {
      const oracle::Dynamics dyn = oracle::augment(m, [&] {
        JointPolicy t = pol;
        t.pi1[ss] = a;
        return t;
      }());
      double q = dyn.r_exp[ss];
      for (int j = 0; j < kObservable.nss; ++j) q += cfg.gamma * dyn.p[ss][j] * ref_v[j];
      if (q > best_q) {
        best_q = q;
        best = a;
      }
    }
    EXPECT_EQ(imp.policy[ss], best) << "cell " << ss;
  }
}

TEST(ImproveAgent, ModesAgreeWhenObservable) {
  const FactoredCamdp m = oracle::random_model(kObservable, 5);
  const JointPolicy pol = oracle::random_policy(kObservable, 6);
  SolverConfig full = config(0.9);
  SolverConfig partial = full;
  partial.improvement_mode = ImprovementMode::partial_info;
  const Eigen::VectorXd v = evaluate_exact(augment(m, pol), 0.9).v;
  for (AgentId who : {AgentId::agent0, AgentId::agent1}) {
    EXPECT_EQ(improve_agent(m, pol, v, full, who).policy,
              improve_agent(m, pol, v, partial, who).policy);
  }
}

TEST(RevisedImprove, ZeroThresholdIsPlainImprovement) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const FactoredCamdp m = oracle::random_model(Dims{2, 2, 2, 2, 2}, seed);
    const JointPolicy pol = oracle::random_policy(m.dims, seed + 50);
    const SolverConfig cfg = config(0.9);
    const Eigen::VectorXd v = evaluate_exact(augment(m, pol), cfg.gamma).v;
    const auto a = improve_agent(m, pol, v, cfg, AgentId::agent0);
    const auto b = revised_improve(m, pol, v, cfg);
    EXPECT_EQ(a.policy, b.policy);
    EXPECT_EQ(a.changed, b.changed);
  }
}

TEST(RevisedImprove, LargeThresholdFreezesPolicy) {
  const FactoredCamdp m = case_study_model();
  const JointPolicy pol = case_study_initial_policy();
  SolverConfig cfg = config(0.98);
  cfg.eta = 1e6;
  const Eigen::VectorXd v = evaluate_exact(augment(m, pol), cfg.gamma).v;
  const auto r = revised_improve(m, pol, v, cfg);
  EXPECT_FALSE(r.changed);
  EXPECT_EQ(r.policy, pol.pi0);
}

TEST(BestResponse, MatchesBruteForceWhenObservable) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const FactoredCamdp m = oracle::random_model(kObservable, seed);
    const JointPolicy start = oracle::random_policy(kObservable, seed + 1);
    const SolverConfig cfg = config(0.9);
    for (AgentId who : {AgentId::agent0, AgentId::agent1}) {
      const BestResponse br = best_response(m, who, start.of(other(who)), start.of(who), cfg);
      JointPolicy got = start;
      got.of(who) = br.policy;
      const oracle::Vector v = oracle::value(m, got, cfg.gamma);
      const int na = who == AgentId::agent0 ? kObservable.na0 : kObservable.na1;
      const long n = oracle::power(na, kObservable.nss);
      for (long k = 0; k < n; ++k) {
        JointPolicy alt = start;
        alt.of(who) = oracle::decode(k, kObservable.nss, na);
        const oracle::Vector w = oracle::value(m, alt, cfg.gamma);
        for (std::size_t i = 0; i < v.size(); ++i) EXPECT_GE(v[i], w[i] - 1e-9);
      }
      EXPECT_TRUE(br.final_consistent);
      EXPECT_EQ(br.monotonicity.violations, 0);
      EXPECT_EQ(br.monotonicity.consistent_steps, br.monotonicity.accepted_steps);
    }
  }
}

TEST(BestResponse, IterationCapRaisesWithVisitedPolicies) {
  const SolverConfig base = config(0.9);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const FactoredCamdp m = oracle::random_model(Dims{1, 4, 1, 3, 3}, seed);
    const JointPolicy start = oracle::random_policy(m.dims, seed);
    const BestResponse br = best_response(m, AgentId::agent1, start.pi0, start.pi1, base);
    if (br.improvement_steps < 2) continue;
    SolverConfig tight = base;
    tight.max_iterations = br.improvement_steps;
    try {
      best_response(m, AgentId::agent1, start.pi0, start.pi1, tight);
      FAIL() << "expected NonConvergenceError";
    } catch (const NonConvergenceError& e) {
      EXPECT_EQ(e.partial().front(), start.pi1);
      EXPECT_EQ(static_cast<int>(e.partial().size()), br.improvement_steps + 1);
    }
    tight.max_iterations = br.improvement_steps + 1;
    EXPECT_EQ(best_response(m, AgentId::agent1, start.pi0, start.pi1, tight).policy, br.policy);
    return;
  }
  GTEST_SKIP() << "no multi-step best response found";
}

TEST(AlternateIterate, CaseStudyReachesLocalEquilibrium) {
  const IterationTrace t =
      alternate_iterate(case_study_model(), case_study_initial_policy(), config(kCaseStudyGamma));
  EXPECT_EQ(t.outcome, Outcome::converged);
  EXPECT_EQ(t.final_policy(), (JointPolicy{{1, 1, 0, 0}, {1, 0, 0, 0}}));
  EXPECT_NEAR(t.final_value(), 9.811, 5e-4);
  EXPECT_EQ(t.monotonicity.violations, 0);
}

TEST(AlternateIterate, StepsChangeOnlyTheMover) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const FactoredCamdp m = oracle::random_model(Dims{2, 2, 2, 2, 2}, seed);
    SolverConfig cfg = config(0.9);
    cfg.first_mover = seed % 2 ? AgentId::agent1 : AgentId::agent0;
    const IterationTrace t = alternate_iterate(m, oracle::random_policy(m.dims, seed), cfg);
    ASSERT_GE(t.steps.size(), 3u);
    EXPECT_EQ(t.steps.front().mover, Mover::initial);
    std::array<int, 2> sw{0, 0};
    for (std::size_t k = 1; k < t.steps.size(); ++k) {
      const TraceStep& prev = t.steps[k - 1];
      const TraceStep& cur = t.steps[k];
      if (cur.mover == Mover::agent0) EXPECT_EQ(prev.policy.pi1, cur.policy.pi1);
      if (cur.mover == Mover::agent1) EXPECT_EQ(prev.policy.pi0, cur.policy.pi0);
      sw[0] += hamming(prev.policy.pi0, cur.policy.pi0);
      sw[1] += hamming(prev.policy.pi1, cur.policy.pi1);
      EXPECT_EQ(cur.switches, sw);
    }
    EXPECT_EQ(t.steps[1].mover, cfg.first_mover == AgentId::agent0 ? Mover::agent0 : Mover::agent1);
    EXPECT_EQ(t.switch_counts, sw);
  }
}

TEST(AlternateIterate, ObservableFixedPointsAreEquilibria) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const FactoredCamdp m = oracle::random_model(Dims{1, 2, 1, 2, 2}, seed);
    const SolverConfig cfg = config(0.9);
    const ValueMatrix vm = enumerate_value_matrix(m, cfg);
    const auto ne = find_nash_equilibria(vm);
    const IterationTrace t = alternate_iterate(m, oracle::random_policy(m.dims, seed), cfg);
    ASSERT_EQ(t.outcome, Outcome::converged);
    const long i = vm.space.index_of(AgentId::agent0, t.final_policy().pi0);
    const long j = vm.space.index_of(AgentId::agent1, t.final_policy().pi1);
    EXPECT_TRUE(std::any_of(ne.begin(), ne.end(),
                            [&](const NashCell& c) { return c.row == i && c.col == j; }));
  }
}

TEST(AlternateIterate, CoordinationGameConverges) {
  const IterationTrace t = alternate_iterate(coordination_game(), {{0}, {1}}, config(0.9));
  EXPECT_EQ(t.outcome, Outcome::converged);
  EXPECT_EQ(t.final_policy(), (JointPolicy{{1}, {1}}));
}

TEST(SimultaneousIterate, CoordinationGameOscillates) {
  const IterationTrace t = simultaneous_iterate(coordination_game(), {{0}, {1}}, config(0.9));
  EXPECT_EQ(t.outcome, Outcome::oscillating);
  ASSERT_EQ(t.cycle.size(), 2u);
  EXPECT_EQ(t.cycle[0], (JointPolicy{{1}, {0}}));
  EXPECT_EQ(t.cycle[1], (JointPolicy{{0}, {1}}));
  for (std::size_t k = 1; k < t.steps.size(); ++k) EXPECT_EQ(t.steps[k].mover, Mover::both);
}

TEST(SimultaneousIterate, FixedPointConvergesImmediately) {
  const IterationTrace t = simultaneous_iterate(coordination_game(), {{1}, {1}}, config(0.9));
  EXPECT_EQ(t.outcome, Outcome::converged);
  EXPECT_EQ(t.rounds, 1);
}

void expect_same_trace(const IterationTrace& a, const IterationTrace& b) {
  ASSERT_EQ(a.steps.size(), b.steps.size());
  EXPECT_EQ(a.outcome, b.outcome);
  for (std::size_t k = 0; k < a.steps.size(); ++k) {
    EXPECT_EQ(a.steps[k].policy, b.steps[k].policy);
    EXPECT_EQ(a.steps[k].value, b.steps[k].value);
    EXPECT_EQ(a.steps[k].mover, b.steps[k].mover);
  }
}

TEST(EpsilonGreedy, ZeroEpsilonEqualsAlternating) {
  SolverConfig cfg = config(kCaseStudyGamma);
  cfg.epsilon_explore = 0.0;
  cfg.first_mover = AgentId::agent1;  // ignored by the epsilon-greedy driver
  SolverConfig alt = cfg;
  alt.first_mover = AgentId::agent0;
  expect_same_trace(epsilon_greedy_iterate(case_study_model(), case_study_initial_policy(), cfg),
                    alternate_iterate(case_study_model(), case_study_initial_policy(), alt));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const FactoredCamdp m = oracle::random_model(Dims{2, 2, 2, 2, 2}, seed);
    const JointPolicy start = oracle::random_policy(m.dims, seed);
    expect_same_trace(epsilon_greedy_iterate(m, start, cfg), alternate_iterate(m, start, alt));
  }
}

TEST(EpsilonGreedy, DeterministicPerSeed) {
  SolverConfig cfg = config(kCaseStudyGamma);
  cfg.epsilon_explore = 0.3;
  cfg.seed = 17;
  const auto a = epsilon_greedy_iterate(case_study_model(), case_study_initial_policy(), cfg);
  const auto b = epsilon_greedy_iterate(case_study_model(), case_study_initial_policy(), cfg);
  expect_same_trace(a, b);
  bool any_explored = false;
  bool any_differs = false;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    cfg.seed = seed;
    const auto t = epsilon_greedy_iterate(case_study_model(), case_study_initial_policy(), cfg);
    for (const auto& s : t.steps) any_explored = any_explored || s.explored;
    any_differs = any_differs || t.steps.size() != a.steps.size();
  }
  EXPECT_TRUE(any_explored);
  EXPECT_TRUE(any_differs);
}

TEST(EpsilonGreedy, ExplorationBlocksConvergence) {
  SolverConfig cfg = config(0.9);
  cfg.epsilon_explore = 1.0;
  cfg.max_iterations = 15;
  const auto t = epsilon_greedy_iterate(case_study_model(), case_study_initial_policy(), cfg);
  EXPECT_EQ(t.outcome, Outcome::max_iterations);
  EXPECT_EQ(t.rounds, 15);
}

TEST(LossBound, IsEtaOverOneMinusGamma) {
  const FactoredCamdp m = oracle::random_model(Dims{2, 2, 2, 2, 2}, 2);
  SolverConfig cfg = config(0.9);
  cfg.eta = 0.05;
  const Eigen::VectorXd b = loss_bound(m, oracle::random_policy(m.dims, 3), cfg);
  for (int i = 0; i < b.size(); ++i) EXPECT_NEAR(b(i), 0.05 / (1 - 0.9), 1e-12);
  cfg.eta = 0.0;
  EXPECT_EQ(loss_bound(m, oracle::random_policy(m.dims, 3), cfg).cwiseAbs().maxCoeff(), 0.0);
}

}  // namespace
}  // namespace camdp
