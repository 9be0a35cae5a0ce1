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

#include <benchmark/benchmark.h>

#include "camdp/equilibrium.hpp"
#include "camdp/evaluation.hpp"
#include "camdp/fixtures.hpp"
#include "camdp/generator.hpp"
#include "camdp/policy_engine.hpp"

namespace {

using namespace camdp;

FactoredCamdp model_with(int ns, int na) {
  GeneratorSpec spec;
  spec.dims = Dims{ns, ns, ns, na, na};
  spec.seed = 1;
  return random_camdp(spec);
}

void BM_Augment(benchmark::State& state) {
  const int ns = static_cast<int>(state.range(0));
  const FactoredCamdp m = model_with(ns, 2);
  const JointPolicy p{SubPolicy(m.dims.agent0_cells(), 1), SubPolicy(m.dims.agent1_cells(), 0)};
  for (auto _ : state) benchmark::DoNotOptimize(augment(m, p));
  state.SetComplexityN(m.dims.composite_count());
}
BENCHMARK(BM_Augment)->Arg(2)->Arg(3)->Arg(4)->Arg(5)->Complexity();

void BM_EvaluateExact(benchmark::State& state) {
  const FactoredCamdp m = model_with(static_cast<int>(state.range(0)), 2);
  const AugmentedDynamics dyn =
      augment(m, {SubPolicy(m.dims.agent0_cells(), 0), SubPolicy(m.dims.agent1_cells(), 1)});
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_exact(dyn, 0.9));
}
BENCHMARK(BM_EvaluateExact)->Arg(2)->Arg(3)->Arg(4)->Arg(5);

void BM_EvaluateIterative(benchmark::State& state) {
  const FactoredCamdp m = model_with(static_cast<int>(state.range(0)), 2);
  const AugmentedDynamics dyn =
      augment(m, {SubPolicy(m.dims.agent0_cells(), 0), SubPolicy(m.dims.agent1_cells(), 1)});
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_iterative(dyn, 0.9, 1e-6));
}
BENCHMARK(BM_EvaluateIterative)->Arg(2)->Arg(3)->Arg(4)->Arg(5);

void BM_CaseStudyEnumerate(benchmark::State& state) {
  const FactoredCamdp m = case_study_model();
  SolverConfig cfg;
  cfg.gamma = kCaseStudyGamma;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_value_matrix(m, cfg));
}
BENCHMARK(BM_CaseStudyEnumerate);

void BM_CaseStudyAlternate(benchmark::State& state) {
  const FactoredCamdp m = case_study_model();
  SolverConfig cfg;
  cfg.gamma = kCaseStudyGamma;
  for (auto _ : state) {
    benchmark::DoNotOptimize(alternate_iterate(m, case_study_initial_policy(), cfg));
  }
}
BENCHMARK(BM_CaseStudyAlternate);

void BM_Conditions(benchmark::State& state) {
  GeneratorSpec spec;
  spec.seed = 3;
  const FactoredCamdp m = random_camdp(spec);
  SolverConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(analyze_conditions(m, cfg));
}
BENCHMARK(BM_Conditions)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
