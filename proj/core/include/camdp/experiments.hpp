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

#pragma once

// Experiment drivers behind the command-line tool.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "camdp/equilibrium.hpp"
#include "camdp/generator.hpp"
#include "camdp/policy_engine.hpp"

namespace camdp {

struct GammaSweep {
  std::vector<double> gammas;
  std::vector<JointPolicy> policies;
  /// values[p][g] is the per-state value of policy p at gammas[g].
  std::vector<std::vector<Eigen::VectorXd>> values;
  /// (max - min) / mean of values[p][g].
  std::vector<std::vector<double>> relative_spread;
};

GammaSweep run_gamma_sweep(const FactoredCamdp& model,
                           const std::vector<JointPolicy>& policies,
                           const std::vector<double>& gammas);

/// Long format: one row per (policy, gamma) with per-state values and the
/// spread columns.
std::string gamma_sweep_to_csv(const GammaSweep& sweep, const std::string& config_json);

struct McModelResult {
  long index = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  ConditionReport report;
  /// Converged runs whose terminal policy is not a pure equilibrium.
  long terminal_not_ne = 0;
  /// The same restricted to models passing the observability check.
  long terminal_not_ne_observable = 0;
  /// With a dominant line and observability: runs that failed to reach the maximum within two
  /// full rounds.
  long dominant_line_slow_runs = 0;
};

struct McSummary {
  long count = 0;
  long failures = 0;
  long cond1 = 0;
  long cond2 = 0;
  long cond3 = 0;
  long cond12 = 0;
  long implication_violations = 0;
  /// Diagnostics with observability tested under the optimum only.
  long cond2_at_optimum = 0;
  long cond1_and_cond2_at_optimum = 0;
  long weak_implication_violations = 0;
  long ne_bound_violations = 0;
  long terminal_not_ne = 0;
  long terminal_not_ne_observable = 0;
  long dominant_line_slow_runs = 0;
  long zero_gap_models = 0;
  MonotonicityLog monotonicity;
  std::vector<McModelResult> models;
};

/// Generates `count` models with seeds base.seed + index and analyzes each.
/// Per-initial runs are dropped from the stored reports after tallying.
/// `threads` = 0 uses the hardware concurrency. Results do not depend on the
/// thread count.
McSummary run_mc_conditions(const GeneratorSpec& base, long count, const SolverConfig& cfg,
                            unsigned threads = 0);

std::string mc_summary_to_csv(const McSummary& summary, const std::string& config_json);

struct CaseStudyReport {
  ValueMatrix vm;
  std::vector<NashCell> nash;
  IterationTrace alternating;
  /// Epsilon-greedy with epsilon = 0 from the same start.
  IterationTrace greedy_baseline;
  std::vector<std::uint64_t> seeds;
  std::vector<IterationTrace> exploring;
  /// Seeds whose run terminated at the matrix maximum.
  long terminated_at_max = 0;
  /// Seeds whose run visited the matrix maximum at some step.
  long visited_max = 0;
  bool baseline_visits_max = false;
};

/// Uses the built-in case-study fixture and start policy. Seeds are
/// cfg.seed + k for k < seed_count.
CaseStudyReport run_case_study(const SolverConfig& cfg, int seed_count);

bool trace_visits_value(const IterationTrace& trace, double value,
                        double tol = kValueTolerance);

}  // namespace camdp
