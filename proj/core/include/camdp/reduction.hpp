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

// Policy-space reduction: value-based pruning of sub-policies and equality
// constraints that force groups of cells to share one action.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "camdp/equilibrium.hpp"
#include "camdp/model.hpp"
#include "camdp/policy_engine.hpp"

namespace camdp {

/// Cells of one agent partitioned into classes; every cell in a class takes
/// the same action.
struct PolicyConstraint {
  AgentId agent = AgentId::agent0;
  std::vector<std::vector<int>> classes;
  std::string label;

  /// Throws DomainError unless classes partition the agent's cells.
  void validate(const Dims& dims) const;
  long policy_count(const Dims& dims) const;
  bool admits(const SubPolicy& policy) const;
  /// All admitted sub-policies, class assignments in base-na order with
  /// class 0 most significant.
  std::vector<SubPolicy> policies(const Dims& dims) const;
};

/// "s0-only" (Agent0 action depends on s0), "ss-only" (Agent0 action
/// depends on ss) or "s1-only" (Agent1 action depends on s1).
std::optional<PolicyConstraint> constraint_preset(std::string_view name, const Dims& dims);
std::vector<std::string> constraint_preset_names();

/// One singleton class per cell.
PolicyConstraint vacuous_constraint(AgentId agent, const Dims& dims);

/// Parses "agent0:0,2;1,3" into a constraint. Throws DomainError on bad
/// syntax or when the classes do not partition the cells.
PolicyConstraint parse_partition(std::string_view text, const Dims& dims);

struct ReductionReport {
  std::string label;
  AgentId agent = AgentId::agent0;
  long original_count = 0;
  long reduced_count = 0;
  double best_original = 0.0;
  double best_reduced = 0.0;
  double delta_v = 0.0;
  /// max minus min value over the constrained joint policies
  double spread = 0.0;
  JointPolicy best_original_policy;
  JointPolicy best_reduced_policy;
};

ReductionReport constrained_best(const ValueMatrix& vm, const PolicyConstraint& constraint);
ReductionReport constrained_best(const FactoredCamdp& model,
                                 const PolicyConstraint& constraint,
                                 const SolverConfig& cfg, long cap = kEnumerationCap);

/// Indices of `agent`'s sub-policies whose best value over every opponent
/// sub-policy is at most `threshold`, ascending.
std::vector<long> prune_by_value(const ValueMatrix& vm, double threshold, AgentId agent);

/// Offline replay of pruning over recorded traces: how many visited steps
/// used a prunable sub-policy and the best value among them.
struct PruneReplay {
  long steps = 0;
  long prunable_steps = 0;
  std::optional<double> best_prunable_value;
};

PruneReplay replay_pruning(const std::vector<IterationTrace>& traces,
                           const ValueMatrix& vm, double threshold);

}  // namespace camdp
