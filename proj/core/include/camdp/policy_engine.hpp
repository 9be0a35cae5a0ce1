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

// Policy improvement and the two-agent iteration drivers.
//
// Each agent improves its own sub-policy by policy iteration against the
// other agent's fixed sub-policy. An agent's observation cell covers several
// composite states (Agent0's cell (s0, ss) covers every s1), so the greedy
// action is computed at each covered state. When those argmaxes agree the
// cell is "consistent" and the agent acts exactly as a fully informed agent
// would; otherwise it falls back to the argmax of the uniform average of Q
// over the unobserved coordinate.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "camdp/evaluation.hpp"
#include "camdp/model.hpp"

namespace camdp {

enum class ImprovementMode { full_info, partial_info };
enum class TieBreak { lowest_action_index };

std::string_view to_string(ImprovementMode mode);
std::optional<ImprovementMode> parse_improvement_mode(std::string_view text);
std::optional<AgentId> parse_agent(std::string_view text);

struct SolverConfig {
  double gamma = 0.9;
  double theta = 1e-6;
  double epsilon_explore = 0.1;
  /// Minimum advantage before Agent0 switches a cell's action.
  double eta = 0.0;
  int max_iterations = 1000;
  Aggregator aggregator = Aggregator::max;
  AgentId first_mover = AgentId::agent0;
  ImprovementMode improvement_mode = ImprovementMode::full_info;
  TieBreak tie_break = TieBreak::lowest_action_index;
  std::uint64_t seed = 0;

  /// Throws DomainError when a field is outside its range.
  void validate() const;
};

/// Q values of one observation cell: q[u][a] for unobserved coordinate u
/// (s1 for Agent0, s0 for Agent1) and candidate action a.
struct CellActionValues {
  int cell = 0;
  std::vector<std::vector<double>> q;
};

std::vector<CellActionValues> cell_action_values(const FactoredCamdp& model,
                                                 const JointPolicy& policy,
                                                 const Eigen::VectorXd& v,
                                                 double gamma, AgentId which);

struct ImprovementResult {
  SubPolicy policy;
  bool changed = false;
  /// 1 where the per-state argmax agreed across the unobserved coordinate.
  std::vector<char> cell_consistent;
  /// 1 where the cell's action was changed.
  std::vector<char> cell_changed;

  bool consistent() const;
  /// Every changed cell took its per-state argmax. Under this condition the
  /// new value vector dominates the old one.
  bool changed_cells_consistent() const;
};

ImprovementResult improve_agent(const FactoredCamdp& model,
                                const JointPolicy& policy,
                                const Eigen::VectorXd& v, const SolverConfig& cfg,
                                AgentId which);

/// Agent0 improvement that keeps a cell's action unless the best action's
/// advantage reaches cfg.eta at some composite state of the cell.
ImprovementResult revised_improve(const FactoredCamdp& model,
                                  const JointPolicy& policy,
                                  const Eigen::VectorXd& v,
                                  const SolverConfig& cfg);

/// Tally of accepted improvement steps and whether each one raised the value
/// vector entrywise.
struct MonotonicityLog {
  long accepted_steps = 0;
  /// accepted steps whose changed cells were all consistent
  long consistent_steps = 0;
  /// consistent steps whose value vector decreased somewhere beyond slack
  long violations = 0;
  /// most negative entry of v_new - v_old seen on a consistent step
  double worst_change = 0.0;

  void merge(const MonotonicityLog& other);
};

inline constexpr double kMonotoneSlack = 1e-9;

struct BestResponse {
  SubPolicy policy;
  int improvement_steps = 0;
  /// Consistency of the final (stability-certifying) improvement step.
  bool final_consistent = true;
  MonotonicityLog monotonicity;
};

/// Single-agent policy iteration for `mover` against the fixed sub-policy
/// `other`, starting from `start`. Agent0 uses the eta-threshold rule.
/// Throws NonConvergenceError if the own policy revisits an earlier one or
/// cfg.max_iterations improvement steps pass without stabilizing.
BestResponse best_response(const FactoredCamdp& model, AgentId mover,
                           const SubPolicy& other, const SubPolicy& start,
                           const SolverConfig& cfg);

enum class Mover { initial, agent0, agent1, both };
enum class Outcome { converged, oscillating, max_iterations };

std::string_view to_string(Mover mover);
std::string_view to_string(Outcome outcome);

struct TraceStep {
  Mover mover = Mover::initial;
  int round = 0;
  JointPolicy policy;
  double value = 0.0;
  std::vector<double> v;
  /// Exploration fired during this step (epsilon-greedy driver only).
  bool explored = false;
  /// Cumulative cell switches of {agent0, agent1} up to and including this step.
  std::array<int, 2> switches{0, 0};
};

struct IterationTrace {
  std::vector<TraceStep> steps;
  Outcome outcome = Outcome::max_iterations;
  /// Joint policies of the repeating segment when oscillating.
  std::vector<JointPolicy> cycle;
  std::array<int, 2> switch_counts{0, 0};
  int rounds = 0;
  MonotonicityLog monotonicity;

  const JointPolicy& final_policy() const { return steps.back().policy; }
  double final_value() const { return steps.back().value; }
  /// Round in which the final joint policy was first reached (0 = initial).
  int round_reaching_final() const;
};

/// Agents take turns computing full best responses, starting with
/// cfg.first_mover.
IterationTrace alternate_iterate(const FactoredCamdp& model,
                                 const JointPolicy& initial,
                                 const SolverConfig& cfg);

/// Both agents best-respond to the same snapshot, then switch together.
IterationTrace simultaneous_iterate(const FactoredCamdp& model,
                                    const JointPolicy& initial,
                                    const SolverConfig& cfg);

/// Agent0 best-responds greedily (eta-threshold rule); Agent1 best-responds
/// and then re-draws each cell uniformly at random with probability
/// cfg.epsilon_explore. Converges only on a full round in which no
/// exploration fired and the joint policy did not change. Agent0 always
/// moves first. Deterministic given cfg.seed.
IterationTrace epsilon_greedy_iterate(const FactoredCamdp& model,
                                      const JointPolicy& initial,
                                      const SolverConfig& cfg);

/// eta (I - gamma P^{pi*})^{-1} 1: entrywise bound on the value lost by
/// stopping improvement below the eta threshold.
Eigen::VectorXd loss_bound(const FactoredCamdp& model, const JointPolicy& pi_star,
                           const SolverConfig& cfg);

/// Number of cells whose action differs.
int hamming(const SubPolicy& a, const SubPolicy& b);

}  // namespace camdp
