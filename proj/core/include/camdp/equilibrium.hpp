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

// Brute-force analysis of the identical-payoff game between the two agents:
// rows are Agent0 sub-policies, columns are Agent1 sub-policies and each
// entry is the scalar value of the joint policy.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "camdp/evaluation.hpp"
#include "camdp/model.hpp"
#include "camdp/policy_engine.hpp"

namespace camdp {

inline constexpr long kEnumerationCap = 65536;
inline constexpr double kValueTolerance = 1e-9;

/// Bijection between policy indices and sub-policies. A sub-policy is read
/// as a base-na number with cell 0 as the most significant digit.
class PolicySpace {
 public:
  explicit PolicySpace(const Dims& dims);

  const Dims& dims() const { return dims_; }
  long rows() const { return rows_; }
  long cols() const { return cols_; }
  /// rows() * cols(), or -1 when it does not fit in a long.
  long joint_count() const { return joint_; }

  SubPolicy sub_policy(AgentId agent, long index) const;
  long index_of(AgentId agent, const SubPolicy& policy) const;
  JointPolicy joint(long row, long col) const;

 private:
  Dims dims_;
  long rows_ = 0;
  long cols_ = 0;
  long joint_ = 0;
};

/// Number of joint policies, saturating at LONG_MAX.
long joint_policy_count(const Dims& dims);

struct ValueMatrix {
  Eigen::MatrixXd values;
  double gamma = 0.0;
  Aggregator aggregator = Aggregator::max;
  /// Smallest difference between two entries; +inf for a single entry.
  double min_gap = 0.0;
  PolicySpace space{Dims{}};

  long rows() const { return values.rows(); }
  long cols() const { return values.cols(); }
  double max() const { return values.maxCoeff(); }
  JointPolicy policy(long row, long col) const { return space.joint(row, col); }
  double value_of(const JointPolicy& p) const;
};

/// Evaluates every joint policy exactly. Throws SizeError above `cap`.
ValueMatrix enumerate_value_matrix(const FactoredCamdp& model, const SolverConfig& cfg,
                                   long cap = kEnumerationCap);

/// Sorted-adjacent-difference minimum over all entries.
double min_gap(const Eigen::MatrixXd& values);

struct NashCell {
  long row = 0;
  long col = 0;
  double value = 0.0;
};

/// Pure equilibria: entries that are maximal in their column and in their
/// row, within `tol`. Sorted by value descending, then by (row, col).
std::vector<NashCell> find_nash_equilibria(const ValueMatrix& vm,
                                           double tol = kValueTolerance);

struct DominanceCounts {
  /// columns holding the maximum of at least one row
  long n_dc = 0;
  /// rows holding the maximum of at least one column
  long n_dr = 0;
  long ne_bound() const { return std::min(n_dc, n_dr); }
};

DominanceCounts dominance_counts(const ValueMatrix& vm, double tol = kValueTolerance);

/// A row that is maximal in every column, or a column maximal in every row.
struct DominantLine {
  bool holds = false;
  std::optional<long> row;
  std::optional<long> col;
};

DominantLine check_dominant_line(const ValueMatrix& vm, double tol = kValueTolerance);

/// True iff, under every joint policy's exact value function, each agent's
/// greedy action in each cell is the same at every composite state of the
/// cell.
bool check_observability(const FactoredCamdp& model, const SolverConfig& cfg,
                         long cap = kEnumerationCap);

/// The same per-cell agreement test under a single joint policy.
bool observable_under(const FactoredCamdp& model, const JointPolicy& policy,
                      const SolverConfig& cfg);

struct ConvergenceRun {
  JointPolicy initial;
  AgentId first_mover = AgentId::agent0;
  /// "converged", "oscillating", "max-iterations" or "best-response-failure"
  std::string outcome;
  std::optional<JointPolicy> terminal;
  double value = 0.0;
  int round_reaching_final = 0;
  bool reached_max = false;
};

struct GlobalConvergence {
  bool holds = false;
  /// Count of runs per terminal tag ("converged [..] [..]" or failure kind).
  std::map<std::string, long> basin;
  std::vector<ConvergenceRun> runs;
  MonotonicityLog monotonicity;
};

/// Runs alternate_iterate from every joint policy under both first-mover
/// orders. Holds iff every run converges to a joint policy whose value is
/// within kValueTolerance of the matrix maximum.
GlobalConvergence check_global_convergence(const FactoredCamdp& model,
                                           const SolverConfig& cfg,
                                           const ValueMatrix& vm);
GlobalConvergence check_global_convergence(const FactoredCamdp& model,
                                           const SolverConfig& cfg,
                                           long cap = kEnumerationCap);

struct ConditionReport {
  DominantLine dominant_line;
  bool observable = false;
  /// Agreement test under the maximizing joint policy only (diagnostic).
  bool observable_at_optimum = false;
  GlobalConvergence convergence;
  DominanceCounts dominance;
  std::vector<NashCell> nash_equilibria;
  double value_max = 0.0;
  double min_gap = 0.0;

  bool cond1() const { return dominant_line.holds; }
  bool cond2() const { return observable; }
  bool cond3() const { return convergence.holds; }
  /// A dominant line together with observability guarantees global convergence.
  bool implication_holds() const { return !(cond1() && cond2()) || cond3(); }
  bool ne_bound_holds() const {
    return static_cast<long>(nash_equilibria.size()) <= dominance.ne_bound();
  }
};

ConditionReport analyze_conditions(const FactoredCamdp& model, const SolverConfig& cfg,
                                   long cap = kEnumerationCap);

}  // namespace camdp
