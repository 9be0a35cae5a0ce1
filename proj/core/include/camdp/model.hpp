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

// Factored two-agent model: the state space splits into an Agent0-only
// factor S0, a shared factor Ss and an Agent1-only factor S1. Agent0 observes
// (s0, ss), Agent1 observes (s1, ss). Transitions and rewards factor as
//
//   P((s0',ss',s1') | (s0,ss,s1), a0, a1) = P0[a0](s0,s0') Ps[a0][a1](ss,ss') P1[a1](s1,s1')
//   R((s0,ss,s1) -> (s0',ss',s1'))         = R0[a0](s0,s0') Rs[a0][a1](ss,ss') R1[a1](s1,s1')
//
// Composite states are ordered s0-major, then ss, then s1, which is the
// row order of the Kronecker product P0 (x) Ps (x) P1.

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace camdp {

inline constexpr double kRowSumTolerance = 1e-9;

struct Dims {
  int ns0 = 1;
  int nss = 1;
  int ns1 = 1;
  int na0 = 1;
  int na1 = 1;

  int composite_count() const { return ns0 * nss * ns1; }
  /// Observation cells (s0, ss) of Agent0.
  int agent0_cells() const { return ns0 * nss; }
  /// Observation cells (s1, ss) of Agent1.
  int agent1_cells() const { return ns1 * nss; }

  friend bool operator==(const Dims&, const Dims&) = default;
};

enum class AgentId { agent0 = 0, agent1 = 1 };

std::string_view to_string(AgentId agent);
AgentId other(AgentId agent);

/// Deterministic per-agent policy: one action per observation cell.
using SubPolicy = std::vector<int>;

/// pi0[s0 * nss + ss] is Agent0's action; pi1[s1 * nss + ss] is Agent1's.
struct JointPolicy {
  SubPolicy pi0;
  SubPolicy pi1;

  const SubPolicy& of(AgentId agent) const {
    return agent == AgentId::agent0 ? pi0 : pi1;
  }
  SubPolicy& of(AgentId agent) {
    return agent == AgentId::agent0 ? pi0 : pi1;
  }

  friend auto operator<=>(const JointPolicy&, const JointPolicy&) = default;
};

std::string format_policy(const SubPolicy& policy);

/// Six action-indexed tensors stored flat and row-major:
///   p0/r0 : [a0][s0][s0']
///   ps/rs : [a0][a1][ss][ss']
///   p1/r1 : [a1][s1][s1']
struct FactoredCamdp {
  Dims dims;
  std::vector<double> p0, ps, p1;
  std::vector<double> r0, rs, r1;

  static std::size_t agent0_tensor_size(const Dims& d) {
    return static_cast<std::size_t>(d.na0) * d.ns0 * d.ns0;
  }
  static std::size_t shared_tensor_size(const Dims& d) {
    return static_cast<std::size_t>(d.na0) * d.na1 * d.nss * d.nss;
  }
  static std::size_t agent1_tensor_size(const Dims& d) {
    return static_cast<std::size_t>(d.na1) * d.ns1 * d.ns1;
  }

  /// Allocates zero-filled tensors of the right shapes.
  static FactoredCamdp zeros(const Dims& d);

  std::size_t p0_index(int a0, int s0, int t0) const {
    return (static_cast<std::size_t>(a0) * dims.ns0 + s0) * dims.ns0 + t0;
  }
  std::size_t ps_index(int a0, int a1, int ss, int ts) const {
    return ((static_cast<std::size_t>(a0) * dims.na1 + a1) * dims.nss + ss) *
               dims.nss + ts;
  }
  std::size_t p1_index(int a1, int s1, int t1) const {
    return (static_cast<std::size_t>(a1) * dims.ns1 + s1) * dims.ns1 + t1;
  }
};

struct CompositeState {
  int s0 = 0;
  int ss = 0;
  int s1 = 0;
  friend bool operator==(const CompositeState&, const CompositeState&) = default;
};

/// s0 * (nss * ns1) + ss * ns1 + s1. Throws DimensionError when out of range.
int composite_index(int s0, int ss, int s1, const Dims& dims);
CompositeState decompose_index(int index, const Dims& dims);

inline int agent0_cell(int s0, int ss, const Dims& d) { return s0 * d.nss + ss; }
inline int agent1_cell(int s1, int ss, const Dims& d) { return s1 * d.nss + ss; }

struct Violation {
  enum class Kind { shape, range, row_sum, positivity, empty_dimension };
  Kind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::size_t count(Violation::Kind kind) const;
  std::vector<std::string> messages() const;
};

ValidationReport validate(const FactoredCamdp& model);

/// Divides every transition row by its sum. Intended to run once at load
/// time on rows already within kRowSumTolerance of 1.
void renormalize_rows(FactoredCamdp& model);

/// Throws DimensionError unless the policy fits the model's dimensions and
/// action counts.
void check_policy(const FactoredCamdp& model, const JointPolicy& policy);

struct AugmentedDynamics {
  Eigen::MatrixXd pbar;   ///< composite transition matrix
  Eigen::MatrixXd rbar;   ///< per-transition composite reward
  Eigen::VectorXd r_exp;  ///< r_exp[i] = sum_j pbar(i,j) rbar(i,j)

  int size() const { return static_cast<int>(r_exp.size()); }
};

/// Fills `prob` with the composite transition row out of `state` under the
/// action pair (a0, a1) and returns the expected immediate reward.
double composite_row(const FactoredCamdp& model, const CompositeState& state,
                     int a0, int a1, Eigen::Ref<Eigen::VectorXd> prob);

/// Composite dynamics under a joint policy, composed row by row.
AugmentedDynamics augment(const FactoredCamdp& model, const JointPolicy& policy);

/// Full Kronecker product of three dense matrices, A (x) B (x) C.
Eigen::MatrixXd kron3(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                      const Eigen::MatrixXd& c);

/// Extracts a single action's component matrix as a dense Eigen matrix.
Eigen::MatrixXd p0_matrix(const FactoredCamdp& model, int a0);
Eigen::MatrixXd ps_matrix(const FactoredCamdp& model, int a0, int a1);
Eigen::MatrixXd p1_matrix(const FactoredCamdp& model, int a1);

}  // namespace camdp
