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

#include "camdp/evaluation.hpp"

#include <cmath>
#include <sstream>

#include "camdp/chain_structure.hpp"
#include "camdp/errors.hpp"

namespace camdp {

namespace {
constexpr double kExactResidualLimit = 1e-10;
}

std::string_view to_string(Aggregator aggregator) {
  return aggregator == Aggregator::max ? "max" : "mean";
}

std::optional<Aggregator> parse_aggregator(std::string_view text) {
  if (text == "max") return Aggregator::max;
  if (text == "mean") return Aggregator::mean;
  return std::nullopt;
}

std::string_view to_string(EvalMethod method) {
  return method == EvalMethod::exact_solve ? "exact-solve" : "iterative-sweep";
}

void check_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    std::ostringstream os;
    os << "discount factor " << gamma << " outside [0, 1)";
    throw DomainError(os.str());
  }
}

double bellman_residual(const AugmentedDynamics& dyn, const Eigen::VectorXd& v,
                        double gamma) {
  return (v - dyn.r_exp - gamma * (dyn.pbar * v)).cwiseAbs().maxCoeff();
}

Eigen::VectorXd solve_discounted(const Eigen::MatrixXd& p, double gamma,
                                 const Eigen::VectorXd& rhs) {
  check_gamma(gamma);
  const Eigen::Index n = p.rows();
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - gamma * p;
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  Eigen::VectorXd x = lu.solve(rhs);
  // one refinement step keeps the residual at rounding level for gamma near 1
  x += lu.solve(rhs - a * x);
  if (!x.allFinite()) throw NumericError("discounted system is singular");
  return x;
}

EvaluationResult evaluate_exact(const AugmentedDynamics& dyn, double gamma,
                                bool with_gain) {
  check_gamma(gamma);
  EvaluationResult out;
  out.gamma = gamma;
  out.method = EvalMethod::exact_solve;
  out.v = solve_discounted(dyn.pbar, gamma, dyn.r_exp);
  out.residual = bellman_residual(dyn, out.v, gamma);
  const double scale = std::max(1.0, out.v.cwiseAbs().maxCoeff());
  if (!(out.residual <= kExactResidualLimit * scale)) {
    std::ostringstream os;
    os << "exact evaluation residual " << out.residual << " exceeds limit";
    throw NumericError(os.str());
  }
  if (with_gain) out.gain = average_reward(dyn);
  return out;
}

EvaluationResult evaluate_iterative(const AugmentedDynamics& dyn, double gamma,
                                    double theta) {
  check_gamma(gamma);
  if (!(theta > 0.0)) throw DomainError("evaluation tolerance must be positive");
  EvaluationResult out;
  out.gamma = gamma;
  out.method = EvalMethod::iterative_sweep;
  Eigen::VectorXd v = dyn.r_exp;
  for (;;) {
    Eigen::VectorXd next = dyn.r_exp + gamma * (dyn.pbar * v);
    const double delta = (next - v).cwiseAbs().maxCoeff();
    v = std::move(next);
    ++out.sweeps;
    if (delta < theta) break;
  }
  out.v = std::move(v);
  out.residual = bellman_residual(dyn, out.v, gamma);
  return out;
}

Eigen::VectorXd stationary_distribution(const AugmentedDynamics& dyn) {
  const ChainStructure structure = analyze_chain(dyn.pbar);
  if (!structure.irreducible) {
    throw StructureError("transition matrix is reducible; stationary distribution "
                         "is not unique");
  }
  if (structure.period != 1) {
    throw StructureError("transition matrix is periodic (period " +
                         std::to_string(structure.period) + ")");
  }
  const Eigen::Index n = dyn.pbar.rows();
  // (P^T - I) mu = 0 with the last equation replaced by sum(mu) = 1.
  Eigen::MatrixXd a = dyn.pbar.transpose() - Eigen::MatrixXd::Identity(n, n);
  a.row(n - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b[n - 1] = 1.0;
  Eigen::VectorXd mu = a.fullPivLu().solve(b);
  if (!mu.allFinite()) throw NumericError("stationary distribution solve failed");
  return mu;
}

double average_reward(const AugmentedDynamics& dyn) {
  return stationary_distribution(dyn).dot(dyn.r_exp);
}

double scalar_value(const Eigen::VectorXd& v, Aggregator aggregator) {
  return aggregator == Aggregator::max ? v.maxCoeff() : v.mean();
}

}  // namespace camdp
