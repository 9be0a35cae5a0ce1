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

#include <optional>
#include <string_view>

#include <Eigen/Dense>

#include "camdp/model.hpp"

namespace camdp {

/// How a per-state value vector is collapsed into one policy value.
enum class Aggregator { max, mean };

std::string_view to_string(Aggregator aggregator);
std::optional<Aggregator> parse_aggregator(std::string_view text);

enum class EvalMethod { exact_solve, iterative_sweep };

std::string_view to_string(EvalMethod method);

struct EvaluationResult {
  Eigen::VectorXd v;
  double gamma = 0.0;
  /// Average reward per transition; filled only when requested.
  std::optional<double> gain;
  EvalMethod method = EvalMethod::exact_solve;
  /// max_i |v_i - r_exp_i - gamma (pbar v)_i|
  double residual = 0.0;
  int sweeps = 0;
};

/// Solves (I - gamma pbar) v = r_exp. Throws DomainError for gamma outside
/// [0, 1) and NumericError if the solve does not reach a 1e-10 residual.
EvaluationResult evaluate_exact(const AugmentedDynamics& dyn, double gamma,
                                bool with_gain = false);

/// Synchronous Bellman backups v <- r_exp + gamma pbar v starting at
/// v = r_exp, stopping once the largest per-state change drops below theta.
EvaluationResult evaluate_iterative(const AugmentedDynamics& dyn, double gamma,
                                    double theta);

/// Stationary distribution mu of pbar (mu pbar = mu, sum mu = 1).
/// Throws StructureError unless pbar is irreducible and aperiodic.
Eigen::VectorXd stationary_distribution(const AugmentedDynamics& dyn);

/// g = mu . r_exp, the long-run average reward per transition.
double average_reward(const AugmentedDynamics& dyn);

double scalar_value(const Eigen::VectorXd& v, Aggregator aggregator);
inline double scalar_value(const EvaluationResult& result, Aggregator aggregator) {
  return scalar_value(result.v, aggregator);
}

double bellman_residual(const AugmentedDynamics& dyn, const Eigen::VectorXd& v,
                        double gamma);

/// Solves (I - gamma p) x = rhs for a stochastic matrix p.
Eigen::VectorXd solve_discounted(const Eigen::MatrixXd& p, double gamma,
                                 const Eigen::VectorXd& rhs);

void check_gamma(double gamma);

}  // namespace camdp
