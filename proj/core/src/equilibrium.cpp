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

#include "camdp/equilibrium.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <limits>

#include "camdp/errors.hpp"

namespace camdp {

namespace {

long saturating_power(int base, int exponent) {
  long out = 1;
  for (int k = 0; k < exponent; ++k) {
    if (out > LONG_MAX / base) return LONG_MAX;
    out *= base;
  }
  return out;
}

}  // namespace

long joint_policy_count(const Dims& dims) {
  const long rows = saturating_power(dims.na0, dims.agent0_cells());
  const long cols = saturating_power(dims.na1, dims.agent1_cells());
  if (rows == LONG_MAX || cols == LONG_MAX || rows > LONG_MAX / cols) return LONG_MAX;
  return rows * cols;
}

PolicySpace::PolicySpace(const Dims& dims) : dims_(dims) {
  rows_ = saturating_power(dims.na0, dims.agent0_cells());
  cols_ = saturating_power(dims.na1, dims.agent1_cells());
  const long joint = joint_policy_count(dims);
  joint_ = joint == LONG_MAX ? -1 : joint;
}

SubPolicy PolicySpace::sub_policy(AgentId agent, long index) const {
  const bool first = agent == AgentId::agent0;
  const int cells = first ? dims_.agent0_cells() : dims_.agent1_cells();
  const int na = first ? dims_.na0 : dims_.na1;
  const long limit = first ? rows_ : cols_;
  if (index < 0 || index >= limit || limit == LONG_MAX) {
    throw DimensionError("policy index " + std::to_string(index) + " out of range");
  }
  SubPolicy p(cells, 0);
  for (int c = cells - 1; c >= 0; --c) {
    p[c] = static_cast<int>(index % na);
    index /= na;
  }
  return p;
}

long PolicySpace::index_of(AgentId agent, const SubPolicy& policy) const {
  const bool first = agent == AgentId::agent0;
  const int cells = first ? dims_.agent0_cells() : dims_.agent1_cells();
  const int na = first ? dims_.na0 : dims_.na1;
  if (static_cast<int>(policy.size()) != cells) {
    throw DimensionError("sub-policy length does not match the cell count");
  }
  long index = 0;
  for (int a : policy) {
    if (a < 0 || a >= na) throw DimensionError("action out of range");
    index = index * na + a;
  }
  return index;
}

JointPolicy PolicySpace::joint(long row, long col) const {
  return {sub_policy(AgentId::agent0, row), sub_policy(AgentId::agent1, col)};
}

double ValueMatrix::value_of(const JointPolicy& p) const {
  return values(space.index_of(AgentId::agent0, p.pi0),
                space.index_of(AgentId::agent1, p.pi1));
}

double min_gap(const Eigen::MatrixXd& values) {
  std::vector<double> sorted(values.data(), values.data() + values.size());
  if (sorted.size() < 2) return std::numeric_limits<double>::infinity();
  std::sort(sorted.begin(), sorted.end());
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    gap = std::min(gap, sorted[k] - sorted[k - 1]);
  }
  return gap;
}

namespace {

void check_cap(const Dims& dims, long cap) {
  const long n = joint_policy_count(dims);
  if (n > cap) {
    throw SizeError("joint policy count " +
                    (n == LONG_MAX ? std::string("overflows") : std::to_string(n)) +
                    " exceeds the enumeration cap " + std::to_string(cap) +
                    "; constrain the policy space with the reduce command");
  }
}

}  // namespace

ValueMatrix enumerate_value_matrix(const FactoredCamdp& model, const SolverConfig& cfg,
                                   long cap) {
  check_cap(model.dims, cap);
  check_gamma(cfg.gamma);
  ValueMatrix vm;
  vm.space = PolicySpace(model.dims);
  vm.gamma = cfg.gamma;
  vm.aggregator = cfg.aggregator;
  vm.values.resize(vm.space.rows(), vm.space.cols());
  for (long i = 0; i < vm.space.rows(); ++i) {
    for (long j = 0; j < vm.space.cols(); ++j) {
      const auto ev = evaluate_exact(augment(model, vm.space.joint(i, j)), cfg.gamma);
      vm.values(i, j) = scalar_value(ev, cfg.aggregator);
    }
  }
  if (!vm.values.allFinite()) throw NumericError("non-finite value in value matrix");
  vm.min_gap = min_gap(vm.values);
  return vm;
}

std::vector<NashCell> find_nash_equilibria(const ValueMatrix& vm, double tol) {
  const Eigen::VectorXd col_max = vm.values.colwise().maxCoeff().transpose();
  const Eigen::VectorXd row_max = vm.values.rowwise().maxCoeff();
  std::vector<NashCell> out;
  for (long i = 0; i < vm.rows(); ++i) {
    for (long j = 0; j < vm.cols(); ++j) {
      const double x = vm.values(i, j);
      if (x >= col_max(j) - tol && x >= row_max(i) - tol) out.push_back({i, j, x});
    }
  }
  std::sort(out.begin(), out.end(), [](const NashCell& a, const NashCell& b) {
    if (a.value != b.value) return a.value > b.value;
    if (a.row != b.row) return a.row < b.row;
    return a.col < b.col;
  });
  return out;
}

DominanceCounts dominance_counts(const ValueMatrix& vm, double tol) {
  const Eigen::VectorXd col_max = vm.values.colwise().maxCoeff().transpose();
  const Eigen::VectorXd row_max = vm.values.rowwise().maxCoeff();
  std::vector<char> dc(vm.cols(), 0), dr(vm.rows(), 0);
  for (long i = 0; i < vm.rows(); ++i) {
    for (long j = 0; j < vm.cols(); ++j) {
      const double x = vm.values(i, j);
      if (x >= row_max(i) - tol) dc[j] = 1;
      if (x >= col_max(j) - tol) dr[i] = 1;
    }
  }
  DominanceCounts out;
  out.n_dc = std::count(dc.begin(), dc.end(), 1);
  out.n_dr = std::count(dr.begin(), dr.end(), 1);
  return out;
}

DominantLine check_dominant_line(const ValueMatrix& vm, double tol) {
  const Eigen::VectorXd col_max = vm.values.colwise().maxCoeff().transpose();
  const Eigen::VectorXd row_max = vm.values.rowwise().maxCoeff();
  DominantLine out;
  for (long i = 0; i < vm.rows() && !out.row; ++i) {
    bool all = true;
    for (long j = 0; j < vm.cols() && all; ++j) all = vm.values(i, j) >= col_max(j) - tol;
    if (all) out.row = i;
  }
  for (long j = 0; j < vm.cols() && !out.col; ++j) {
    bool all = true;
    for (long i = 0; i < vm.rows() && all; ++i) all = vm.values(i, j) >= row_max(i) - tol;
    if (all) out.col = j;
  }
  out.holds = out.row.has_value() || out.col.has_value();
  return out;
}

bool observable_under(const FactoredCamdp& model, const JointPolicy& policy,
                      const SolverConfig& cfg) {
  const Eigen::VectorXd v = evaluate_exact(augment(model, policy), cfg.gamma).v;
  return improve_agent(model, policy, v, cfg, AgentId::agent0).consistent() &&
         improve_agent(model, policy, v, cfg, AgentId::agent1).consistent();
}

bool check_observability(const FactoredCamdp& model, const SolverConfig& cfg, long cap) {
  check_cap(model.dims, cap);
  const PolicySpace space(model.dims);
  for (long i = 0; i < space.rows(); ++i) {
    for (long j = 0; j < space.cols(); ++j) {
      if (!observable_under(model, space.joint(i, j), cfg)) return false;
    }
  }
  return true;
}

GlobalConvergence check_global_convergence(const FactoredCamdp& model,
                                           const SolverConfig& cfg,
                                           const ValueMatrix& vm) {
  GlobalConvergence out;
  out.holds = true;
  const double best = vm.max();
  for (AgentId first : {AgentId::agent0, AgentId::agent1}) {
    SolverConfig run_cfg = cfg;
    run_cfg.first_mover = first;
    for (long i = 0; i < vm.rows(); ++i) {
      for (long j = 0; j < vm.cols(); ++j) {
        ConvergenceRun run;
        run.initial = vm.policy(i, j);
        run.first_mover = first;
        std::string tag;
        try {
          const IterationTrace trace = alternate_iterate(model, run.initial, run_cfg);
          out.monotonicity.merge(trace.monotonicity);
          run.outcome = std::string(to_string(trace.outcome));
          run.value = trace.final_value();
          run.round_reaching_final = trace.round_reaching_final();
          if (trace.outcome == Outcome::converged) {
            run.terminal = trace.final_policy();
            run.reached_max = std::abs(run.value - best) <= kValueTolerance;
            tag = "converged " + format_policy(run.terminal->pi0) + " " +
                  format_policy(run.terminal->pi1);
          } else {
            tag = run.outcome;
          }
        } catch (const NonConvergenceError&) {
          run.outcome = "best-response-failure";
          tag = run.outcome;
        }
        if (!run.reached_max) out.holds = false;
        ++out.basin[tag];
        out.runs.push_back(std::move(run));
      }
    }
  }
  return out;
}

GlobalConvergence check_global_convergence(const FactoredCamdp& model,
                                           const SolverConfig& cfg, long cap) {
  return check_global_convergence(model, cfg, enumerate_value_matrix(model, cfg, cap));
}

ConditionReport analyze_conditions(const FactoredCamdp& model, const SolverConfig& cfg,
                                   long cap) {
  const ValueMatrix vm = enumerate_value_matrix(model, cfg, cap);
  ConditionReport r;
  r.dominant_line = check_dominant_line(vm);
  r.observable = check_observability(model, cfg, cap);
  Eigen::Index bi = 0, bj = 0;
  vm.values.maxCoeff(&bi, &bj);
  r.observable_at_optimum = observable_under(model, vm.policy(bi, bj), cfg);
  r.convergence = check_global_convergence(model, cfg, vm);
  r.dominance = dominance_counts(vm);
  r.nash_equilibria = find_nash_equilibria(vm);
  r.value_max = vm.max();
  r.min_gap = vm.min_gap;
  return r;
}

}  // namespace camdp
