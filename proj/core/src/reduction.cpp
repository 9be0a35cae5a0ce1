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

#include "camdp/reduction.hpp"

#include <algorithm>
#include <charconv>
#include <climits>
#include <limits>
#include <set>

#include "camdp/errors.hpp"

namespace camdp {

namespace {

int cell_count(AgentId agent, const Dims& d) {
  return agent == AgentId::agent0 ? d.agent0_cells() : d.agent1_cells();
}

int action_count(AgentId agent, const Dims& d) {
  return agent == AgentId::agent0 ? d.na0 : d.na1;
}

}  // namespace

void PolicyConstraint::validate(const Dims& dims) const {
  const int cells = cell_count(agent, dims);
  std::vector<int> seen(cells, 0);
  for (const auto& cls : classes) {
    if (cls.empty()) throw DomainError("constraint has an empty class");
    for (int c : cls) {
      if (c < 0 || c >= cells) {
        throw DomainError("constraint cell " + std::to_string(c) + " out of range");
      }
      if (seen[c]++ != 0) {
        throw DomainError("constraint cell " + std::to_string(c) + " appears twice");
      }
    }
  }
  for (int c = 0; c < cells; ++c) {
    if (seen[c] == 0) throw DomainError("constraint misses cell " + std::to_string(c));
  }
}

long PolicyConstraint::policy_count(const Dims& dims) const {
  long n = 1;
  const int na = action_count(agent, dims);
  for (std::size_t k = 0; k < classes.size(); ++k) {
    if (n > LONG_MAX / na) return LONG_MAX;
    n *= na;
  }
  return n;
}

bool PolicyConstraint::admits(const SubPolicy& policy) const {
  for (const auto& cls : classes) {
    for (int c : cls) {
      if (policy.at(c) != policy.at(cls.front())) return false;
    }
  }
  return true;
}

std::vector<SubPolicy> PolicyConstraint::policies(const Dims& dims) const {
  validate(dims);
  const int na = action_count(agent, dims);
  const long count = policy_count(dims);
  if (count > kEnumerationCap) throw SizeError("constrained policy set too large");
  std::vector<SubPolicy> out;
  out.reserve(count);
  for (long idx = 0; idx < count; ++idx) {
    SubPolicy p(cell_count(agent, dims), 0);
    long rest = idx;
    for (int k = static_cast<int>(classes.size()) - 1; k >= 0; --k) {
      const int a = static_cast<int>(rest % na);
      rest /= na;
      for (int c : classes[k]) p[c] = a;
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<std::string> constraint_preset_names() {
  return {"s0-only", "ss-only", "s1-only"};
}

std::optional<PolicyConstraint> constraint_preset(std::string_view name, const Dims& d) {
  PolicyConstraint out;
  if (name == "s0-only") {
    out.agent = AgentId::agent0;
    out.label = "pi0 depends on s0 only";
    for (int s0 = 0; s0 < d.ns0; ++s0) {
      std::vector<int> cls;
      for (int ss = 0; ss < d.nss; ++ss) cls.push_back(agent0_cell(s0, ss, d));
      out.classes.push_back(std::move(cls));
    }
  } else if (name == "ss-only") {
    out.agent = AgentId::agent0;
    out.label = "pi0 depends on ss only";
    for (int ss = 0; ss < d.nss; ++ss) {
      std::vector<int> cls;
      for (int s0 = 0; s0 < d.ns0; ++s0) cls.push_back(agent0_cell(s0, ss, d));
      out.classes.push_back(std::move(cls));
    }
  } else if (name == "s1-only") {
    out.agent = AgentId::agent1;
    out.label = "pi1 depends on s1 only";
    for (int s1 = 0; s1 < d.ns1; ++s1) {
      std::vector<int> cls;
      for (int ss = 0; ss < d.nss; ++ss) cls.push_back(agent1_cell(s1, ss, d));
      out.classes.push_back(std::move(cls));
    }
  } else {
    return std::nullopt;
  }
  return out;
}

PolicyConstraint vacuous_constraint(AgentId agent, const Dims& dims) {
  PolicyConstraint out;
  out.agent = agent;
  out.label = std::string(to_string(agent)) + " unconstrained";
  for (int c = 0; c < cell_count(agent, dims); ++c) out.classes.push_back({c});
  return out;
}

PolicyConstraint parse_partition(std::string_view text, const Dims& dims) {
  PolicyConstraint out;
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw DomainError("partition must look like agent0:0,2;1,3");
  }
  const auto agent = parse_agent(text.substr(0, colon));
  if (!agent) throw DomainError("partition agent must be agent0 or agent1");
  out.agent = *agent;
  out.label = std::string(text);
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto semi = rest.find(';');
    std::string_view part = rest.substr(0, semi);
    std::vector<int> cls;
    while (!part.empty()) {
      const auto comma = part.find(',');
      std::string_view tok = part.substr(0, comma);
      int cell = 0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), cell);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw DomainError("bad cell index '" + std::string(tok) + "' in partition");
      }
      cls.push_back(cell);
      part = comma == std::string_view::npos ? std::string_view{} : part.substr(comma + 1);
    }
    out.classes.push_back(std::move(cls));
    rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);
  }
  out.validate(dims);
  return out;
}

ReductionReport constrained_best(const ValueMatrix& vm, const PolicyConstraint& constraint) {
  const bool first = constraint.agent == AgentId::agent0;
  ReductionReport r;
  r.label = constraint.label;
  r.agent = constraint.agent;
  r.original_count = first ? vm.rows() : vm.cols();

  Eigen::Index bi = 0, bj = 0;
  r.best_original = vm.values.maxCoeff(&bi, &bj);
  r.best_original_policy = vm.policy(bi, bj);

  const auto admitted = constraint.policies(vm.space.dims());
  r.reduced_count = static_cast<long>(admitted.size());
  r.best_reduced = -std::numeric_limits<double>::infinity();
  double worst = std::numeric_limits<double>::infinity();
  const long others = first ? vm.cols() : vm.rows();
  for (const SubPolicy& p : admitted) {
    const long k = vm.space.index_of(constraint.agent, p);
    for (long o = 0; o < others; ++o) {
      const long i = first ? k : o;
      const long j = first ? o : k;
      const double x = vm.values(i, j);
      if (x > r.best_reduced) {
        r.best_reduced = x;
        r.best_reduced_policy = vm.policy(i, j);
      }
      worst = std::min(worst, x);
    }
  }
  r.delta_v = r.best_original - r.best_reduced;
  r.spread = r.best_reduced - worst;
  return r;
}

ReductionReport constrained_best(const FactoredCamdp& model,
                                 const PolicyConstraint& constraint,
                                 const SolverConfig& cfg, long cap) {
  constraint.validate(model.dims);
  return constrained_best(enumerate_value_matrix(model, cfg, cap), constraint);
}

std::vector<long> prune_by_value(const ValueMatrix& vm, double threshold, AgentId agent) {
  if (!(threshold >= 0.0)) throw DomainError("pruning threshold must be non-negative");
  const Eigen::VectorXd best = agent == AgentId::agent0
                                   ? Eigen::VectorXd(vm.values.rowwise().maxCoeff())
                                   : Eigen::VectorXd(vm.values.colwise().maxCoeff().transpose());
  std::vector<long> out;
  for (long k = 0; k < best.size(); ++k) {
    if (best(k) <= threshold) out.push_back(k);
  }
  return out;
}

PruneReplay replay_pruning(const std::vector<IterationTrace>& traces,
                           const ValueMatrix& vm, double threshold) {
  const auto rows = prune_by_value(vm, threshold, AgentId::agent0);
  const auto cols = prune_by_value(vm, threshold, AgentId::agent1);
  const std::set<long> pruned_rows(rows.begin(), rows.end());
  const std::set<long> pruned_cols(cols.begin(), cols.end());
  PruneReplay out;
  for (const auto& trace : traces) {
    for (const auto& step : trace.steps) {
      ++out.steps;
      const long i = vm.space.index_of(AgentId::agent0, step.policy.pi0);
      const long j = vm.space.index_of(AgentId::agent1, step.policy.pi1);
      if (pruned_rows.count(i) == 0 && pruned_cols.count(j) == 0) continue;
      ++out.prunable_steps;
      const double x = vm.values(i, j);
      out.best_prunable_value = std::max(out.best_prunable_value.value_or(x), x);
    }
  }
  return out;
}

}  // namespace camdp
