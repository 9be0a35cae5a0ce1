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

#include "camdp/policy_engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <limits>
#include <utility>

#include "camdp/errors.hpp"
#include "camdp/generator.hpp"

namespace camdp {

std::string_view to_string(ImprovementMode mode) {
  return mode == ImprovementMode::full_info ? "full-info" : "partial-info";
}

std::optional<ImprovementMode> parse_improvement_mode(std::string_view text) {
  if (text == "full-info") return ImprovementMode::full_info;
  if (text == "partial-info") return ImprovementMode::partial_info;
  return std::nullopt;
}

std::optional<AgentId> parse_agent(std::string_view text) {
  if (text == "agent0") return AgentId::agent0;
  if (text == "agent1") return AgentId::agent1;
  return std::nullopt;
}

std::string_view to_string(Mover mover) {
  switch (mover) {
    case Mover::initial: return "initial";
    case Mover::agent0: return "agent0";
    case Mover::agent1: return "agent1";
    case Mover::both: return "both";
  }
  return "unknown";
}

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::converged: return "converged";
    case Outcome::oscillating: return "oscillating";
    case Outcome::max_iterations: return "max-iterations";
  }
  return "unknown";
}

void SolverConfig::validate() const {
  check_gamma(gamma);
  if (!(theta > 0.0)) throw DomainError("theta must be positive");
  if (!(epsilon_explore >= 0.0 && epsilon_explore <= 1.0)) {
    throw DomainError("epsilon must lie in [0, 1]");
  }
  if (!(eta >= 0.0) || !std::isfinite(eta)) {
    throw DomainError("eta must be a finite non-negative number");
  }
  if (max_iterations < 1) throw DomainError("max-iter must be at least 1");
}

int hamming(const SubPolicy& a, const SubPolicy& b) {
  if (a.size() != b.size()) throw DimensionError("policy lengths differ");
  int d = 0;
  for (std::size_t k = 0; k < a.size(); ++k) d += a[k] != b[k] ? 1 : 0;
  return d;
}

bool ImprovementResult::consistent() const {
  return std::all_of(cell_consistent.begin(), cell_consistent.end(),
                     [](char c) { return c != 0; });
}

bool ImprovementResult::changed_cells_consistent() const {
  for (std::size_t k = 0; k < cell_changed.size(); ++k) {
    if (cell_changed[k] && !cell_consistent[k]) return false;
  }
  return true;
}

void MonotonicityLog::merge(const MonotonicityLog& other) {
  accepted_steps += other.accepted_steps;
  consistent_steps += other.consistent_steps;
  violations += other.violations;
  worst_change = std::min(worst_change, other.worst_change);
}

std::vector<CellActionValues> cell_action_values(const FactoredCamdp& model,
                                                 const JointPolicy& policy,
                                                 const Eigen::VectorXd& v,
                                                 double gamma, AgentId which) {
  check_policy(model, policy);
  const Dims& d = model.dims;
  if (v.size() != d.composite_count()) {
    throw DimensionError("value vector length does not match the model");
  }
  const bool first = which == AgentId::agent0;
  const int cells = first ? d.agent0_cells() : d.agent1_cells();
  const int unobserved = first ? d.ns1 : d.ns0;
  const int actions = first ? d.na0 : d.na1;

  Eigen::VectorXd row(d.composite_count());
  std::vector<CellActionValues> out(cells);
  for (int c = 0; c < cells; ++c) {
    const int own = c / d.nss;
    const int ss = c % d.nss;
    out[c].cell = c;
    out[c].q.assign(unobserved, std::vector<double>(actions, 0.0));
    for (int u = 0; u < unobserved; ++u) {
      CompositeState st = first ? CompositeState{own, ss, u} : CompositeState{u, ss, own};
      for (int a = 0; a < actions; ++a) {
        const int a0 = first ? a : policy.pi0[agent0_cell(st.s0, ss, d)];
        const int a1 = first ? policy.pi1[agent1_cell(st.s1, ss, d)] : a;
        const double r = composite_row(model, st, a0, a1, row);
        out[c].q[u][a] = r + gamma * row.dot(v);
      }
    }
  }
  return out;
}

namespace {

int argmax(const std::vector<double>& values) {
  int best = 0;
  for (int a = 1; a < static_cast<int>(values.size()); ++a) {
    if (values[a] > values[best]) best = a;
  }
  return best;
}

ImprovementResult improve_impl(const FactoredCamdp& model, const JointPolicy& policy,
                               const Eigen::VectorXd& v, const SolverConfig& cfg,
                               AgentId which, bool thresholded) {
  const auto table = cell_action_values(model, policy, v, cfg.gamma, which);
  const SubPolicy& current = policy.of(which);
  ImprovementResult res;
  res.policy = current;
  res.cell_consistent.assign(table.size(), 1);
  res.cell_changed.assign(table.size(), 0);

  for (std::size_t c = 0; c < table.size(); ++c) {
    const auto& q = table[c].q;
    const int actions = static_cast<int>(q.front().size());
    const int first_choice = argmax(q.front());
    bool agree = true;
    std::vector<double> mean(actions, 0.0);
    for (const auto& qu : q) {
      if (argmax(qu) != first_choice) agree = false;
      for (int a = 0; a < actions; ++a) mean[a] += qu[a];
    }
    for (double& m : mean) m /= static_cast<double>(q.size());
    res.cell_consistent[c] = agree ? 1 : 0;

    int chosen = (agree && cfg.improvement_mode == ImprovementMode::full_info)
                     ? first_choice
                     : argmax(mean);
    const int cur = current[c];
    if (chosen == cur) continue;
    if (thresholded) {
      double gain = -std::numeric_limits<double>::infinity();
      for (const auto& qu : q) gain = std::max(gain, qu[chosen] - qu[cur]);
      if (gain < cfg.eta) continue;
    }
    res.policy[c] = chosen;
    res.cell_changed[c] = 1;
    res.changed = true;
  }
  return res;
}

double value_of(const Eigen::VectorXd& v, const SolverConfig& cfg) {
  return scalar_value(v, cfg.aggregator);
}

Eigen::VectorXd evaluate_policy(const FactoredCamdp& model, const JointPolicy& policy,
                                double gamma) {
  return evaluate_exact(augment(model, policy), gamma).v;
}

std::string describe(const SubPolicy& p) { return format_policy(p); }

}  // namespace

ImprovementResult improve_agent(const FactoredCamdp& model, const JointPolicy& policy,
                                const Eigen::VectorXd& v, const SolverConfig& cfg,
                                AgentId which) {
  return improve_impl(model, policy, v, cfg, which, false);
}

ImprovementResult revised_improve(const FactoredCamdp& model,
                                  const JointPolicy& policy,
                                  const Eigen::VectorXd& v,
                                  const SolverConfig& cfg) {
  return improve_impl(model, policy, v, cfg, AgentId::agent0, true);
}

BestResponse best_response(const FactoredCamdp& model, AgentId mover,
                           const SubPolicy& other, const SubPolicy& start,
                           const SolverConfig& cfg) {
  JointPolicy jp;
  jp.of(mover) = start;
  jp.of(camdp::other(mover)) = other;
  check_policy(model, jp);
  check_gamma(cfg.gamma);

  BestResponse out;
  std::vector<SubPolicy> visited{start};
  std::set<SubPolicy> seen{start};
  Eigen::VectorXd v = evaluate_policy(model, jp, cfg.gamma);

  for (int step = 0; step < cfg.max_iterations; ++step) {
    ImprovementResult imp = mover == AgentId::agent0
                                ? revised_improve(model, jp, v, cfg)
                                : improve_agent(model, jp, v, cfg, mover);
    if (!imp.changed) {
      out.policy = jp.of(mover);
      out.final_consistent = imp.consistent();
      return out;
    }
    if (seen.count(imp.policy) != 0) {
      visited.push_back(imp.policy);
      throw NonConvergenceError(std::string(to_string(mover)) +
                                    " best response cycles back to " +
                                    describe(imp.policy),
                                std::move(visited));
    }
    seen.insert(imp.policy);
    visited.push_back(imp.policy);

    jp.of(mover) = imp.policy;
    Eigen::VectorXd v_new = evaluate_policy(model, jp, cfg.gamma);
    ++out.improvement_steps;
    ++out.monotonicity.accepted_steps;
    if (imp.changed_cells_consistent()) {
      ++out.monotonicity.consistent_steps;
      const double change = (v_new - v).minCoeff();
      out.monotonicity.worst_change = std::min(out.monotonicity.worst_change, change);
      if (change < -kMonotoneSlack) ++out.monotonicity.violations;
    }
    v = std::move(v_new);
  }
  throw NonConvergenceError(std::string(to_string(mover)) +
                                " best response did not stabilize within " +
                                std::to_string(cfg.max_iterations) + " steps",
                            std::move(visited));
}

int IterationTrace::round_reaching_final() const {
  const JointPolicy& fin = final_policy();
  for (const auto& s : steps) {
    if (s.policy == fin) return s.round;
  }
  return rounds;
}

namespace {

class TraceBuilder {
 public:
  TraceBuilder(const FactoredCamdp& model, const SolverConfig& cfg)
      : model_(model), cfg_(cfg) {}

  void push(Mover mover, int round, const JointPolicy& policy, bool explored) {
    TraceStep step;
    step.mover = mover;
    step.round = round;
    step.policy = policy;
    const Eigen::VectorXd v = evaluate_policy(model_, policy, cfg_.gamma);
    step.value = value_of(v, cfg_);
    step.v.assign(v.data(), v.data() + v.size());
    step.explored = explored;
    if (!trace.steps.empty()) {
      const JointPolicy& prev = trace.steps.back().policy;
      trace.switch_counts[0] += hamming(prev.pi0, policy.pi0);
      trace.switch_counts[1] += hamming(prev.pi1, policy.pi1);
    }
    step.switches = trace.switch_counts;
    trace.steps.push_back(std::move(step));
  }

  /// Records the round-end policy; returns true when it repeats an earlier
  /// round end, filling the cycle.
  bool revisit(const JointPolicy& policy) {
    const std::size_t here = trace.steps.size() - 1;
    auto [it, inserted] = round_ends_.emplace(policy, here);
    if (inserted) return false;
    for (std::size_t k = it->second + 1; k <= here; ++k) {
      trace.cycle.push_back(trace.steps[k].policy);
    }
    return true;
  }

  SubPolicy respond(AgentId mover, const JointPolicy& cur) {
    BestResponse br = best_response(model_, mover, cur.of(other(mover)), cur.of(mover), cfg_);
    trace.monotonicity.merge(br.monotonicity);
    return std::move(br.policy);
  }

  IterationTrace trace;

 private:
  const FactoredCamdp& model_;
  const SolverConfig& cfg_;
  std::map<JointPolicy, std::size_t> round_ends_;
};

Mover mover_of(AgentId agent) {
  return agent == AgentId::agent0 ? Mover::agent0 : Mover::agent1;
}

IterationTrace alternate_impl(const FactoredCamdp& model, const JointPolicy& initial,
                              const SolverConfig& cfg, AgentId first,
                              std::mt19937_64* rng) {
  cfg.validate();
  check_policy(model, initial);
  TraceBuilder tb(model, cfg);
  JointPolicy cur = initial;
  tb.push(Mover::initial, 0, cur, false);
  const bool exploring = rng != nullptr && cfg.epsilon_explore > 0.0;
  if (!exploring) tb.revisit(cur);

  const std::array<AgentId, 2> order{first, other(first)};
  for (int round = 1; round <= cfg.max_iterations; ++round) {
    tb.trace.rounds = round;
    const JointPolicy opening = cur;
    bool explored_round = false;
    for (AgentId mover : order) {
      cur.of(mover) = tb.respond(mover, cur);
      bool explored = false;
      if (exploring && mover == AgentId::agent1) {
        for (int& action : cur.pi1) {
          if (draw_unit(*rng) <= cfg.epsilon_explore) {
            explored = true;
            action = draw_index(*rng, model.dims.na1);
          }
        }
      }
      explored_round = explored_round || explored;
      tb.push(mover_of(mover), round, cur, explored);
    }
    if (cur == opening && !explored_round) {
      tb.trace.outcome = Outcome::converged;
      return std::move(tb.trace);
    }
    if (!exploring && tb.revisit(cur)) {
      tb.trace.outcome = Outcome::oscillating;
      return std::move(tb.trace);
    }
  }
  tb.trace.outcome = Outcome::max_iterations;
  return std::move(tb.trace);
}

}  // namespace

IterationTrace alternate_iterate(const FactoredCamdp& model, const JointPolicy& initial,
                                 const SolverConfig& cfg) {
  return alternate_impl(model, initial, cfg, cfg.first_mover, nullptr);
}

IterationTrace simultaneous_iterate(const FactoredCamdp& model,
                                    const JointPolicy& initial,
                                    const SolverConfig& cfg) {
  cfg.validate();
  check_policy(model, initial);
  TraceBuilder tb(model, cfg);
  JointPolicy cur = initial;
  tb.push(Mover::initial, 0, cur, false);
  tb.revisit(cur);
  for (int round = 1; round <= cfg.max_iterations; ++round) {
    tb.trace.rounds = round;
    JointPolicy next;
    next.pi0 = tb.respond(AgentId::agent0, cur);
    next.pi1 = tb.respond(AgentId::agent1, cur);
    const bool unchanged = next == cur;
    cur = std::move(next);
    tb.push(Mover::both, round, cur, false);
    if (unchanged) {
      tb.trace.outcome = Outcome::converged;
      return std::move(tb.trace);
    }
    if (tb.revisit(cur)) {
      tb.trace.outcome = Outcome::oscillating;
      return std::move(tb.trace);
    }
  }
  tb.trace.outcome = Outcome::max_iterations;
  return std::move(tb.trace);
}

IterationTrace epsilon_greedy_iterate(const FactoredCamdp& model,
                                      const JointPolicy& initial,
                                      const SolverConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  return alternate_impl(model, initial, cfg, AgentId::agent0, &rng);
}

Eigen::VectorXd loss_bound(const FactoredCamdp& model, const JointPolicy& pi_star,
                           const SolverConfig& cfg) {
  check_gamma(cfg.gamma);
  check_policy(model, pi_star);
  const AugmentedDynamics dyn = augment(model, pi_star);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(dyn.size());
  return cfg.eta * solve_discounted(dyn.pbar, cfg.gamma, ones);
}

}  // namespace camdp
