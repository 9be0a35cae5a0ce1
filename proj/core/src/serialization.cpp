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

#include "camdp/serialization.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "camdp/errors.hpp"
#include "camdp/generator.hpp"

namespace camdp {

using nlohmann::json;

namespace {

json parse_object(const std::string& text) {
  if (text.empty()) return json::object();
  json j = json::parse(text);
  if (!j.is_object()) throw DomainError("expected a JSON object");
  return j;
}

void merge(json& into, const std::string& extra) {
  const json more = parse_object(extra);
  for (auto& [k, v] : more.items()) into[k] = v;
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json cell_json(const ValueMatrix& vm, const NashCell& c) {
  const JointPolicy p = vm.policy(c.row, c.col);
  return {{"row", c.row}, {"col", c.col}, {"pi0", p.pi0}, {"pi1", p.pi1}, {"value", c.value}};
}

json monotonicity_json(const MonotonicityLog& m) {
  return {{"accepted_steps", m.accepted_steps},
          {"consistent_steps", m.consistent_steps},
          {"violations", m.violations},
          {"worst_change", m.worst_change}};
}

}  // namespace

std::string config_to_json(const SolverConfig& cfg, const std::string& extra_json) {
  json j = {{"gamma", cfg.gamma},
            {"theta", cfg.theta},
            {"epsilon", cfg.epsilon_explore},
            {"eta", cfg.eta},
            {"max_iterations", cfg.max_iterations},
            {"aggregator", to_string(cfg.aggregator)},
            {"first_mover", to_string(cfg.first_mover)},
            {"mode", to_string(cfg.improvement_mode)},
            {"tie_break", "lowest-action-index"},
            {"seed", cfg.seed},
            {"rng", kGeneratorName}};
  merge(j, extra_json);
  return j.dump();
}

std::string joint_policy_to_json(const JointPolicy& policy) {
  return json{{"pi0", policy.pi0}, {"pi1", policy.pi1}}.dump();
}

std::string trace_to_jsonl(const IterationTrace& trace, const std::string& config_json,
                           const std::string& context_json) {
  const json config = parse_object(config_json);
  const json context = parse_object(context_json);
  std::ostringstream out;
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const TraceStep& s = trace.steps[k];
    json rec = {{"step", k},
                {"round", s.round},
                {"mover", to_string(s.mover)},
                {"pi0", s.policy.pi0},
                {"pi1", s.policy.pi1},
                {"value", s.value},
                {"v", s.v},
                {"explored", s.explored},
                {"switches", s.switches},
                {"outcome", to_string(trace.outcome)}};
    for (auto& [key, v] : context.items()) rec[key] = v;
    rec["config"] = config;
    out << rec.dump() << '\n';
  }
  return out.str();
}

std::string evaluation_to_json(const EvaluationResult& r, Aggregator aggregator,
                               const std::string& config_json) {
  json j = {{"method", to_string(r.method)},
            {"gamma", r.gamma},
            {"v", std::vector<double>(r.v.data(), r.v.data() + r.v.size())},
            {"value", scalar_value(r, aggregator)},
            {"residual", r.residual},
            {"sweeps", r.sweeps},
            {"gain", r.gain ? json(*r.gain) : json(nullptr)},
            {"config", parse_object(config_json)}};
  return j.dump();
}

std::string nash_to_json(const ValueMatrix& vm, const std::vector<NashCell>& cells) {
  json arr = json::array();
  for (const auto& c : cells) arr.push_back(cell_json(vm, c));
  return arr.dump();
}

std::string value_matrix_to_json(const ValueMatrix& vm, const std::string& config_json) {
  json rows = json::array();
  for (long i = 0; i < vm.rows(); ++i) {
    std::vector<double> row(vm.cols());
    for (long j = 0; j < vm.cols(); ++j) row[j] = vm.values(i, j);
    rows.push_back(row);
  }
  json row_policies = json::array();
  for (long i = 0; i < vm.rows(); ++i) row_policies.push_back(vm.space.sub_policy(AgentId::agent0, i));
  json col_policies = json::array();
  for (long j = 0; j < vm.cols(); ++j) col_policies.push_back(vm.space.sub_policy(AgentId::agent1, j));
  Eigen::Index bi = 0, bj = 0;
  const double best = vm.values.maxCoeff(&bi, &bj);
  json j = {{"rows", vm.rows()},
            {"cols", vm.cols()},
            {"gamma", vm.gamma},
            {"aggregator", to_string(vm.aggregator)},
            {"min_gap", finite_or_null(vm.min_gap)},
            {"max", {{"row", bi}, {"col", bj}, {"value", best}}},
            {"row_policies", row_policies},
            {"col_policies", col_policies},
            {"values", rows},
            {"config", parse_object(config_json)}};
  return j.dump();
}

std::string value_matrix_to_csv(const ValueMatrix& vm, const std::string& config_json) {
  std::ostringstream out;
  out.precision(17);
  out << "# config: " << parse_object(config_json).dump() << '\n';
  out << "pi0\\pi1";
  for (long j = 0; j < vm.cols(); ++j) {
    out << ',' << format_policy(vm.space.sub_policy(AgentId::agent1, j));
  }
  out << '\n';
  for (long i = 0; i < vm.rows(); ++i) {
    out << format_policy(vm.space.sub_policy(AgentId::agent0, i));
    for (long j = 0; j < vm.cols(); ++j) out << ',' << vm.values(i, j);
    out << '\n';
  }
  return out.str();
}

std::string condition_report_to_json(const ConditionReport& r,
                                     const std::string& config_json, bool include_runs) {
  json basin = json::object();
  for (const auto& [tag, n] : r.convergence.basin) basin[tag] = n;
  json ne = json::array();
  for (const auto& c : r.nash_equilibria) {
    ne.push_back({{"row", c.row}, {"col", c.col}, {"value", c.value}});
  }
  json j = {{"cond1", r.cond1()},
            {"cond2", r.cond2()},
            {"cond3", r.cond3()},
            {"cond2_at_optimum", r.observable_at_optimum},
            {"dominant_row", r.dominant_line.row ? json(*r.dominant_line.row) : json(nullptr)},
            {"dominant_col", r.dominant_line.col ? json(*r.dominant_line.col) : json(nullptr)},
            {"n_dc", r.dominance.n_dc},
            {"n_dr", r.dominance.n_dr},
            {"ne_bound", r.dominance.ne_bound()},
            {"nash_equilibria", ne},
            {"implication_holds", r.implication_holds()},
            {"value_max", r.value_max},
            {"min_gap", finite_or_null(r.min_gap)},
            {"basin", basin},
            {"monotonicity", monotonicity_json(r.convergence.monotonicity)},
            {"config", parse_object(config_json)}};
  if (include_runs) {
    json runs = json::array();
    for (const auto& run : r.convergence.runs) {
      runs.push_back({{"pi0", run.initial.pi0},
                      {"pi1", run.initial.pi1},
                      {"first_mover", to_string(run.first_mover)},
                      {"outcome", run.outcome},
                      {"terminal", run.terminal ? json::parse(joint_policy_to_json(*run.terminal))
                                                : json(nullptr)},
                      {"value", run.value},
                      {"round_reaching_final", run.round_reaching_final},
                      {"reached_max", run.reached_max}});
    }
    j["runs"] = runs;
  }
  return j.dump();
}

std::string reduction_report_to_json(const ReductionReport& r,
                                     const std::string& config_json) {
  json j = {{"label", r.label},
            {"agent", to_string(r.agent)},
            {"original_count", r.original_count},
            {"reduced_count", r.reduced_count},
            {"best_original", r.best_original},
            {"best_reduced", r.best_reduced},
            {"delta_v", r.delta_v},
            {"spread", r.spread},
            {"best_original_policy", json::parse(joint_policy_to_json(r.best_original_policy))},
            {"best_reduced_policy", json::parse(joint_policy_to_json(r.best_reduced_policy))},
            {"config", parse_object(config_json)}};
  return j.dump();
}

SubPolicy parse_sub_policy(const std::string& text) {
  SubPolicy out;
  std::string digits;
  auto flush = [&] {
    if (digits.empty()) return;
    out.push_back(std::stoi(digits));
    digits.clear();
  };
  for (char ch : text) {
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
    } else if (ch == ',' || ch == ' ' || ch == '[' || ch == ']') {
      flush();
    } else {
      throw DomainError("bad character in policy '" + text + "'");
    }
  }
  flush();
  if (out.empty()) throw DomainError("empty policy '" + text + "'");
  return out;
}

}  // namespace camdp
