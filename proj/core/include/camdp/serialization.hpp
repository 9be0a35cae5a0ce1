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

// Text renderings of results. JSON documents are returned as strings so the
// JSON library stays out of the public headers. Every record can carry the
// resolved run configuration under "config".

#include <string>

#include "camdp/equilibrium.hpp"
#include "camdp/evaluation.hpp"
#include "camdp/policy_engine.hpp"
#include "camdp/reduction.hpp"

namespace camdp {

/// Solver settings plus the RNG name; members of `extra_json` (an object)
/// are merged in.
std::string config_to_json(const SolverConfig& cfg, const std::string& extra_json = {});

/// One JSON object per line, one line per trace step. `context_json` (an
/// object) is merged into every record, e.g. a seed or an initial policy.
std::string trace_to_jsonl(const IterationTrace& trace, const std::string& config_json,
                           const std::string& context_json = {});

std::string evaluation_to_json(const EvaluationResult& result, Aggregator aggregator,
                               const std::string& config_json);
std::string value_matrix_to_json(const ValueMatrix& vm, const std::string& config_json);
/// Rows are Agent0 policies and columns Agent1 policies. Lines starting with
/// '#' carry the configuration; the header row lists column policies.
std::string value_matrix_to_csv(const ValueMatrix& vm, const std::string& config_json);
std::string nash_to_json(const ValueMatrix& vm, const std::vector<NashCell>& cells);
/// `include_runs` adds the per-initial convergence runs.
std::string condition_report_to_json(const ConditionReport& report,
                                     const std::string& config_json,
                                     bool include_runs = false);
std::string reduction_report_to_json(const ReductionReport& report,
                                     const std::string& config_json);
std::string joint_policy_to_json(const JointPolicy& policy);

/// Parses "0,1,0,0" or "[0 1 0 0]" into a sub-policy. Throws DomainError.
SubPolicy parse_sub_policy(const std::string& text);

}  // namespace camdp
