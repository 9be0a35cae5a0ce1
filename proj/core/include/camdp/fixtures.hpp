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
#include <string>
#include <string_view>
#include <vector>

#include "camdp/model.hpp"

namespace camdp {

inline constexpr std::string_view kCaseStudyFixture = "paper-case-study";

/// The published 2x2x2-state, 2x2-action rehabilitation case study, matrices
/// verbatim to 8 decimals.
FactoredCamdp case_study_model();

/// Discount under which the case study's reported values (9.99 global
/// optimum, 9.81 local equilibrium, 9.05 / 9.81 under the ss-only / s0-only
/// Agent0 constraints) are reproduced with the max aggregator.
inline constexpr double kCaseStudyGamma = 0.98;

/// Starting point of the case-study run: pi0 = [0 0 0 0], pi1 = [1 0 0 0].
JointPolicy case_study_initial_policy();

std::optional<FactoredCamdp> fixture_by_name(std::string_view name);
std::vector<std::string> fixture_names();

}  // namespace camdp
