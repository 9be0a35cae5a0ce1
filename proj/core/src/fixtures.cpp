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

#include "camdp/fixtures.hpp"

namespace camdp {

FactoredCamdp case_study_model() {
  FactoredCamdp m;
  m.dims = Dims{2, 2, 2, 2, 2};
  // clang-format off
  m.p0 = {
      0.72896067, 0.27103933,   // a0 = 0
      0.95167994, 0.04832006,
      0.15320242, 0.84679758,   // a0 = 1
      0.55851098, 0.44148902};
  m.ps = {
      0.66489771, 0.33510229,   // (a0, a1) = (0, 0)
      0.51544335, 0.48455665,
      0.07046136, 0.92953864,   // (0, 1)
      0.52137167, 0.47862833,
      0.56727427, 0.43272573,   // (1, 0)
      0.11531405, 0.88468595,
      0.65019582, 0.34980418,   // (1, 1)
      0.41909603, 0.58090397};
  m.p1 = {
      0.35013916, 0.64986084,   // a1 = 0
      0.37319646, 0.62680354,
      0.47227529, 0.52772471,   // a1 = 1
      0.39457278, 0.60542722};
  m.r0 = {
      0.25561406, 0.67130943,
      0.59900591, 0.71733215,
      0.93734953, 0.35180977,
      0.25363410, 0.40247251};
  m.rs = {
      0.39837292, 0.77088097,
      0.76475098, 0.28385938,
      0.18954219, 0.47125096,
      0.33480604, 0.73473504,
      0.18910712, 0.33110407,
      0.84422842, 0.61502403,
      0.88526408, 0.97655302,
      0.83690859, 0.18082463};
  m.r1 = {
      0.74651072, 0.72407057,
      0.40610780, 0.98937985,
      0.45049928, 0.37380843,
      0.70962861, 0.08245855};
  // clang-format on
  renormalize_rows(m);
  return m;
}

JointPolicy case_study_initial_policy() {
  return JointPolicy{{0, 0, 0, 0}, {1, 0, 0, 0}};
}

std::optional<FactoredCamdp> fixture_by_name(std::string_view name) {
  if (name == kCaseStudyFixture) return case_study_model();
  return std::nullopt;
}

std::vector<std::string> fixture_names() {
  return {std::string(kCaseStudyFixture)};
}

}  // namespace camdp
