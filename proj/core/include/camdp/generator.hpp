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

// Random model generation for Monte Carlo studies.

#include <cstdint>
#include <random>
#include <string_view>

#include "camdp/model.hpp"

namespace camdp {

inline constexpr std::string_view kGeneratorName = "mt19937_64";
inline constexpr std::string_view kTransitionLaw = "uniform-simplex";
inline constexpr std::string_view kRewardLaw = "uniform(reward_min,1]";

struct GeneratorSpec {
  Dims dims{2, 2, 2, 2, 2};
  std::uint64_t seed = 0;
  double reward_min = 0.01;
  int max_retries = 100;

  /// Throws DomainError when a field is outside its range.
  void validate() const;
};

/// Uniform double in (0, 1] built from the top 53 bits of one draw.
double draw_unit(std::mt19937_64& rng);
/// Uniform integer in [0, n).
int draw_index(std::mt19937_64& rng, int n);

/// Deterministic in spec.seed. Every transition row is a normalized vector
/// of uniforms and every reward lies in (reward_min, 1]. Draws are redone
/// until the augmented chain of every joint policy is quasi-positive; throws
/// GenerationError after spec.max_retries failed attempts.
FactoredCamdp random_camdp(const GeneratorSpec& spec);

/// True iff every joint policy yields a quasi-positive augmented chain.
/// Strictly positive tensors are accepted without enumeration.
bool all_policies_quasi_positive(const FactoredCamdp& model);

}  // namespace camdp
