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

#include "camdp/generator.hpp"

#include <algorithm>
#include <cmath>

#include "camdp/chain_structure.hpp"
#include "camdp/equilibrium.hpp"
#include "camdp/errors.hpp"

namespace camdp {

void GeneratorSpec::validate() const {
  const Dims& d = dims;
  if (d.ns0 < 1 || d.nss < 1 || d.ns1 < 1 || d.na0 < 1 || d.na1 < 1) {
    throw DomainError("generator dimensions must be positive");
  }
  if (!(reward_min > 0.0 && reward_min < 1.0)) {
    throw DomainError("reward_min must lie in (0, 1)");
  }
  if (max_retries < 1) throw DomainError("max_retries must be at least 1");
}

double draw_unit(std::mt19937_64& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

int draw_index(std::mt19937_64& rng, int n) {
  const int k = static_cast<int>(std::floor((1.0 - draw_unit(rng)) * n));
  return std::clamp(k, 0, n - 1);
}

namespace {

void fill_rows(std::vector<double>& tensor, int row_len, std::mt19937_64& rng) {
  for (std::size_t start = 0; start < tensor.size(); start += row_len) {
    double sum = 0.0;
    for (int k = 0; k < row_len; ++k) {
      tensor[start + k] = draw_unit(rng);
      sum += tensor[start + k];
    }
    for (int k = 0; k < row_len; ++k) tensor[start + k] /= sum;
  }
}

void fill_rewards(std::vector<double>& tensor, double reward_min, std::mt19937_64& rng) {
  for (double& x : tensor) x = reward_min + (1.0 - reward_min) * draw_unit(rng);
}

bool strictly_positive(const std::vector<double>& t) {
  return std::all_of(t.begin(), t.end(), [](double x) { return x > 0.0; });
}

}  // namespace

bool all_policies_quasi_positive(const FactoredCamdp& model) {
  if (strictly_positive(model.p0) && strictly_positive(model.ps) &&
      strictly_positive(model.p1)) {
    return true;
  }
  const PolicySpace space(model.dims);
  for (long i = 0; i < space.rows(); ++i) {
    for (long j = 0; j < space.cols(); ++j) {
      if (!check_quasi_positive(augment(model, space.joint(i, j)))) return false;
    }
  }
  return true;
}

FactoredCamdp random_camdp(const GeneratorSpec& spec) {
  spec.validate();
  const Dims& d = spec.dims;
  std::mt19937_64 rng(spec.seed);
  for (int attempt = 0; attempt < spec.max_retries; ++attempt) {
    FactoredCamdp m = FactoredCamdp::zeros(d);
    fill_rows(m.p0, d.ns0, rng);
    fill_rows(m.ps, d.nss, rng);
    fill_rows(m.p1, d.ns1, rng);
    fill_rewards(m.r0, spec.reward_min, rng);
    fill_rewards(m.rs, spec.reward_min, rng);
    fill_rewards(m.r1, spec.reward_min, rng);
    if (all_policies_quasi_positive(m)) return m;
  }
  throw GenerationError("no quasi-positive model after " +
                        std::to_string(spec.max_retries) + " draws for seed " +
                        std::to_string(spec.seed));
}

}  // namespace camdp
