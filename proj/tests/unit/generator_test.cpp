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

#include <gtest/gtest.h>

#include "camdp/chain_structure.hpp"
#include "camdp/equilibrium.hpp"
#include "camdp/errors.hpp"
#include "camdp/generator.hpp"

namespace camdp {
namespace {

TEST(Generator, SameSeedSameModel) {
  GeneratorSpec spec;
  spec.seed = 42;
  const FactoredCamdp a = random_camdp(spec);
  const FactoredCamdp b = random_camdp(spec);
  EXPECT_EQ(a.p0, b.p0);
  EXPECT_EQ(a.ps, b.ps);
  EXPECT_EQ(a.rs, b.rs);
  spec.seed = 43;
  EXPECT_NE(random_camdp(spec).ps, a.ps);
}

TEST(Generator, OutputValidatesWithTightRowSums) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    GeneratorSpec spec;
    spec.seed = seed;
    spec.dims = seed % 2 ? Dims{2, 2, 2, 2, 2} : Dims{3, 1, 2, 2, 3};
    const FactoredCamdp m = random_camdp(spec);
    EXPECT_TRUE(validate(m).ok());
    const Dims& d = m.dims;
    auto rows_ok = [](const std::vector<double>& t, int len) {
      for (std::size_t s = 0; s < t.size(); s += len) {
        double sum = 0;
        for (int k = 0; k < len; ++k) sum += t[s + k];
        if (std::abs(sum - 1.0) > 1e-12) return false;
      }
      return true;
    };
    EXPECT_TRUE(rows_ok(m.p0, d.ns0));
    EXPECT_TRUE(rows_ok(m.ps, d.nss));
    EXPECT_TRUE(rows_ok(m.p1, d.ns1));
    for (const auto* t : {&m.r0, &m.rs, &m.r1})
      for (double r : *t) {
        EXPECT_GT(r, spec.reward_min);
        EXPECT_LE(r, 1.0);
      }
  }
}

TEST(Generator, EveryJointPolicyQuasiPositive) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GeneratorSpec spec;
    spec.seed = seed;
    const FactoredCamdp m = random_camdp(spec);
    const PolicySpace space(m.dims);
    for (long i = 0; i < space.rows(); ++i)
      for (long j = 0; j < space.cols(); ++j)
        EXPECT_TRUE(analyze_chain(augment(m, space.joint(i, j)).pbar).quasi_positive());
  }
}

TEST(Generator, QuasiPositivityEnumeratesWhenSparse) {
  GeneratorSpec spec;
  FactoredCamdp m = random_camdp(spec);
  for (int a1 = 0; a1 < 2; ++a1) {
    m.p1[m.p1_index(a1, 0, 0)] = 0.0;
    m.p1[m.p1_index(a1, 0, 1)] = 1.0;
    m.p1[m.p1_index(a1, 1, 0)] = 1.0;
    m.p1[m.p1_index(a1, 1, 1)] = 0.0;
  }
  // s1 now flips deterministically, but s0 and ss still mix, so the product
  // chain is irreducible with period 2.
  EXPECT_FALSE(all_policies_quasi_positive(m));
}

TEST(Generator, RejectsBadSpec) {
  GeneratorSpec spec;
  spec.reward_min = 0.0;
  EXPECT_THROW(random_camdp(spec), DomainError);
  spec = GeneratorSpec{};
  spec.dims.nss = 0;
  EXPECT_THROW(random_camdp(spec), DomainError);
}

TEST(Draws, UnitIntervalAndIndexRange) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 10000; ++k) {
    const double u = draw_unit(rng);
    ASSERT_GT(u, 0.0);
    ASSERT_LE(u, 1.0);
    const int i = draw_index(rng, 3);
    ASSERT_GE(i, 0);
    ASSERT_LT(i, 3);
  }
}

}  // namespace
}  // namespace camdp
