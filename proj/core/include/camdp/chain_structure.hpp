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

#include <Eigen/Dense>

#include "camdp/model.hpp"

namespace camdp {

/// Support-graph structure of a stochastic matrix (edges where p(i,j) > 0).
struct ChainStructure {
  bool irreducible = false;
  /// gcd of cycle lengths through the support graph; meaningful only when
  /// irreducible. 1 means aperiodic.
  int period = 0;

  bool quasi_positive() const { return irreducible && period == 1; }
};

ChainStructure analyze_chain(const Eigen::MatrixXd& p);

/// True iff pbar is irreducible and aperiodic.
bool check_quasi_positive(const AugmentedDynamics& dyn);

}  // namespace camdp
