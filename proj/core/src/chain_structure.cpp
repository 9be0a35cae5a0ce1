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

#include "camdp/chain_structure.hpp"

#include <numeric>
#include <queue>
#include <vector>

namespace camdp {

namespace {

std::vector<int> bfs_levels(const Eigen::MatrixXd& p, bool transpose) {
  const int n = static_cast<int>(p.rows());
  std::vector<int> level(n, -1);
  std::queue<int> frontier;
  level[0] = 0;
  frontier.push(0);
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int v = 0; v < n; ++v) {
      const double w = transpose ? p(v, u) : p(u, v);
      if (w > 0.0 && level[v] < 0) {
        level[v] = level[u] + 1;
        frontier.push(v);
      }
    }
  }
  return level;
}

}  // namespace

ChainStructure analyze_chain(const Eigen::MatrixXd& p) {
  ChainStructure out;
  const int n = static_cast<int>(p.rows());
  if (n == 0) return out;

  const std::vector<int> forward = bfs_levels(p, false);
  const std::vector<int> backward = bfs_levels(p, true);
  out.irreducible = true;
  for (int v = 0; v < n; ++v) {
    if (forward[v] < 0 || backward[v] < 0) {
      out.irreducible = false;
      break;
    }
  }
  if (!out.irreducible) return out;

  // For an irreducible chain the period is gcd over edges (u,v) of
  // level(u) + 1 - level(v), with levels from any BFS root.
  int g = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (p(u, v) > 0.0) {
        g = std::gcd(g, std::abs(forward[u] + 1 - forward[v]));
      }
    }
  }
  out.period = g;
  return out;
}

bool check_quasi_positive(const AugmentedDynamics& dyn) {
  return analyze_chain(dyn.pbar).quasi_positive();
}

}  // namespace camdp
