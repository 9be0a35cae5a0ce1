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

#include "camdp/model.hpp"

#include <cmath>
#include <sstream>

#include "camdp/errors.hpp"

namespace camdp {

std::string_view to_string(AgentId agent) {
  return agent == AgentId::agent0 ? "agent0" : "agent1";
}

AgentId other(AgentId agent) {
  return agent == AgentId::agent0 ? AgentId::agent1 : AgentId::agent0;
}

std::string format_policy(const SubPolicy& policy) {
  std::string out = "[";
  for (std::size_t k = 0; k < policy.size(); ++k) {
    if (k) out += ' ';
    out += std::to_string(policy[k]);
  }
  out += ']';
  return out;
}

FactoredCamdp FactoredCamdp::zeros(const Dims& d) {
  FactoredCamdp m;
  m.dims = d;
  m.p0.assign(agent0_tensor_size(d), 0.0);
  m.r0.assign(agent0_tensor_size(d), 0.0);
  m.ps.assign(shared_tensor_size(d), 0.0);
  m.rs.assign(shared_tensor_size(d), 0.0);
  m.p1.assign(agent1_tensor_size(d), 0.0);
  m.r1.assign(agent1_tensor_size(d), 0.0);
  return m;
}

int composite_index(int s0, int ss, int s1, const Dims& dims) {
  if (s0 < 0 || s0 >= dims.ns0 || ss < 0 || ss >= dims.nss || s1 < 0 ||
      s1 >= dims.ns1) {
    std::ostringstream os;
    os << "composite_index: (" << s0 << "," << ss << "," << s1
       << ") outside dims (" << dims.ns0 << "," << dims.nss << "," << dims.ns1
       << ")";
    throw DimensionError(os.str());
  }
  return (s0 * dims.nss + ss) * dims.ns1 + s1;
}

CompositeState decompose_index(int index, const Dims& dims) {
  if (index < 0 || index >= dims.composite_count()) {
    throw DimensionError("decompose_index: index " + std::to_string(index) +
                         " outside composite space of size " +
                         std::to_string(dims.composite_count()));
  }
  CompositeState s;
  s.s1 = index % dims.ns1;
  index /= dims.ns1;
  s.ss = index % dims.nss;
  s.s0 = index / dims.nss;
  return s;
}

std::size_t ValidationReport::count(Violation::Kind kind) const {
  std::size_t n = 0;
  for (const auto& v : violations) n += (v.kind == kind);
  return n;
}

std::vector<std::string> ValidationReport::messages() const {
  std::vector<std::string> out;
  out.reserve(violations.size());
  for (const auto& v : violations) out.push_back(v.message);
  return out;
}

namespace {

// Visits every row of a tensor laid out as [blocks][n][n].
struct TensorView {
  const char* name;
  const std::vector<double>* probs;
  const std::vector<double>* rewards;
  std::size_t blocks;
  int n;
};

void check_tensor(const TensorView& t, ValidationReport& report) {
  const std::size_t expected = t.blocks * t.n * t.n;
  bool shape_ok = true;
  for (auto [vec, kind] : {std::pair{t.probs, "transition"},
                           std::pair{t.rewards, "reward"}}) {
    if (vec->size() != expected) {
      std::ostringstream os;
      os << t.name << " " << kind << " tensor has " << vec->size()
         << " entries, expected " << expected;
      report.violations.push_back({Violation::Kind::shape, os.str()});
      shape_ok = false;
    }
  }
  if (!shape_ok) return;

  for (std::size_t b = 0; b < t.blocks; ++b) {
    for (int s = 0; s < t.n; ++s) {
      double sum = 0.0;
      for (int u = 0; u < t.n; ++u) {
        const std::size_t k = (b * t.n + s) * t.n + u;
        const double p = (*t.probs)[k];
        const double r = (*t.rewards)[k];
        if (!(p >= 0.0 && p <= 1.0)) {
          std::ostringstream os;
          os << t.name << " block " << b << " row " << s << " col " << u
             << ": probability " << p << " outside [0,1]";
          report.violations.push_back({Violation::Kind::range, os.str()});
        }
        if (!(r > 0.0) || !std::isfinite(r)) {
          std::ostringstream os;
          os << t.name << " block " << b << " row " << s << " col " << u
             << ": reward " << r << " is not strictly positive";
          report.violations.push_back({Violation::Kind::positivity, os.str()});
        }
        sum += p;
      }
      if (!(std::abs(sum - 1.0) <= kRowSumTolerance)) {
        std::ostringstream os;
        os.precision(12);
        os << t.name << " block " << b << " row " << s << " sums to " << sum;
        report.violations.push_back({Violation::Kind::row_sum, os.str()});
      }
    }
  }
}

}  // namespace

ValidationReport validate(const FactoredCamdp& model) {
  ValidationReport report;
  const Dims& d = model.dims;
  const std::pair<const char*, int> counts[] = {
      {"ns0", d.ns0}, {"nss", d.nss}, {"ns1", d.ns1}, {"na0", d.na0},
      {"na1", d.na1}};
  for (auto [name, value] : counts) {
    if (value < 1) {
      report.violations.push_back({Violation::Kind::empty_dimension,
                                   std::string(name) + " must be positive, got " +
                                       std::to_string(value)});
    }
  }
  if (!report.ok()) return report;

  check_tensor({"p0/r0", &model.p0, &model.r0,
                static_cast<std::size_t>(d.na0), d.ns0},
               report);
  check_tensor({"ps/rs", &model.ps, &model.rs,
                static_cast<std::size_t>(d.na0) * d.na1, d.nss},
               report);
  check_tensor({"p1/r1", &model.p1, &model.r1,
                static_cast<std::size_t>(d.na1), d.ns1},
               report);
  return report;
}

void renormalize_rows(FactoredCamdp& model) {
  auto normalize = [](std::vector<double>& t, int n) {
    for (std::size_t row = 0; row + n <= t.size(); row += n) {
      double sum = 0.0;
      for (int u = 0; u < n; ++u) sum += t[row + u];
      if (sum > 0.0) {
        for (int u = 0; u < n; ++u) t[row + u] /= sum;
      }
    }
  };
  normalize(model.p0, model.dims.ns0);
  normalize(model.ps, model.dims.nss);
  normalize(model.p1, model.dims.ns1);
}

void check_policy(const FactoredCamdp& model, const JointPolicy& policy) {
  const Dims& d = model.dims;
  if (static_cast<int>(policy.pi0.size()) != d.agent0_cells() ||
      static_cast<int>(policy.pi1.size()) != d.agent1_cells()) {
    std::ostringstream os;
    os << "policy lengths (" << policy.pi0.size() << "," << policy.pi1.size()
       << ") do not match cell counts (" << d.agent0_cells() << ","
       << d.agent1_cells() << ")";
    throw DimensionError(os.str());
  }
  for (int a : policy.pi0) {
    if (a < 0 || a >= d.na0) {
      throw DimensionError("pi0 action " + std::to_string(a) +
                           " outside [0," + std::to_string(d.na0) + ")");
    }
  }
  for (int a : policy.pi1) {
    if (a < 0 || a >= d.na1) {
      throw DimensionError("pi1 action " + std::to_string(a) +
                           " outside [0," + std::to_string(d.na1) + ")");
    }
  }
  if (model.p0.size() != FactoredCamdp::agent0_tensor_size(d) ||
      model.ps.size() != FactoredCamdp::shared_tensor_size(d) ||
      model.p1.size() != FactoredCamdp::agent1_tensor_size(d) ||
      model.r0.size() != model.p0.size() || model.rs.size() != model.ps.size() ||
      model.r1.size() != model.p1.size()) {
    throw DimensionError("model tensors do not match its dimensions");
  }
}

double composite_row(const FactoredCamdp& model, const CompositeState& st,
                     int a0, int a1, Eigen::Ref<Eigen::VectorXd> prob) {
  const Dims& d = model.dims;
  double expected = 0.0;
  int j = 0;
  for (int t0 = 0; t0 < d.ns0; ++t0) {
    const std::size_t k0 = model.p0_index(a0, st.s0, t0);
    const double p0 = model.p0[k0];
    const double r0 = model.r0[k0];
    for (int ts = 0; ts < d.nss; ++ts) {
      const std::size_t ks = model.ps_index(a0, a1, st.ss, ts);
      const double p0s = p0 * model.ps[ks];
      const double r0s = r0 * model.rs[ks];
      for (int t1 = 0; t1 < d.ns1; ++t1, ++j) {
        const std::size_t k1 = model.p1_index(a1, st.s1, t1);
        const double p = p0s * model.p1[k1];
        prob[j] = p;
        expected += p * (r0s * model.r1[k1]);
      }
    }
  }
  return expected;
}

AugmentedDynamics augment(const FactoredCamdp& model, const JointPolicy& policy) {
  check_policy(model, policy);
  const Dims& d = model.dims;
  const int n = d.composite_count();
  AugmentedDynamics dyn;
  dyn.pbar.resize(n, n);
  dyn.rbar.resize(n, n);
  dyn.r_exp.resize(n);

  for (int i = 0; i < n; ++i) {
    const CompositeState st = decompose_index(i, d);
    const int a0 = policy.pi0[agent0_cell(st.s0, st.ss, d)];
    const int a1 = policy.pi1[agent1_cell(st.s1, st.ss, d)];
    int j = 0;
    double expected = 0.0;
    for (int t0 = 0; t0 < d.ns0; ++t0) {
      const std::size_t k0 = model.p0_index(a0, st.s0, t0);
      for (int ts = 0; ts < d.nss; ++ts) {
        const std::size_t ks = model.ps_index(a0, a1, st.ss, ts);
        for (int t1 = 0; t1 < d.ns1; ++t1, ++j) {
          const std::size_t k1 = model.p1_index(a1, st.s1, t1);
          const double p = model.p0[k0] * model.ps[ks] * model.p1[k1];
          const double r = model.r0[k0] * model.rs[ks] * model.r1[k1];
          dyn.pbar(i, j) = p;
          dyn.rbar(i, j) = r;
          expected += p * r;
        }
      }
    }
    dyn.r_exp[i] = expected;
  }
  return dyn;
}

Eigen::MatrixXd kron3(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                      const Eigen::MatrixXd& c) {
  auto kron = [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    Eigen::MatrixXd out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      for (Eigen::Index j = 0; j < x.cols(); ++j) {
        out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
      }
    }
    return out;
  };
  return kron(kron(a, b), c);
}

Eigen::MatrixXd p0_matrix(const FactoredCamdp& model, int a0) {
  const int n = model.dims.ns0;
  Eigen::MatrixXd m(n, n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) m(s, t) = model.p0[model.p0_index(a0, s, t)];
  return m;
}

Eigen::MatrixXd ps_matrix(const FactoredCamdp& model, int a0, int a1) {
  const int n = model.dims.nss;
  Eigen::MatrixXd m(n, n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) m(s, t) = model.ps[model.ps_index(a0, a1, s, t)];
  return m;
}

Eigen::MatrixXd p1_matrix(const FactoredCamdp& model, int a1) {
  const int n = model.dims.ns1;
  Eigen::MatrixXd m(n, n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) m(s, t) = model.p1[model.p1_index(a1, s, t)];
  return m;
}

}  // namespace camdp
