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

#include "camdp/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "camdp/errors.hpp"
#include "camdp/fixtures.hpp"

namespace camdp {

namespace {

void parallel_for(long count, unsigned threads, const std::function<void(long)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<long>(threads, std::max(1L, count)));
  std::atomic<long> next{0};
  std::mutex guard;
  std::exception_ptr failure;
  auto worker = [&] {
    for (long k = next++; k < count; k = next++) {
      try {
        fn(k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(guard);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

GammaSweep run_gamma_sweep(const FactoredCamdp& model,
                           const std::vector<JointPolicy>& policies,
                           const std::vector<double>& gammas) {
  for (double g : gammas) check_gamma(g);
  GammaSweep out;
  out.gammas = gammas;
  out.policies = policies;
  for (const JointPolicy& p : policies) {
    const AugmentedDynamics dyn = augment(model, p);
    std::vector<Eigen::VectorXd> vs;
    std::vector<double> spreads;
    for (double g : gammas) {
      Eigen::VectorXd v = evaluate_exact(dyn, g).v;
      spreads.push_back((v.maxCoeff() - v.minCoeff()) / v.mean());
      vs.push_back(std::move(v));
    }
    out.values.push_back(std::move(vs));
    out.relative_spread.push_back(std::move(spreads));
  }
  return out;
}

std::string gamma_sweep_to_csv(const GammaSweep& sweep, const std::string& config_json) {
  std::ostringstream out;
  out.precision(17);
  out << "# config: " << config_json << '\n';
  const long n = sweep.values.empty() || sweep.values[0].empty()
                     ? 0
                     : static_cast<long>(sweep.values[0][0].size());
  out << "pi0,pi1,gamma";
  for (long s = 0; s < n; ++s) out << ",v" << s;
  out << ",mean,max_minus_min,relative_spread\n";
  for (std::size_t p = 0; p < sweep.policies.size(); ++p) {
    for (std::size_t g = 0; g < sweep.gammas.size(); ++g) {
      const Eigen::VectorXd& v = sweep.values[p][g];
      out << format_policy(sweep.policies[p].pi0) << ',' << format_policy(sweep.policies[p].pi1)
          << ',' << sweep.gammas[g];
      for (long s = 0; s < v.size(); ++s) out << ',' << v(s);
      out << ',' << v.mean() << ',' << v.maxCoeff() - v.minCoeff() << ','
          << sweep.relative_spread[p][g] << '\n';
    }
  }
  return out.str();
}

namespace {

void analyze_one(McModelResult& res, const GeneratorSpec& base, const SolverConfig& cfg) {
  GeneratorSpec spec = base;
  spec.seed = res.seed;
  try {
    const FactoredCamdp model = random_camdp(spec);
    const ValueMatrix vm = enumerate_value_matrix(model, cfg);
    ConditionReport& r = res.report;
    r.dominant_line = check_dominant_line(vm);
    r.observable = check_observability(model, cfg);
    Eigen::Index bi = 0, bj = 0;
    vm.values.maxCoeff(&bi, &bj);
    r.observable_at_optimum = observable_under(model, vm.policy(bi, bj), cfg);
    r.convergence = check_global_convergence(model, cfg, vm);
    r.dominance = dominance_counts(vm);
    r.nash_equilibria = find_nash_equilibria(vm);
    r.value_max = vm.max();
    r.min_gap = vm.min_gap;

    std::set<std::pair<long, long>> ne;
    for (const auto& c : r.nash_equilibria) ne.insert({c.row, c.col});
    for (const auto& run : r.convergence.runs) {
      if (run.terminal) {
        const long i = vm.space.index_of(AgentId::agent0, run.terminal->pi0);
        const long j = vm.space.index_of(AgentId::agent1, run.terminal->pi1);
        if (ne.count({i, j}) == 0) {
          ++res.terminal_not_ne;
          if (r.cond2()) ++res.terminal_not_ne_observable;
        }
      }
      if (r.cond1() && r.cond2() && (!run.reached_max || run.round_reaching_final > 2)) {
        ++res.dominant_line_slow_runs;
      }
    }
    r.convergence.runs.clear();
    r.convergence.runs.shrink_to_fit();
    res.ok = true;
  } catch (const Error& e) {
    res.ok = false;
    res.error = e.what();
  }
}

}  // namespace

McSummary run_mc_conditions(const GeneratorSpec& base, long count, const SolverConfig& cfg,
                            unsigned threads) {
  if (count < 1) throw DomainError("count must be at least 1");
  base.validate();
  cfg.validate();
  McSummary s;
  s.count = count;
  s.models.resize(count);
  for (long k = 0; k < count; ++k) {
    s.models[k].index = k;
    s.models[k].seed = base.seed + static_cast<std::uint64_t>(k);
  }
  parallel_for(count, threads, [&](long k) { analyze_one(s.models[k], base, cfg); });

  for (const auto& m : s.models) {
    if (!m.ok) {
      ++s.failures;
      continue;
    }
    const ConditionReport& r = m.report;
    s.cond1 += r.cond1();
    s.cond2 += r.cond2();
    s.cond3 += r.cond3();
    s.cond12 += r.cond1() && r.cond2();
    s.implication_violations += !r.implication_holds();
    s.cond2_at_optimum += r.observable_at_optimum;
    const bool weak12 = r.cond1() && r.observable_at_optimum;
    s.cond1_and_cond2_at_optimum += weak12;
    s.weak_implication_violations += weak12 && !r.cond3();
    s.ne_bound_violations += !r.ne_bound_holds();
    s.terminal_not_ne += m.terminal_not_ne;
    s.terminal_not_ne_observable += m.terminal_not_ne_observable;
    s.dominant_line_slow_runs += m.dominant_line_slow_runs;
    s.zero_gap_models += r.min_gap <= 0.0;
    s.monotonicity.merge(r.convergence.monotonicity);
  }
  return s;
}

std::string mc_summary_to_csv(const McSummary& s, const std::string& config_json) {
  std::ostringstream out;
  out << "# config: " << config_json << '\n';
  out << "metric,count\n";
  out << "models," << s.count << '\n';
  out << "generation_or_analysis_failures," << s.failures << '\n';
  out << "cond1," << s.cond1 << '\n';
  out << "cond2," << s.cond2 << '\n';
  out << "cond3," << s.cond3 << '\n';
  out << "cond1_and_cond2," << s.cond12 << '\n';
  out << "implication_violations," << s.implication_violations << '\n';
  out << "cond2_at_optimum," << s.cond2_at_optimum << '\n';
  out << "cond1_and_cond2_at_optimum," << s.cond1_and_cond2_at_optimum << '\n';
  out << "implication_violations_at_optimum," << s.weak_implication_violations << '\n';
  out << "ne_bound_violations," << s.ne_bound_violations << '\n';
  out << "terminal_not_ne," << s.terminal_not_ne << '\n';
  out << "terminal_not_ne_observable," << s.terminal_not_ne_observable << '\n';
  out << "dominant_line_slow_runs," << s.dominant_line_slow_runs << '\n';
  out << "zero_gap_models," << s.zero_gap_models << '\n';
  out << "improvement_steps," << s.monotonicity.accepted_steps << '\n';
  out << "consistent_improvement_steps," << s.monotonicity.consistent_steps << '\n';
  out << "monotonicity_violations," << s.monotonicity.violations << '\n';
  return out.str();
}

bool trace_visits_value(const IterationTrace& trace, double value, double tol) {
  return std::any_of(trace.steps.begin(), trace.steps.end(),
                     [&](const TraceStep& s) { return std::abs(s.value - value) <= tol; });
}

CaseStudyReport run_case_study(const SolverConfig& cfg, int seed_count) {
  cfg.validate();
  if (seed_count < 0) throw DomainError("seed count must be non-negative");
  const FactoredCamdp model = case_study_model();
  const JointPolicy start = case_study_initial_policy();
  CaseStudyReport r;
  r.vm = enumerate_value_matrix(model, cfg);
  r.nash = find_nash_equilibria(r.vm);
  const double best = r.vm.max();

  r.alternating = alternate_iterate(model, start, cfg);

  SolverConfig greedy = cfg;
  greedy.epsilon_explore = 0.0;
  r.greedy_baseline = epsilon_greedy_iterate(model, start, greedy);
  r.baseline_visits_max = trace_visits_value(r.greedy_baseline, best);

  r.seeds.resize(seed_count);
  r.exploring.resize(seed_count);
  for (int k = 0; k < seed_count; ++k) r.seeds[k] = cfg.seed + static_cast<std::uint64_t>(k);
  parallel_for(seed_count, 0, [&](long k) {
    SolverConfig run = cfg;
    run.seed = r.seeds[k];
    r.exploring[k] = epsilon_greedy_iterate(model, start, run);
  });
  for (const auto& t : r.exploring) {
    r.terminated_at_max += std::abs(t.final_value() - best) <= kValueTolerance;
    r.visited_max += trace_visits_value(t, best);
  }
  return r;
}

}  // namespace camdp
