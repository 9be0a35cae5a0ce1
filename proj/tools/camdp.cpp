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

// camdp: command-line front end for the camdp library.
//
//   camdp solve        --fixture paper-case-study --pi0 0,0,0,0 --pi1 1,0,0,0
//   camdp enumerate    --generate --seed 7 --format csv
//   camdp conditions   --model model.json
//   camdp gamma-sweep  --generate --seed 3
//   camdp mc-conditions --count 1000 --seed 1
//   camdp case-study   --count 100
//   camdp reduce       --fixture paper-case-study --preset ss-only
//   camdp generate     --count 10 --seed 42
//
// Outputs go to --out, else $CAMDP_OUT_DIR, else ./camdp_out.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "camdp/chain_structure.hpp"
#include "camdp/equilibrium.hpp"
#include "camdp/errors.hpp"
#include "camdp/evaluation.hpp"
#include "camdp/experiments.hpp"
#include "camdp/fixtures.hpp"
#include "camdp/generator.hpp"
#include "camdp/model_io.hpp"
#include "camdp/policy_engine.hpp"
#include "camdp/reduction.hpp"
#include "camdp/serialization.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitIo = 4;

struct Options {
  std::string model_path;
  std::string fixture;
  bool generate = false;
  std::vector<int> dims{2, 2, 2, 2, 2};
  std::optional<double> gamma;
  double theta = 1e-6;
  double epsilon = 0.1;
  double eta = 0.0;
  int max_iter = 1000;
  std::string aggregator = "max";
  std::string first_mover = "agent0";
  std::string mode = "full-info";
  std::uint64_t seed = 0;
  std::optional<long> count;
  std::string out;
  std::string format = "csv";
  unsigned threads = 0;

  // solve
  std::string driver = "alternate";
  std::string pi0;
  std::string pi1;
  bool require_convergence = false;
  // gamma-sweep
  std::vector<double> gammas{0.5, 0.75, 0.95, 0.998};
  std::vector<std::string> policies;
  // reduce
  std::string preset;
  std::string partition;
  std::optional<double> prune_threshold;
};

struct ModelSource {
  camdp::FactoredCamdp model;
  json description;
};

fs::path output_dir(const Options& o) {
  if (!o.out.empty()) return o.out;
  if (const char* env = std::getenv("CAMDP_OUT_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return "camdp_out";
}

void write_file(const fs::path& path, const std::string& content) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  if (ec) throw camdp::IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw camdp::IoError("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw camdp::IoError("write to " + path.string() + " failed");
}

camdp::GeneratorSpec generator_spec(const Options& o) {
  if (o.dims.size() != 5) throw camdp::DomainError("--dims takes ns0,nss,ns1,na0,na1");
  camdp::GeneratorSpec spec;
  spec.dims = camdp::Dims{o.dims[0], o.dims[1], o.dims[2], o.dims[3], o.dims[4]};
  spec.seed = o.seed;
  return spec;
}

json dims_json(const camdp::Dims& d) {
  return {{"ns0", d.ns0}, {"nss", d.nss}, {"ns1", d.ns1}, {"na0", d.na0}, {"na1", d.na1}};
}

json generator_json(const camdp::GeneratorSpec& spec) {
  return {{"generator", camdp::kGeneratorName},
          {"transition_law", camdp::kTransitionLaw},
          {"reward_law", camdp::kRewardLaw},
          {"reward_min", spec.reward_min},
          {"seed", spec.seed},
          {"dims", dims_json(spec.dims)}};
}

ModelSource load_source(const Options& o) {
  const int chosen = (!o.model_path.empty()) + (!o.fixture.empty()) + (o.generate ? 1 : 0);
  if (chosen > 1) throw camdp::DomainError("give exactly one of --model, --fixture, --generate");
  ModelSource src;
  if (!o.model_path.empty()) {
    src.model = camdp::load_model(o.model_path);
    src.description = {{"model", o.model_path}};
  } else if (o.generate) {
    const auto spec = generator_spec(o);
    src.model = camdp::random_camdp(spec);
    src.description = {{"generate", generator_json(spec)}};
  } else {
    const std::string name = o.fixture.empty() ? std::string(camdp::kCaseStudyFixture) : o.fixture;
    auto m = camdp::fixture_by_name(name);
    if (!m) throw camdp::DomainError("unknown fixture '" + name + "'");
    src.model = std::move(*m);
    src.description = {{"fixture", name}};
  }
  return src;
}

camdp::SolverConfig solver_config(const Options& o, double default_gamma) {
  camdp::SolverConfig cfg;
  cfg.gamma = o.gamma.value_or(default_gamma);
  cfg.theta = o.theta;
  cfg.epsilon_explore = o.epsilon;
  cfg.eta = o.eta;
  cfg.max_iterations = o.max_iter;
  cfg.aggregator = *camdp::parse_aggregator(o.aggregator);
  cfg.first_mover = *camdp::parse_agent(o.first_mover);
  cfg.improvement_mode = *camdp::parse_improvement_mode(o.mode);
  cfg.seed = o.seed;
  cfg.validate();
  return cfg;
}

std::string config_json(const camdp::SolverConfig& cfg, const std::string& command,
                        const json& source) {
  json extra = {{"command", command}, {"source", source}};
  return camdp::config_to_json(cfg, extra.dump());
}

camdp::JointPolicy initial_policy(const Options& o, const camdp::FactoredCamdp& m) {
  camdp::JointPolicy p;
  p.pi0 = o.pi0.empty() ? camdp::SubPolicy(m.dims.agent0_cells(), 0) : camdp::parse_sub_policy(o.pi0);
  p.pi1 = o.pi1.empty() ? camdp::SubPolicy(m.dims.agent1_cells(), 0) : camdp::parse_sub_policy(o.pi1);
  camdp::check_policy(m, p);
  return p;
}

void report(const std::string& line) { std::cout << line << '\n'; }

int cmd_solve(const Options& o) {
  const ModelSource src = load_source(o);
  const auto cfg = solver_config(o, 0.9);
  const auto conf = config_json(cfg, "solve", src.description);
  const auto start = initial_policy(o, src.model);

  camdp::IterationTrace trace;
  if (o.driver == "alternate") {
    trace = camdp::alternate_iterate(src.model, start, cfg);
  } else if (o.driver == "simultaneous") {
    trace = camdp::simultaneous_iterate(src.model, start, cfg);
  } else {
    trace = camdp::epsilon_greedy_iterate(src.model, start, cfg);
  }
  const fs::path dir = output_dir(o);
  write_file(dir / "solve_trace.jsonl", camdp::trace_to_jsonl(trace, conf));

  const auto dyn = camdp::augment(src.model, trace.final_policy());
  const auto exact = camdp::evaluate_exact(dyn, cfg.gamma, camdp::check_quasi_positive(dyn));
  const auto iter = camdp::evaluate_iterative(dyn, cfg.gamma, cfg.theta);
  write_file(dir / "solve_evaluation.jsonl",
             camdp::evaluation_to_json(exact, cfg.aggregator, conf) + "\n" +
                 camdp::evaluation_to_json(iter, cfg.aggregator, conf) + "\n");

  std::ostringstream os;
  os.precision(6);
  os << "outcome " << camdp::to_string(trace.outcome) << " after " << trace.rounds
     << " rounds; final " << camdp::format_policy(trace.final_policy().pi0) << ' '
     << camdp::format_policy(trace.final_policy().pi1) << " value " << trace.final_value();
  report(os.str());
  report("wrote " + (dir / "solve_trace.jsonl").string());
  if (o.require_convergence && trace.outcome != camdp::Outcome::converged) {
    return kExitNonConvergence;
  }
  return kExitOk;
}

int cmd_enumerate(const Options& o) {
  const ModelSource src = load_source(o);
  const auto cfg = solver_config(o, 0.9);
  const auto conf = config_json(cfg, "enumerate", src.description);
  const auto vm = camdp::enumerate_value_matrix(src.model, cfg);
  const auto ne = camdp::find_nash_equilibria(vm);
  const fs::path dir = output_dir(o);
  if (o.format == "csv") {
    write_file(dir / "value_matrix.csv", camdp::value_matrix_to_csv(vm, conf));
  } else {
    write_file(dir / "value_matrix.jsonl", camdp::value_matrix_to_json(vm, conf) + "\n");
  }
  json rec = {{"nash_equilibria", json::parse(camdp::nash_to_json(vm, ne))},
              {"config", json::parse(conf)}};
  write_file(dir / "nash_equilibria.jsonl", rec.dump() + "\n");

  std::ostringstream os;
  os.precision(6);
  os << vm.rows() << "x" << vm.cols() << " matrix, max " << vm.max() << ", "
     << ne.size() << " pure equilibria";
  report(os.str());
  for (const auto& c : ne) {
    const auto p = vm.policy(c.row, c.col);
    std::ostringstream line;
    line.precision(6);
    line << "  NE " << camdp::format_policy(p.pi0) << ' ' << camdp::format_policy(p.pi1)
         << " value " << c.value;
    report(line.str());
  }
  return kExitOk;
}

int cmd_conditions(const Options& o) {
  const ModelSource src = load_source(o);
  const auto cfg = solver_config(o, 0.9);
  const auto conf = config_json(cfg, "conditions", src.description);
  const auto r = camdp::analyze_conditions(src.model, cfg);
  const fs::path dir = output_dir(o);
  write_file(dir / "conditions.jsonl", camdp::condition_report_to_json(r, conf, true) + "\n");
  std::ostringstream os;
  os << "cond1 " << r.cond1() << " cond2 " << r.cond2() << " cond3 " << r.cond3()
     << " NE " << r.nash_equilibria.size() << " bound " << r.dominance.ne_bound()
     << " implication " << (r.implication_holds() ? "holds" : "VIOLATED");
  report(os.str());
  return kExitOk;
}

int cmd_gamma_sweep(const Options& o) {
  const ModelSource src = load_source(o);
  const auto cfg = solver_config(o, 0.9);
  json source = src.description;
  source["gammas"] = o.gammas;
  const auto conf = config_json(cfg, "gamma-sweep", source);
  std::vector<camdp::JointPolicy> policies;
  for (const auto& text : o.policies) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) throw camdp::DomainError("--policy takes PI0/PI1");
    camdp::JointPolicy p{camdp::parse_sub_policy(text.substr(0, slash)),
                         camdp::parse_sub_policy(text.substr(slash + 1))};
    camdp::check_policy(src.model, p);
    policies.push_back(std::move(p));
  }
  if (policies.empty()) {
    const auto& d = src.model.dims;
    policies.push_back({camdp::SubPolicy(d.agent0_cells(), 0), camdp::SubPolicy(d.agent1_cells(), 0)});
    policies.push_back({camdp::SubPolicy(d.agent0_cells(), d.na0 - 1),
                        camdp::SubPolicy(d.agent1_cells(), d.na1 - 1)});
  }
  const auto sweep = camdp::run_gamma_sweep(src.model, policies, o.gammas);
  const fs::path dir = output_dir(o);
  if (o.format == "csv") {
    write_file(dir / "gamma_sweep.csv", camdp::gamma_sweep_to_csv(sweep, conf));
  } else {
    std::ostringstream out;
    for (std::size_t p = 0; p < policies.size(); ++p) {
      for (std::size_t g = 0; g < o.gammas.size(); ++g) {
        const auto& v = sweep.values[p][g];
        json rec = {{"pi0", policies[p].pi0},
                    {"pi1", policies[p].pi1},
                    {"gamma", o.gammas[g]},
                    {"v", std::vector<double>(v.data(), v.data() + v.size())},
                    {"relative_spread", sweep.relative_spread[p][g]},
                    {"config", json::parse(conf)}};
        out << rec.dump() << '\n';
      }
    }
    write_file(dir / "gamma_sweep.jsonl", out.str());
  }
  for (std::size_t p = 0; p < policies.size(); ++p) {
    std::ostringstream os;
    os.precision(4);
    os << camdp::format_policy(policies[p].pi0) << ' ' << camdp::format_policy(policies[p].pi1)
       << " relative spread:";
    for (double s : sweep.relative_spread[p]) os << ' ' << s;
    report(os.str());
  }
  return kExitOk;
}

int cmd_mc_conditions(const Options& o) {
  const auto cfg = solver_config(o, 0.9);
  const auto spec = generator_spec(o);
  const long count = o.count.value_or(1000);
  const auto conf = config_json(cfg, "mc-conditions", {{"generate", generator_json(spec)},
                                                       {"count", count}});
  const auto s = camdp::run_mc_conditions(spec, count, cfg, o.threads);
  const fs::path dir = output_dir(o);
  if (o.format == "csv") {
    write_file(dir / "mc_summary.csv", camdp::mc_summary_to_csv(s, conf));
  } else {
    json rec = {{"models", s.count},
                {"failures", s.failures},
                {"cond1", s.cond1},
                {"cond2", s.cond2},
                {"cond3", s.cond3},
                {"cond1_and_cond2", s.cond12},
                {"implication_violations", s.implication_violations},
                {"ne_bound_violations", s.ne_bound_violations},
                {"config", json::parse(conf)}};
    write_file(dir / "mc_summary.jsonl", rec.dump() + "\n");
  }
  std::ostringstream reports;
  for (const auto& m : s.models) {
    json model_conf = json::parse(conf);
    model_conf["model_seed"] = m.seed;
    if (m.ok) {
      reports << camdp::condition_report_to_json(m.report, model_conf.dump()) << '\n';
    } else {
      reports << json{{"model_seed", m.seed}, {"error", m.error}, {"config", model_conf}}.dump()
              << '\n';
    }
  }
  write_file(dir / "mc_reports.jsonl", reports.str());
  std::ostringstream os;
  os << s.count << " models: cond1 " << s.cond1 << ", cond2 " << s.cond2 << ", cond3 "
     << s.cond3 << ", cond1&cond2 " << s.cond12 << ", implication violations "
     << s.implication_violations << ", NE bound violations " << s.ne_bound_violations
     << ", failures " << s.failures;
  report(os.str());
  return kExitOk;
}

int cmd_case_study(const Options& o) {
  const auto cfg = solver_config(o, camdp::kCaseStudyGamma);
  const int seeds = static_cast<int>(o.count.value_or(100));
  const json source = {{"fixture", camdp::kCaseStudyFixture}};
  const auto conf = config_json(cfg, "case-study", source);
  const auto r = camdp::run_case_study(cfg, seeds);
  const fs::path dir = output_dir(o);
  if (o.format == "csv") {
    write_file(dir / "case_study_value_matrix.csv", camdp::value_matrix_to_csv(r.vm, conf));
  } else {
    write_file(dir / "case_study_value_matrix.jsonl", camdp::value_matrix_to_json(r.vm, conf) + "\n");
  }
  write_file(dir / "case_study_alternate.jsonl", camdp::trace_to_jsonl(r.alternating, conf));
  write_file(dir / "case_study_greedy_baseline.jsonl",
             camdp::trace_to_jsonl(r.greedy_baseline, conf, json{{"epsilon", 0.0}}.dump()));
  std::ostringstream traces;
  for (std::size_t k = 0; k < r.exploring.size(); ++k) {
    traces << camdp::trace_to_jsonl(r.exploring[k], conf, json{{"run_seed", r.seeds[k]}}.dump());
  }
  write_file(dir / "case_study_epsilon_greedy.jsonl", traces.str());

  Eigen::Index bi = 0, bj = 0;
  const double best = r.vm.values.maxCoeff(&bi, &bj);
  const auto best_policy = r.vm.policy(bi, bj);
  json summary = {
      {"global_max", {{"pi0", best_policy.pi0}, {"pi1", best_policy.pi1}, {"value", best}}},
      {"nash_equilibria", json::parse(camdp::nash_to_json(r.vm, r.nash))},
      {"alternate", {{"outcome", camdp::to_string(r.alternating.outcome)},
                     {"pi0", r.alternating.final_policy().pi0},
                     {"pi1", r.alternating.final_policy().pi1},
                     {"value", r.alternating.final_value()}}},
      {"greedy_baseline_visits_max", r.baseline_visits_max},
      {"seeds", seeds},
      {"terminated_at_max", r.terminated_at_max},
      {"visited_max", r.visited_max},
      {"config", json::parse(conf)}};
  write_file(dir / "case_study_summary.jsonl", summary.dump() + "\n");

  std::ostringstream os;
  os.precision(5);
  os << "global max " << best << " at " << camdp::format_policy(best_policy.pi0) << ' '
     << camdp::format_policy(best_policy.pi1) << "\nalternate from "
     << camdp::format_policy(camdp::case_study_initial_policy().pi0) << ' '
     << camdp::format_policy(camdp::case_study_initial_policy().pi1) << " -> "
     << camdp::format_policy(r.alternating.final_policy().pi0) << ' '
     << camdp::format_policy(r.alternating.final_policy().pi1) << " value "
     << r.alternating.final_value() << "\nepsilon " << cfg.epsilon_explore << ": "
     << r.terminated_at_max << "/" << seeds << " seeds end at the max, " << r.visited_max
     << "/" << seeds << " visit it; epsilon 0 visits it: "
     << (r.baseline_visits_max ? "yes" : "no");
  report(os.str());
  return kExitOk;
}

int cmd_reduce(const Options& o) {
  const ModelSource src = load_source(o);
  const auto cfg = solver_config(o, o.fixture.empty() && o.model_path.empty() && !o.generate
                                        ? camdp::kCaseStudyGamma
                                        : 0.9);
  const auto conf = config_json(cfg, "reduce", src.description);
  camdp::PolicyConstraint constraint;
  if (!o.partition.empty()) {
    constraint = camdp::parse_partition(o.partition, src.model.dims);
  } else {
    const std::string name = o.preset.empty() ? "ss-only" : o.preset;
    auto c = camdp::constraint_preset(name, src.model.dims);
    if (!c) throw camdp::DomainError("unknown preset '" + name + "'");
    constraint = std::move(*c);
  }
  const auto vm = camdp::enumerate_value_matrix(src.model, cfg);
  const auto r = camdp::constrained_best(vm, constraint);
  json rec = json::parse(camdp::reduction_report_to_json(r, conf));
  if (o.prune_threshold) {
    rec["prune_threshold"] = *o.prune_threshold;
    rec["pruned_agent0"] = camdp::prune_by_value(vm, *o.prune_threshold, camdp::AgentId::agent0);
    rec["pruned_agent1"] = camdp::prune_by_value(vm, *o.prune_threshold, camdp::AgentId::agent1);
  }
  const fs::path dir = output_dir(o);
  write_file(dir / "reduction.jsonl", rec.dump() + "\n");
  std::ostringstream os;
  os.precision(5);
  os << r.label << ": " << r.original_count << " -> " << r.reduced_count
     << " policies, best " << r.best_original << " -> " << r.best_reduced << " (delta "
     << r.delta_v << ", spread " << r.spread << ")";
  report(os.str());
  return kExitOk;
}

int cmd_generate(const Options& o) {
  auto spec = generator_spec(o);
  const long count = o.count.value_or(1);
  if (count < 1) throw camdp::DomainError("--count must be at least 1");
  const fs::path dir = output_dir(o);
  for (long k = 0; k < count; ++k) {
    spec.seed = o.seed + static_cast<std::uint64_t>(k);
    const auto model = camdp::random_camdp(spec);
    const fs::path path = dir / ("model_seed" + std::to_string(spec.seed) + ".json");
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw camdp::IoError("cannot create " + dir.string() + ": " + ec.message());
    camdp::save_model(model, path, generator_json(spec).dump());
    report("wrote " + path.string());
  }
  return kExitOk;
}

void add_common(CLI::App& sub, Options& o, bool model_source) {
  if (model_source) {
    auto* m = sub.add_option("--model", o.model_path, "Model file (JSON)");
    auto* f = sub.add_option("--fixture", o.fixture, "Built-in fixture name");
    auto* g = sub.add_flag("--generate", o.generate, "Generate a random model from --seed/--dims");
    m->excludes(f)->excludes(g);
    f->excludes(g);
  }
  sub.add_option("--dims", o.dims, "ns0,nss,ns1,na0,na1 for generated models")->delimiter(',')->expected(5);
  sub.add_option("--gamma", o.gamma, "Discount factor in [0,1)");
  sub.add_option("--theta", o.theta, "Iterative evaluation tolerance");
  sub.add_option("--epsilon", o.epsilon, "Exploration probability");
  sub.add_option("--eta", o.eta, "Agent0 switching threshold");
  sub.add_option("--max-iter", o.max_iter, "Iteration cap");
  sub.add_option("--aggregator", o.aggregator)->check(CLI::IsMember({"max", "mean"}));
  sub.add_option("--first-mover", o.first_mover)->check(CLI::IsMember({"agent0", "agent1"}));
  sub.add_option("--mode", o.mode)->check(CLI::IsMember({"full-info", "partial-info"}));
  sub.add_option("--seed", o.seed);
  sub.add_option("--count", o.count);
  sub.add_option("--out", o.out, "Output directory");
  sub.add_option("--format", o.format)->check(CLI::IsMember({"csv", "jsonl"}));
  sub.add_option("--threads", o.threads, "Worker threads (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cooperative two-agent MDP toolkit"};
  app.require_subcommand(1);
  Options o;

  auto* solve = app.add_subcommand("solve", "Run a policy iteration driver from one start");
  add_common(*solve, o, true);
  solve->add_option("--driver", o.driver)
      ->check(CLI::IsMember({"alternate", "simultaneous", "epsilon-greedy"}));
  solve->add_option("--pi0", o.pi0, "Initial Agent0 policy, e.g. 0,0,0,0");
  solve->add_option("--pi1", o.pi1, "Initial Agent1 policy");
  solve->add_flag("--require-convergence", o.require_convergence,
                  "Exit 3 unless the driver converges");

  auto* enumerate = app.add_subcommand("enumerate", "Value matrix and pure equilibria");
  add_common(*enumerate, o, true);

  auto* conditions = app.add_subcommand("conditions", "Dominance, observability, convergence");
  add_common(*conditions, o, true);

  auto* sweep = app.add_subcommand("gamma-sweep", "Per-state values across discount factors");
  add_common(*sweep, o, true);
  sweep->add_option("--gammas", o.gammas)->delimiter(',');
  sweep->add_option("--policy", o.policies, "Joint policy PI0/PI1, repeatable");

  auto* mc = app.add_subcommand("mc-conditions", "Condition counts over generated models");
  add_common(*mc, o, false);

  auto* cs = app.add_subcommand("case-study", "Built-in case study");
  add_common(*cs, o, false);

  auto* reduce = app.add_subcommand("reduce", "Constrained policy search");
  add_common(*reduce, o, true);
  reduce->add_option("--preset", o.preset)->check(CLI::IsMember({"s0-only", "ss-only", "s1-only"}));
  reduce->add_option("--partition", o.partition, "Explicit partition, e.g. agent0:0,2;1,3");
  reduce->add_option("--prune-threshold", o.prune_threshold, "Also list prunable sub-policies");

  auto* generate = app.add_subcommand("generate", "Write random model files");
  add_common(*generate, o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*solve) return cmd_solve(o);
    if (*enumerate) return cmd_enumerate(o);
    if (*conditions) return cmd_conditions(o);
    if (*sweep) return cmd_gamma_sweep(o);
    if (*mc) return cmd_mc_conditions(o);
    if (*cs) return cmd_case_study(o);
    if (*reduce) return cmd_reduce(o);
    if (*generate) return cmd_generate(o);
  } catch (const camdp::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    for (const auto& v : e.violations()) std::cerr << "  " << v << '\n';
    return kExitValidation;
  } catch (const camdp::NonConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const camdp::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const camdp::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const camdp::DimensionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const camdp::SizeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const camdp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}
