// omd_lab: run, certify and verify online mirror descent experiments.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "omdlab/config.hpp"
#include "omdlab/errors.hpp"
#include "omdlab/experiment.hpp"
#include "omdlab/inequalities.hpp"
#include "omdlab/sampling.hpp"

namespace {

using namespace omdlab;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  bool full_scale = false;
};

ExperimentConfig load(const std::string& path, const Overrides& o) {
  ExperimentConfig cfg = parse_config(path);
  if (o.seed) cfg.seed = *o.seed;
  if (o.out) cfg.output_dir = *o.out;
  if (o.full_scale && cfg.experiment == CostKind::kPoissonInverse) cfg.m = 1500;
  validate(cfg);
  return cfg;
}

int cmd_run(const ExperimentConfig& cfg) {
  const ExperimentResult r = run_experiment(cfg);
  write_outputs(r, cfg.output_dir);
  std::cout << "wrote " << cfg.output_dir.string() << "\n";
  for (std::size_t i = 0; i < r.arms.size(); ++i) {
    const RegretReport& rep = r.arms[i].report;
    std::cout << "  " << rep.regularizer << ": accumulated cost "
              << r.curves.cumulative[i].back() << ", dynamic regret " << rep.dynamic_regret
              << ", bounds " << (rep.all_hold() ? "hold" : "VIOLATED") << "\n";
  }
  return 0;
}

int cmd_certify(const ExperimentConfig& cfg) {
  const FeasibleSet set = feasible_set(cfg);
  const CostSequence costs = generate_costs(cfg);
  std::printf("%-6s %-6s %14s %14s %14s %14s %14s\n", "reg", "geom", "beta", "lambda", "gamma",
              "R", "M");
  for (const ArmSetup& a : certify_arms(cfg, costs, set)) {
    std::printf("%-6s %-6s %14.6g %14.6g %14.6g %14.6g %14.6g\n", a.regularizer.name().c_str(),
                a.geometry.name().c_str(), a.certificate.beta, a.certificate.lambda,
                a.constants.gamma, a.constants.R, a.M);
  }
  return 0;
}

int cmd_verify(const ExperimentConfig& cfg) {
  const ExperimentResult r = run_experiment(cfg);
  constexpr std::size_t kTriples = 1000;
  constexpr std::size_t kPerStep = 100;
  bool ok = true;
  auto print = [&](const std::string& arm, const CheckTally& t) {
    std::printf("%-6s %-24s %8zu checked %6zu failed  max violation %.3g  %s\n", arm.c_str(),
                t.name.c_str(), t.checked, t.failed, t.max_violation,
                t.passed() ? "PASS" : "FAIL");
    ok = ok && t.passed();
  };
  for (const ArmResult& arm : r.arms) {
    const std::string name = arm.setup.regularizer.name();
    const Trajectory& tr = arm.trajectory;
    const std::uint64_t seed = derive_seed(cfg.seed, 17);
    print(name, check_three_point(arm.setup.geometry, r.set, kTriples, seed));
    print(name, check_step_optimality(tr, r.set, kPerStep, seed));
    print(name, check_first_order_optimality(tr, r.set, kPerStep, seed));
    print(name, check_step_descent(tr, r.costs, r.set, arm.setup.certificate.beta, kPerStep, seed));
    print(name, check_bregman_lipschitz(tr, r.comparator.points, arm.setup.constants.gamma));
    print(name, check_telescoping(tr, r.comparator.points));
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online mirror descent experiments with relative-smoothness certificates"};
  app.require_subcommand(1);
  Overrides o;
  std::string config;
  std::uint64_t seed = 0;
  std::string out;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", config, "Experiment config file")->required();
    sub->add_option("--seed", seed, "Override the config seed");
    sub->add_option("--out", out, "Override the output directory");
    sub->add_flag("--full-scale", o.full_scale, "Poisson with m = 1500 rows");
  };
  CLI::App* run = app.add_subcommand("run", "Run every regularizer and write CSV outputs");
  CLI::App* certify = app.add_subcommand("certify", "Print beta, lambda, gamma, R, M");
  CLI::App* verify = app.add_subcommand("verify", "Check the per-step inequalities on a run");
  for (CLI::App* sub : {run, certify, verify}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 5;
  }

  try {
    CLI::App* used = app.get_subcommands().front();
    if (used->count("--seed")) o.seed = seed;
    if (used->count("--out")) o.out = out;
    const ExperimentConfig cfg = load(config, o);
    if (used == run) return cmd_run(cfg);
    if (used == certify) return cmd_certify(cfg);
    return cmd_verify(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}
