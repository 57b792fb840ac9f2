// Copyright (c) arrival contributors.
// SPDX-License-Identifier: Apache-2.0
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "arrival/commands.hpp"

namespace {

using arrival::GenParams;
using arrival::StrategyOptions;

struct RationalFlag {
  std::string text;
  bool set = false;
};

void add_gen_flags(CLI::App* cmd, GenParams& gen, std::string& family) {
  cmd->add_option("--n", gen.n, "vertex count");
  cmd->add_option("--terminals", gen.terminal_count, "terminal count");
  cmd->add_option("--tokens", [&gen](const std::vector<std::string>& values) {
        gen.token_budget = arrival::parse_decimal_int(values.back(), "--tokens");
        return true;
      }, "token budget (decimal, may exceed 64 bits)");
  cmd->add_option("--family", family,
                  "instance family: uniform|low_treewidth|low_fvs|acyclic");
  cmd->add_option("--seed", gen.seed, "PRNG seed");
}

void add_strategy_flags(CLI::App* cmd, StrategyOptions& options) {
  auto rational_opt = [cmd, &options](const char* flag, const char* help,
                                      std::optional<arrival::Rat> StrategyOptions::*member) {
    cmd->add_option(flag, [&options, member, flag = std::string(flag)](
                              const std::vector<std::string>& values) {
          options.*member = arrival::parse_rational(values.back(), flag);
          return true;
        }, help);
  };
  rational_opt("--delta", "contraction rounding slack in (0,1), default 1/4",
               &StrategyOptions::delta);
  rational_opt("--eps", "fixed-point residual bound, default (1-lambda)/8",
               &StrategyOptions::eps);
  rational_opt("--lambda", "discount override in [0,1)", &StrategyOptions::lambda);
  cmd->add_option("--step-budget", [&options](const std::vector<std::string>& values) {
        options.step_budget =
            arrival::parse_decimal_int(values.back(), "--step-budget");
        return true;
      }, "simulation move budget override");
  cmd->add_flag("--probe-cache", options.probe_cache,
                "cache binary-search probes keyed by (terminal set, token vector)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"G-ARRIVAL solver: token simulation, recursive/separator/FVS "
               "pivoting, and l1-contraction fixed points, all certified by "
               "integral switching flows"};
  app.require_subcommand(1);

  std::string instance_path, flow_path, strategy = "simulate";
  StrategyOptions options;
  GenParams gen;
  std::string family = "uniform";
  std::vector<std::string> strategies;
  int count = 1, repetitions = 1;

  auto* solve = app.add_subcommand("solve", "solve an instance file");
  solve->add_option("instance", instance_path, "instance JSON path")->required();
  solve->add_option("--strategy", strategy,
                    "simulate|recursive|separator|fvs|contraction");
  add_strategy_flags(solve, options);

  auto* verify = app.add_subcommand("verify", "verify a switching flow certificate");
  verify->add_option("instance", instance_path, "instance JSON path")->required();
  verify->add_option("flow", flow_path, "flow JSON path")->required();

  auto* gen_cmd = app.add_subcommand("gen", "generate a seeded instance");
  add_gen_flags(gen_cmd, gen, family);

  auto* crosscheck = app.add_subcommand(
      "crosscheck", "run several strategies and compare their answers");
  crosscheck->add_option("instance", instance_path, "instance JSON path (optional)");
  add_gen_flags(crosscheck, gen, family);
  crosscheck->add_option("--count", count, "number of seeded instances");
  crosscheck->add_option("--strategies", strategies, "strategies to compare")
      ->delimiter(',');
  add_strategy_flags(crosscheck, options);

  auto* bench = app.add_subcommand("bench", "time strategies over seeded instances");
  add_gen_flags(bench, gen, family);
  bench->add_option("--count", count, "number of seeded instances");
  bench->add_option("--reps", repetitions, "repetitions per (seed, strategy)");
  bench->add_option("--strategies", strategies, "strategies to run")->delimiter(',');
  add_strategy_flags(bench, options);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return arrival::kExitInvalid;
  }

  try {
    gen.family = arrival::family_from_name(family);
  } catch (const arrival::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return arrival::kExitInvalid;
  }

  if (solve->parsed())
    return arrival::cmd_solve(instance_path, strategy, options, std::cout, std::cerr);
  if (verify->parsed())
    return arrival::cmd_verify(instance_path, flow_path, std::cout, std::cerr);
  if (gen_cmd->parsed()) return arrival::cmd_gen(gen, std::cout, std::cerr);
  if (crosscheck->parsed()) {
    arrival::CrosscheckParams params{instance_path, gen, count, strategies, options};
    return arrival::cmd_crosscheck(params, std::cout, std::cerr);
  }
  if (bench->parsed()) {
    arrival::BenchParams params{gen, count, repetitions, strategies, options};
    return arrival::cmd_bench(params, std::cout, std::cerr);
  }
  return arrival::kExitInvalid;
}
