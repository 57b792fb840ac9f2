// Copyright (c) arrival contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "arrival/contraction.hpp"
#include "arrival/generate.hpp"
#include "arrival/simulate.hpp"
#include "arrival/solver.hpp"

namespace arrival {

// Exit codes shared by every command: 0 success, 1 invalid input or usage,
// 2 broken internal invariant.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitInternal = 2;

struct StrategyOptions {
  std::optional<Rat> delta;    // contraction; default 1/4
  std::optional<Rat> eps;      // contraction; default (1-lambda)/8
  std::optional<Rat> lambda;   // contraction; default default_lambda(delta)
  std::optional<Int> step_budget;  // simulate
  bool probe_cache = false;        // recursive solvers
};

struct StrategyOutcome {
  std::string strategy;
  ArrivalVector arrivals;
  // Absent for contraction runs whose fixed point induces fractional edges.
  std::optional<SwitchingFlow> flow;
  SolveTrace trace;
  // Contraction parameters actually used.
  std::optional<Rat> lambda, delta, eps;
  // Approximate fixed point over V∖T, ascending vertex order.
  std::optional<MassVector> fixed_point;
};

// Strategies: simulate, recursive, separator, fvs, contraction.
const std::vector<std::string>& known_strategies();
StrategyOutcome run_strategy(const Instance& inst, const std::string& strategy,
                             const StrategyOptions& options = {});

// Cross-strategy agreement over injectable solvers, so tests can feed a
// corrupted one. Checks identical arrivals plus verification of every
// produced flow (including the 2^n·t⁺ flow bound).
using NamedSolver =
    std::pair<std::string, std::function<StrategyOutcome(const Instance&)>>;
struct AgreementReport {
  bool agree = true;
  std::vector<std::string> failures;
};
AgreementReport crosscheck_instance(const Instance& inst,
                                    const std::vector<NamedSolver>& solvers);

int cmd_solve(const std::string& instance_path, const std::string& strategy,
              const StrategyOptions& options, std::ostream& out, std::ostream& err);

int cmd_verify(const std::string& instance_path, const std::string& flow_path,
               std::ostream& out, std::ostream& err);

int cmd_gen(const GenParams& params, std::ostream& out, std::ostream& err);

struct CrosscheckParams {
  std::string instance_path;  // when empty, generate `count` seeded instances
  GenParams gen;
  int count = 1;
  std::vector<std::string> strategies;
  StrategyOptions options;
};
int cmd_crosscheck(const CrosscheckParams& params, std::ostream& out, std::ostream& err);

struct BenchParams {
  GenParams gen;
  int count = 1;        // seeds gen.seed .. gen.seed+count-1
  int repetitions = 1;  // rows per (seed, strategy)
  std::vector<std::string> strategies;
  StrategyOptions options;
};
// CSV columns: seed,n,strategy,wall_ns,depth,probes,splits,iterations.
int cmd_bench(const BenchParams& params, std::ostream& out, std::ostream& err);

}  // namespace arrival
