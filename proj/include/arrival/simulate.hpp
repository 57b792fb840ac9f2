// Copyright (c) arrival contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <utility>

#include "arrival/flow.hpp"
#include "arrival/trace.hpp"

namespace arrival {

// The token procedure is schedule-independent (its outcome is certified by
// any integral switching flow), so any policy returns the same run profile.
// RoundRobin sweeps vertex indices and flushes whole token piles in bulk;
// Fifo and Lifo move one token at a time off a pending-vertex queue/stack.
enum class SchedulePolicy { RoundRobin, Fifo, Lifo };

struct SimulateOptions {
  SchedulePolicy policy = SchedulePolicy::RoundRobin;
  // Move budget; defaults to n·2ⁿ·t⁺ bulk moves for RoundRobin and to the
  // 2n·2ⁿ·t⁺ single-move envelope for Fifo/Lifo. Exceeding it signals either
  // a bug or an instance violating the reachability invariant.
  std::optional<Int> step_budget;
};

struct SimulationResult {
  SwitchingFlow flow;  // the run profile
  ArrivalVector arrivals;
  SolveTrace trace;  // iterations = moves performed
};

// Executes the token procedure: initially every terminal v sends ⌈t⁺_v/2⌉
// tokens along its even edge and ⌊t⁺_v/2⌋ along its odd edge; then tokens on
// non-terminals move along the out-edge used fewer times so far (even edge on
// ties) until all tokens rest on terminals.
SimulationResult run_profile(const Instance& inst, const SimulateOptions& options = {});

// Greedy solver for instances whose non-terminal subgraph is acyclic
// (terminal out-edges beyond the initial move are ignored): processes
// vertices in topological order moving each accumulated pile in bulk,
// ⌈m/2⌉ on the even edge and ⌊m/2⌋ on the odd edge. Output equals
// run_profile's output. Throws ValidationError naming a cycle vertex when
// the precondition fails.
std::pair<SwitchingFlow, ArrivalVector> solve_acyclic(const Instance& inst);

// T = V base case: x(v,even) = ⌈t⁺_v/2⌉, x(v,odd) = ⌊t⁺_v/2⌋.
SwitchingFlow base_case_flow(const Instance& inst);

}  // namespace arrival
