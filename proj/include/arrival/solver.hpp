// Copyright (c) arrival contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "arrival/decompose.hpp"
#include "arrival/flow.hpp"
#include "arrival/trace.hpp"

namespace arrival {

// Where the recursive solver family draws its pivots from.
enum class PivotStrategy { Arbitrary, Separator, Fvs };

struct SolverOptions {
  // Verify every subinstance flow returned by a recursive call against its
  // subinstance (slow; meant for tests).
  bool verify_intermediate = false;
  // Cache subinstance solves keyed by (terminal set, token vector) in the
  // arbitrary-pivot recursion. Off by default: token vectors rarely repeat
  // across probes.
  bool probe_cache = false;
  // Invoked for every balanced separator the separator strategy computes.
  std::function<void(const UndirectedView&, const Separator&)> separator_observer;
};

struct SolveResult {
  SwitchingFlow flow;
  ArrivalVector arrivals;
  SolveTrace trace;
};

// Recursive solver with arbitrary pivots (lowest-index non-terminal): base
// case T = V, otherwise binary search the pivot's token count over
// [0, 2^|V|·t⁺] and recurse with the pivot as a terminal. The returned flow
// verifies for the original instance.
SolveResult solve_recursive(const Instance& inst, const SolverOptions& options = {});

// Separator-pivoting solver: pivots come from a smallest balanced separator S
// of G−T computed at entry; once S is exhausted the instance splits into the
// connected components of G−T, each solved recursively with its own smallest
// separator, and the component flows merge.
SolveResult solve_separator(const Instance& inst, const SolverOptions& options = {});

// Feedback-vertex-set instantiation: pivots come from a smallest FVS of the
// non-terminal subgraph; once exhausted the remaining instance is acyclic and
// greedy simulation finishes.
SolveResult solve_fvs(const Instance& inst, const SolverOptions& options = {});

SolveResult solve_with(const Instance& inst, PivotStrategy strategy,
                       const SolverOptions& options = {});

// One binary search at pivot p: probes t⁺_p = ⌈(ℓ+r)/2⌉ starting from
// [0, 2^|V|·t⁺], narrowing with r ← t⁺_p−1 when in(p) < t⁺_p and
// ℓ ← t⁺_p+1 when in(p) > t⁺_p, until a probe with in(p) = t⁺_p is accepted.
// `subsolver` receives the instance with terminals T ∪ {p}. Exhausting the
// range is impossible for correct subsolvers and throws InternalError.
std::pair<Int, SwitchingFlow> binary_search_pivot(
    const Instance& inst, int pivot,
    const std::function<SwitchingFlow(const Instance&)>& subsolver,
    SolveTrace* trace = nullptr);

// For each undirected component C of G−T: the subinstance on C ∪ T with
// successors restricted to C ∪ T and successors leaving the set rewritten to
// self-loops at their source, per parity slot. Terminals and tokens carry
// over unchanged.
std::vector<std::pair<std::vector<int>, Instance>> split_components(const Instance& inst);

// Inverse of split_components on flows: non-terminal-sourced edges take the
// value of their unique owning component; terminal-sourced edges must agree
// across components (InternalError otherwise).
SwitchingFlow merge_component_flows(
    const Instance& inst,
    const std::vector<std::pair<std::vector<int>, SwitchingFlow>>& parts);

// The instance with `pivot` promoted to a terminal starting `tokens` tokens.
Instance with_pivot_terminal(const Instance& inst, int pivot, const Int& tokens);

}  // namespace arrival
