// Copyright (c) arrival contributors.
// SPDX-License-Identifier: Apache-2.0
#include "arrival/simulate.hpp"

#include <algorithm>
#include <deque>

namespace arrival {

namespace {

struct TokenState {
  std::vector<Int> pile;      // tokens currently on non-terminals
  std::vector<Int> arrived;   // tokens resting on terminals
  std::vector<char> parity;   // next edge to use: 0 = even
  SwitchingFlow flow;
  Int pending = 0;            // Σ pile
  Int moves = 0;
  Int budget;

  explicit TokenState(const Instance& inst)
      : pile(static_cast<std::size_t>(inst.n()), 0),
        arrived(static_cast<std::size_t>(inst.n()), 0),
        parity(static_cast<std::size_t>(inst.n()), 0),
        flow(SwitchingFlow::zero(inst.n())) {}
};

void deliver(const Instance& inst, TokenState& st, int target, const Int& count) {
  if (count == 0) return;
  if (inst.is_terminal[target]) {
    st.arrived[target] += count;
  } else {
    st.pile[target] += count;
    st.pending += count;
  }
}

// Initial move: every terminal v sends ⌈t⁺_v/2⌉ along the even edge and
// ⌊t⁺_v/2⌋ along the odd edge, simultaneously.
void initial_move(const Instance& inst, TokenState& st) {
  for (int v : inst.terminals) {
    Int c0 = ceil_half(inst.tokens[v]);
    Int c1 = floor_half(inst.tokens[v]);
    st.flow.even[v] += c0;
    st.flow.odd[v] += c1;
    deliver(inst, st, inst.s0[v], c0);
    deliver(inst, st, inst.s1[v], c1);
  }
}

void charge_move(TokenState& st) {
  st.moves += 1;
  if (st.moves > st.budget)
    throw InternalError(
        "simulation step budget exceeded; bug or reachability violation");
}

// Flush v's whole pile: with m tokens and next-edge parity b, edge b carries
// ⌈m/2⌉ and the other edge ⌊m/2⌋.
void bulk_move(const Instance& inst, TokenState& st, int v) {
  charge_move(st);
  Int m = st.pile[v];
  st.pile[v] = 0;
  st.pending -= m;
  Int first = ceil_half(m);
  Int second = floor_half(m);
  int b = st.parity[v];
  int e_first = b == 0 ? inst.s0[v] : inst.s1[v];
  int e_second = b == 0 ? inst.s1[v] : inst.s0[v];
  (b == 0 ? st.flow.even[v] : st.flow.odd[v]) += first;
  (b == 0 ? st.flow.odd[v] : st.flow.even[v]) += second;
  if (mpz_odd_p(m.get_mpz_t())) st.parity[v] ^= 1;
  deliver(inst, st, e_first, first);
  deliver(inst, st, e_second, second);
}

// Move one token from v along its next edge; returns the destination.
int single_move(const Instance& inst, TokenState& st, int v) {
  charge_move(st);
  st.pile[v] -= 1;
  st.pending -= 1;
  int b = st.parity[v];
  int target = b == 0 ? inst.s0[v] : inst.s1[v];
  (b == 0 ? st.flow.even[v] : st.flow.odd[v]) += 1;
  st.parity[v] ^= 1;
  deliver(inst, st, target, 1);
  return target;
}

void run_round_robin(const Instance& inst, TokenState& st) {
  while (st.pending > 0)
    for (int v = 0; v < inst.n(); ++v)
      while (st.pile[v] > 0) bulk_move(inst, st, v);
}

void run_worklist(const Instance& inst, TokenState& st, bool lifo) {
  std::deque<int> pending;
  std::vector<char> queued(static_cast<std::size_t>(inst.n()), 0);
  auto push = [&](int v) {
    if (!inst.is_terminal[v] && st.pile[v] > 0 && !queued[v]) {
      queued[v] = 1;
      pending.push_back(v);
    }
  };
  for (int v = 0; v < inst.n(); ++v) push(v);
  while (!pending.empty()) {
    int v;
    if (lifo) {
      v = pending.back();
      pending.pop_back();
    } else {
      v = pending.front();
      pending.pop_front();
    }
    queued[v] = 0;
    if (st.pile[v] == 0) continue;
    int target = single_move(inst, st, v);
    if (lifo) {
      push(v);
      push(target);  // top of stack: chase the token
    } else {
      push(target);
      push(v);
    }
  }
}

ArrivalVector collect_arrivals(const Instance& inst, const TokenState& st) {
  ArrivalVector arrivals;
  arrivals.counts.reserve(inst.terminals.size());
  for (int t : inst.terminals) arrivals.counts.push_back(st.arrived[t]);
  return arrivals;
}

}  // namespace

SimulationResult run_profile(const Instance& inst, const SimulateOptions& options) {
  TokenState st(inst);
  Int envelope = pow2(static_cast<unsigned long>(inst.n())) * inst.total_tokens *
                 inst.n();
  if (options.policy != SchedulePolicy::RoundRobin) envelope *= 2;
  st.budget = options.step_budget.value_or(envelope);
  initial_move(inst, st);
  switch (options.policy) {
    case SchedulePolicy::RoundRobin: run_round_robin(inst, st); break;
    case SchedulePolicy::Fifo: run_worklist(inst, st, false); break;
    case SchedulePolicy::Lifo: run_worklist(inst, st, true); break;
  }
  SimulationResult result{std::move(st.flow), collect_arrivals(inst, st), {}};
  result.trace.iterations = st.moves.fits_slong_p() ? st.moves.get_si() : -1;
  return result;
}

std::pair<SwitchingFlow, ArrivalVector> solve_acyclic(const Instance& inst) {
  const int n = inst.n();
  // Kahn's algorithm over the non-terminal subgraph (terminals are sinks).
  std::vector<int> indeg(static_cast<std::size_t>(n), 0);
  for (int u = 0; u < n; ++u) {
    if (inst.is_terminal[u]) continue;
    for (int w : {inst.s0[u], inst.s1[u]})
      if (!inst.is_terminal[w]) indeg[w] += 1;
  }
  std::deque<int> ready;
  for (int v = 0; v < n; ++v)
    if (!inst.is_terminal[v] && indeg[v] == 0) ready.push_back(v);
  std::vector<int> order;
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  while (!ready.empty()) {
    int v = ready.front();
    ready.pop_front();
    order.push_back(v);
    done[v] = 1;
    for (int w : {inst.s0[v], inst.s1[v]})
      if (!inst.is_terminal[w] && --indeg[w] == 0) ready.push_back(w);
  }
  std::size_t nonterminal_count = inst.non_terminals().size();
  if (order.size() < nonterminal_count) {
    // Walk backward through leftover vertices until one repeats; leftovers all
    // keep positive in-degree, so the walk must close a directed cycle.
    std::vector<std::vector<int>> rev(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u) {
      if (inst.is_terminal[u]) continue;
      for (int w : {inst.s0[u], inst.s1[u]})
        if (!inst.is_terminal[w] && !done[u] && !done[w]) rev[w].push_back(u);
    }
    int start = -1;
    for (int v = 0; v < n && start < 0; ++v)
      if (!inst.is_terminal[v] && !done[v]) start = v;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    int cur = start;
    while (!seen[cur]) {
      seen[cur] = 1;
      cur = *std::min_element(rev[cur].begin(), rev[cur].end());
    }
    throw ValidationError("cycle through non-terminal '" + inst.names[cur] + "'");
  }

  auto flow = SwitchingFlow::zero(n);
  std::vector<Int> mass(static_cast<std::size_t>(n), 0);
  std::vector<Int> arrived(static_cast<std::size_t>(n), 0);
  auto deliver_mass = [&](int target, const Int& count) {
    (inst.is_terminal[target] ? arrived[target] : mass[target]) += count;
  };
  for (int v : inst.terminals) {
    flow.even[v] = ceil_half(inst.tokens[v]);
    flow.odd[v] = floor_half(inst.tokens[v]);
    deliver_mass(inst.s0[v], flow.even[v]);
    deliver_mass(inst.s1[v], flow.odd[v]);
  }
  for (int v : order) {
    flow.even[v] = ceil_half(mass[v]);
    flow.odd[v] = floor_half(mass[v]);
    deliver_mass(inst.s0[v], flow.even[v]);
    deliver_mass(inst.s1[v], flow.odd[v]);
  }
  ArrivalVector arrivals;
  arrivals.counts.reserve(inst.terminals.size());
  for (int t : inst.terminals) arrivals.counts.push_back(arrived[t]);
  return {std::move(flow), std::move(arrivals)};
}

SwitchingFlow base_case_flow(const Instance& inst) {
  for (int v = 0; v < inst.n(); ++v)
    if (!inst.is_terminal[v])
      throw ValidationError("base case requires T = V; '" + inst.names[v] +
                            "' is not a terminal");
  auto flow = SwitchingFlow::zero(inst.n());
  for (int v = 0; v < inst.n(); ++v) {
    flow.even[v] = ceil_half(inst.tokens[v]);
    flow.odd[v] = floor_half(inst.tokens[v]);
  }
  return flow;
}

}  // namespace arrival
