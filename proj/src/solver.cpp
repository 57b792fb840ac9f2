// Copyright (c) arrival contributors.
// SPDX-License-Identifier: Apache-2.0
#include "arrival/solver.hpp"

#include <algorithm>
#include <map>

#include "arrival/simulate.hpp"

namespace arrival {

namespace {

// Mutable solve state over an immutable graph shape. Binary-search probes
// only toggle terminal status and token counts, so recursion pushes and pops
// pivots instead of copying instances.
struct Work {
  const Instance* shape;
  std::vector<char> term;
  std::vector<Int> tokens;
  std::vector<int> term_order;  // original terminals, then pivots in push order
  Int total;
  int nonterminal_count;

  explicit Work(const Instance& inst)
      : shape(&inst),
        term(inst.is_terminal.begin(), inst.is_terminal.end()),
        tokens(inst.tokens),
        term_order(inst.terminals),
        total(inst.total_tokens),
        nonterminal_count(static_cast<int>(inst.non_terminals().size())) {}

  int n() const { return shape->n(); }

  void push_pivot(int p, const Int& count) {
    term[p] = 1;
    tokens[p] = count;
    term_order.push_back(p);
    total += count;
    nonterminal_count -= 1;
  }

  void pop_pivot(int p) {
    total -= tokens[p];
    tokens[p] = 0;
    term[p] = 0;
    term_order.pop_back();
    nonterminal_count += 1;
  }

  Instance materialize() const {
    return make_instance(shape->names, shape->s0, shape->s1, term_order, tokens);
  }

  std::string cache_key() const {
    std::string key(term.begin(), term.end());
    for (const auto& t : tokens) {
      key += ':';
      key += t.get_str();
    }
    return key;
  }
};

Int inflow_at(const Work& w, const SwitchingFlow& flow, int v) {
  Int in = 0;
  for (int u = 0; u < w.n(); ++u) {
    if (w.shape->s0[u] == v) in += flow.even[u];
    if (w.shape->s1[u] == v) in += flow.odd[u];
  }
  return in;
}

SwitchingFlow base_flow(const Work& w) {
  auto flow = SwitchingFlow::zero(w.n());
  for (int v = 0; v < w.n(); ++v) {
    flow.even[v] = ceil_half(w.tokens[v]);
    flow.odd[v] = floor_half(w.tokens[v]);
  }
  return flow;
}

struct Ctx {
  const SolverOptions* options;
  SolveTrace* trace;
  std::map<std::string, SwitchingFlow>* cache = nullptr;
};

void note_depth(Ctx& ctx, int depth) {
  ctx.trace->max_recursion_depth = std::max(ctx.trace->max_recursion_depth, depth);
}

void check_intermediate(const Ctx& ctx, const Work& w, const SwitchingFlow& flow) {
  if (!ctx.options->verify_intermediate) return;
  auto report = verify_switching_flow(w.materialize(), flow);
  if (!report.valid)
    throw InternalError("subinstance flow failed verification");
}

// The binary-search case shared by all three strategies. Probes
// t⁺_p = ⌈(ℓ+r)/2⌉ over [0, 2^|V|·t⁺]; ℓ = r still needs its one probe (it is
// the remaining fixed point of the monotone response), so the loop runs while
// ℓ ≤ r. Exhausting the range means a broken subsolver.
template <typename Probe>
std::pair<Int, SwitchingFlow> bsearch_core(Work& w, int p, SolveTrace& trace,
                                           Probe&& probe) {
  Int lo = 0;
  Int hi = pow2(static_cast<unsigned long>(w.n())) * w.total;
  while (lo <= hi) {
    Int guess = (lo + hi + 1) >> 1;
    trace.binary_search_probes += 1;
    w.push_pivot(p, guess);
    SwitchingFlow x = probe();
    w.pop_pivot(p);
    Int in_p = inflow_at(w, x, p);
    if (in_p == guess) return {std::move(guess), std::move(x)};
    if (in_p < guess)
      hi = guess - 1;
    else
      lo = guess + 1;
  }
  throw InternalError("binary search exhausted range without accepting a guess at '" +
                      w.shape->names[p] + "'");
}

SwitchingFlow rec_arbitrary(Ctx& ctx, Work& w, int depth) {
  note_depth(ctx, depth);
  std::string key;
  if (ctx.cache) {
    key = w.cache_key();
    auto it = ctx.cache->find(key);
    if (it != ctx.cache->end()) return it->second;
  }
  SwitchingFlow result;
  if (w.nonterminal_count == 0) {
    result = base_flow(w);
  } else {
    int p = 0;
    while (w.term[p]) ++p;
    result = bsearch_core(w, p, *ctx.trace, [&] {
               return rec_arbitrary(ctx, w, depth + 1);
             }).second;
  }
  check_intermediate(ctx, w, result);
  if (ctx.cache) ctx.cache->emplace(std::move(key), result);
  return result;
}

SwitchingFlow rec_separator(Ctx& ctx, Work& w, std::vector<int> sep, int depth,
                            int segment_size, int segment_levels);

// `parent_nonterminals` is |V \ T| of the instance whose balanced separator
// this segment consumed; every component is at most half of it.
SwitchingFlow split_and_recurse(Ctx& ctx, const Instance& cur, int depth,
                                int parent_nonterminals) {
  ctx.trace->splitting_events += 1;
  auto parts = split_components(cur);
  std::vector<std::pair<std::vector<int>, SwitchingFlow>> solved;
  solved.reserve(parts.size());
  for (auto& [component, sub] : parts) {
    ctx.trace->splits.push_back(
        {parent_nonterminals, static_cast<int>(component.size())});
    auto view = undirected_view(sub, sub.non_terminals());
    Separator sc = smallest_balanced_separator(view);
    ctx.trace->separators_found.push_back(static_cast<int>(sc.vertices.size()));
    if (ctx.options->separator_observer) ctx.options->separator_observer(view, sc);
    ctx.trace->subinstances_solved += 1;
    Work sub_work(sub);
    SwitchingFlow sub_flow =
        rec_separator(ctx, sub_work, sc.vertices, depth + 1,
                      static_cast<int>(sc.vertices.size()), 0);
    solved.emplace_back(component, std::move(sub_flow));
  }
  return merge_component_flows(cur, solved);
}

SwitchingFlow rec_separator(Ctx& ctx, Work& w, std::vector<int> sep, int depth,
                            int segment_size, int segment_levels) {
  note_depth(ctx, depth);
  SwitchingFlow result;
  if (w.nonterminal_count == 0) {
    ctx.trace->segments.push_back({segment_size, segment_levels});
    result = base_flow(w);
  } else if (!sep.empty()) {
    int p = sep.front();
    std::vector<int> rest(sep.begin() + 1, sep.end());
    result = bsearch_core(w, p, *ctx.trace, [&] {
               return rec_separator(ctx, w, rest, depth + 1, segment_size,
                                    segment_levels + 1);
             }).second;
  } else {
    ctx.trace->segments.push_back({segment_size, segment_levels});
    result = split_and_recurse(ctx, w.materialize(), depth,
                               w.nonterminal_count + segment_size);
  }
  check_intermediate(ctx, w, result);
  return result;
}

SwitchingFlow rec_fvs(Ctx& ctx, Work& w, std::vector<int> fvs, int depth) {
  note_depth(ctx, depth);
  SwitchingFlow result;
  if (fvs.empty()) {
    result = solve_acyclic(w.materialize()).first;
  } else {
    int p = fvs.front();
    std::vector<int> rest(fvs.begin() + 1, fvs.end());
    result = bsearch_core(w, p, *ctx.trace, [&] {
               return rec_fvs(ctx, w, rest, depth + 1);
             }).second;
  }
  check_intermediate(ctx, w, result);
  return result;
}

SolveResult finish(const Instance& inst, SwitchingFlow flow, SolveTrace trace) {
  auto report = verify_switching_flow(inst, flow);
  if (!report.valid)
    throw InternalError("solver produced a flow that fails verification");
  auto arrivals = arrivals_of(inst, flow);
  return {std::move(flow), std::move(arrivals), std::move(trace)};
}

}  // namespace

SolveResult solve_recursive(const Instance& inst, const SolverOptions& options) {
  SolveTrace trace;
  Work w(inst);
  std::map<std::string, SwitchingFlow> cache;
  Ctx ctx{&options, &trace, options.probe_cache ? &cache : nullptr};
  SwitchingFlow flow = rec_arbitrary(ctx, w, 0);
  return finish(inst, std::move(flow), std::move(trace));
}

SolveResult solve_separator(const Instance& inst, const SolverOptions& options) {
  SolveTrace trace;
  Work w(inst);
  Ctx ctx{&options, &trace, nullptr};
  auto view = undirected_view(inst, inst.non_terminals());
  Separator s0 = smallest_balanced_separator(view);
  trace.separators_found.push_back(static_cast<int>(s0.vertices.size()));
  if (options.separator_observer) options.separator_observer(view, s0);
  SwitchingFlow flow =
      rec_separator(ctx, w, s0.vertices, 0, static_cast<int>(s0.vertices.size()), 0);
  return finish(inst, std::move(flow), std::move(trace));
}

SolveResult solve_fvs(const Instance& inst, const SolverOptions& options) {
  SolveTrace trace;
  Work w(inst);
  Ctx ctx{&options, &trace, nullptr};
  auto fvs = smallest_feedback_vertex_set(inst, inst.non_terminals());
  if (!fvs)
    throw InternalError("no feedback vertex set among all non-terminals");
  SwitchingFlow flow = rec_fvs(ctx, w, *fvs, 0);
  return finish(inst, std::move(flow), std::move(trace));
}

SolveResult solve_with(const Instance& inst, PivotStrategy strategy,
                       const SolverOptions& options) {
  switch (strategy) {
    case PivotStrategy::Arbitrary: return solve_recursive(inst, options);
    case PivotStrategy::Separator: return solve_separator(inst, options);
    case PivotStrategy::Fvs: return solve_fvs(inst, options);
  }
  throw ValidationError("unknown pivot strategy");
}

std::pair<Int, SwitchingFlow> binary_search_pivot(
    const Instance& inst, int pivot,
    const std::function<SwitchingFlow(const Instance&)>& subsolver,
    SolveTrace* trace) {
  if (pivot < 0 || pivot >= inst.n() || inst.is_terminal[pivot])
    throw ValidationError("pivot must be a non-terminal vertex");
  SolveTrace local;
  Work w(inst);
  return bsearch_core(w, pivot, trace ? *trace : local,
                      [&] { return subsolver(w.materialize()); });
}

std::vector<std::pair<std::vector<int>, Instance>> split_components(
    const Instance& inst) {
  auto view = undirected_view(inst, inst.non_terminals());
  auto components = connected_components(view);
  std::vector<std::pair<std::vector<int>, Instance>> out;
  out.reserve(components.size());
  for (const auto& component : components) {
    std::vector<char> kept(static_cast<std::size_t>(inst.n()), 0);
    for (int v : component) kept[v] = 1;
    for (int t : inst.terminals) kept[t] = 1;
    std::vector<int> keep;
    std::vector<int> local(static_cast<std::size_t>(inst.n()), -1);
    for (int v = 0; v < inst.n(); ++v)
      if (kept[v]) {
        local[v] = static_cast<int>(keep.size());
        keep.push_back(v);
      }
    std::vector<std::string> names;
    std::vector<int> s0, s1, terminals;
    std::vector<Int> tokens;
    names.reserve(keep.size());
    for (int v : keep) {
      names.push_back(inst.names[v]);
      s0.push_back(kept[inst.s0[v]] ? local[inst.s0[v]] : local[v]);
      s1.push_back(kept[inst.s1[v]] ? local[inst.s1[v]] : local[v]);
      tokens.push_back(inst.tokens[v]);
    }
    for (int t : inst.terminals) terminals.push_back(local[t]);
    out.emplace_back(component,
                     make_instance(std::move(names), std::move(s0), std::move(s1),
                                   std::move(terminals), std::move(tokens)));
  }
  return out;
}

SwitchingFlow merge_component_flows(
    const Instance& inst,
    const std::vector<std::pair<std::vector<int>, SwitchingFlow>>& parts) {
  auto flow = SwitchingFlow::zero(inst.n());
  std::vector<char> assigned(static_cast<std::size_t>(inst.n()), 0);
  std::vector<char> covered(static_cast<std::size_t>(inst.n()), 0);
  for (const auto& [component, part_flow] : parts) {
    std::vector<char> kept(static_cast<std::size_t>(inst.n()), 0);
    for (int v : component) kept[v] = 1;
    for (int t : inst.terminals) kept[t] = 1;
    std::vector<int> keep;
    for (int v = 0; v < inst.n(); ++v)
      if (kept[v]) keep.push_back(v);
    if (part_flow.even.size() != keep.size())
      throw ValidationError("component flow key mismatch");
    for (std::size_t i = 0; i < keep.size(); ++i) {
      int v = keep[i];
      if (!inst.is_terminal[v]) {
        flow.even[v] = part_flow.even[i];
        flow.odd[v] = part_flow.odd[i];
        covered[v] = 1;
      } else if (!assigned[v]) {
        flow.even[v] = part_flow.even[i];
        flow.odd[v] = part_flow.odd[i];
        assigned[v] = 1;
      } else if (flow.even[v] != part_flow.even[i] ||
                 flow.odd[v] != part_flow.odd[i]) {
        // Terminal outflow splits are fixed by t⁺_v, so parts must agree.
        throw InternalError("component flows disagree on terminal-sourced edges of '" +
                            inst.names[v] + "'");
      }
    }
  }
  for (int v = 0; v < inst.n(); ++v)
    if (!inst.is_terminal[v] && !covered[v])
      throw ValidationError("components do not cover non-terminal '" +
                            inst.names[v] + "'");
  return flow;
}

Instance with_pivot_terminal(const Instance& inst, int pivot, const Int& tokens) {
  if (pivot < 0 || pivot >= inst.n() || inst.is_terminal[pivot])
    throw ValidationError("pivot must be a non-terminal vertex");
  if (tokens < 0) throw ValidationError("pivot token count must be nonnegative");
  auto terminals = inst.terminals;
  terminals.push_back(pivot);
  auto counts = inst.tokens;
  counts[pivot] = tokens;
  return make_instance(inst.names, inst.s0, inst.s1, std::move(terminals),
                       std::move(counts));
}

}  // namespace arrival
