// Copyright (c) arrival contributors.
// SPDX-License-Identifier: Apache-2.0
#include "arrival/generate.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace arrival {

namespace {

// First k entries of a PRNG-driven Fisher-Yates shuffle of `pool`.
std::vector<int> sample(SplitMix64& rng, std::vector<int> pool, int k) {
  for (std::size_t i = 0; i < pool.size(); ++i) {
    std::size_t j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(static_cast<std::size_t>(k));
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<char> reach_terminals(const std::vector<int>& s0, const std::vector<int>& s1,
                                  const std::vector<char>& is_terminal) {
  const int n = static_cast<int>(s0.size());
  std::vector<std::vector<int>> rev(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    rev[s0[v]].push_back(v);
    rev[s1[v]].push_back(v);
  }
  std::vector<char> reached(static_cast<std::size_t>(n), 0);
  std::deque<int> queue;
  for (int v = 0; v < n; ++v)
    if (is_terminal[v]) {
      reached[v] = 1;
      queue.push_back(v);
    }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int u : rev[v])
      if (!reached[u]) {
        reached[u] = 1;
        queue.push_back(u);
      }
  }
  return reached;
}

// Random 2-tree: every subgraph has treewidth at most 2.
std::vector<std::vector<int>> two_tree_skeleton(SplitMix64& rng, int n) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  if (n >= 2) {
    std::vector<std::pair<int, int>> edges{{0, 1}};
    adj[0].push_back(1);
    adj[1].push_back(0);
    for (int v = 2; v < n; ++v) {
      auto [a, b] = edges[rng.below(edges.size())];
      for (int w : {a, b}) {
        adj[v].push_back(w);
        adj[w].push_back(v);
        edges.emplace_back(v, w);
      }
    }
  }
  return adj;
}

void distribute_tokens(SplitMix64& rng, const std::vector<int>& terminals,
                       const Int& budget, std::vector<Int>& tokens) {
  if (budget <= 10000) {
    for (Int k = 0; k < budget; ++k)
      tokens[terminals[rng.below(terminals.size())]] += 1;
    return;
  }
  // Large budgets: even split, remainder to the first terminals.
  Int share = budget / static_cast<unsigned long>(terminals.size());
  Int remainder = budget % static_cast<unsigned long>(terminals.size());
  for (std::size_t i = 0; i < terminals.size(); ++i)
    tokens[terminals[i]] = share + (Int(static_cast<unsigned long>(i)) < remainder ? 1 : 0);
}

}  // namespace

GenFamily family_from_name(const std::string& name) {
  if (name == "uniform") return GenFamily::Uniform;
  if (name == "low_treewidth") return GenFamily::LowTreewidth;
  if (name == "low_fvs") return GenFamily::LowFvs;
  if (name == "acyclic") return GenFamily::Acyclic;
  throw ValidationError("unknown family '" + name + "'");
}

std::string family_name(GenFamily family) {
  switch (family) {
    case GenFamily::Uniform: return "uniform";
    case GenFamily::LowTreewidth: return "low_treewidth";
    case GenFamily::LowFvs: return "low_fvs";
    case GenFamily::Acyclic: return "acyclic";
  }
  return "unknown";
}

Instance generate_instance(const GenParams& params) {
  const int n = params.n;
  if (params.terminal_count < 1) throw ValidationError("terminal count must be >= 1");
  if (n < params.terminal_count)
    throw ValidationError("vertex count must be >= terminal count");
  if (params.token_budget < 1) throw ValidationError("token budget must be >= 1");

  SplitMix64 rng(params.seed);
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) names.push_back("v" + std::to_string(v));

  bool last_is_terminal =
      params.family == GenFamily::Acyclic || params.family == GenFamily::LowFvs;
  std::vector<int> terminals;
  if (last_is_terminal) {
    std::vector<int> pool(static_cast<std::size_t>(n - 1));
    std::iota(pool.begin(), pool.end(), 0);
    terminals = sample(rng, std::move(pool), params.terminal_count - 1);
    terminals.push_back(n - 1);
  } else {
    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 0);
    terminals = sample(rng, std::move(pool), params.terminal_count);
  }
  std::vector<char> is_terminal(static_cast<std::size_t>(n), 0);
  for (int t : terminals) is_terminal[t] = 1;

  std::vector<int> s0(static_cast<std::size_t>(n)), s1(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> skeleton;
  switch (params.family) {
    case GenFamily::Uniform:
      for (int v = 0; v < n; ++v) {
        s0[v] = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        s1[v] = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      }
      break;
    case GenFamily::LowTreewidth: {
      skeleton = two_tree_skeleton(rng, n);
      for (int v = 0; v < n; ++v) {
        const auto& nb = skeleton[v];
        for (int* slot : {&s0[v], &s1[v]})
          *slot = nb.empty() ? v : nb[rng.below(nb.size())];
      }
      break;
    }
    case GenFamily::LowFvs: {
      std::vector<int> candidates;
      for (int v = 0; v < n; ++v)
        if (!is_terminal[v]) candidates.push_back(v);
      std::vector<int> cycle_breakers =
          sample(rng, candidates,
                 std::min<int>(2, static_cast<int>(candidates.size())));
      for (int v = 0; v < n; ++v)
        for (int* slot : {&s0[v], &s1[v]}) {
          if (v == n - 1) {
            *slot = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
          } else if (!cycle_breakers.empty() && rng.below(4) == 0) {
            *slot = cycle_breakers[rng.below(cycle_breakers.size())];
          } else {
            *slot = v + 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1 - v)));
          }
        }
      break;
    }
    case GenFamily::Acyclic:
      for (int v = 0; v < n; ++v)
        for (int* slot : {&s0[v], &s1[v]})
          *slot = v == n - 1
                      ? static_cast<int>(rng.below(static_cast<std::uint64_t>(n)))
                      : v + 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1 - v)));
      break;
  }

  // Validity repair: redirect one out-edge of each terminal-unreachable
  // vertex toward a terminal-reachable one.
  if (params.family == GenFamily::LowTreewidth && n >= 2) {
    // Redirect along the skeleton toward the nearest terminal; that keeps the
    // underlying undirected graph inside the 2-tree.
    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::deque<int> queue;
    for (int t : terminals) {
      seen[t] = 1;
      queue.push_back(t);
    }
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int w : skeleton[v])
        if (!seen[w]) {
          seen[w] = 1;
          parent[w] = v;
          queue.push_back(w);
        }
    }
    auto reached = reach_terminals(s0, s1, is_terminal);
    for (int v = 0; v < n; ++v)
      if (!reached[v]) s0[v] = parent[v];
  } else {
    while (true) {
      auto reached = reach_terminals(s0, s1, is_terminal);
      int bad = -1;
      for (int v = 0; v < n && bad < 0; ++v)
        if (!reached[v]) bad = v;
      if (bad < 0) break;
      int target = -1;
      if (params.family == GenFamily::LowFvs) {
        // Keep back edges confined to the cycle breakers: redirect forward.
        for (int w = bad + 1; w < n && target < 0; ++w)
          if (reached[w]) target = w;
      } else {
        for (int w = 0; w < n && target < 0; ++w)
          if (reached[w]) target = w;
      }
      s0[bad] = target;
    }
  }

  std::vector<Int> tokens(static_cast<std::size_t>(n), 0);
  distribute_tokens(rng, terminals, params.token_budget, tokens);

  return make_instance(std::move(names), std::move(s0), std::move(s1),
                       std::move(terminals), std::move(tokens));
}

}  // namespace arrival
