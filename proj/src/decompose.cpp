// Copyright (c) arrival contributors.
// SPDX-License-Identifier: Apache-2.0
#include "arrival/decompose.hpp"

#include <algorithm>
#include <deque>

namespace arrival {

namespace {

// Enumerates k-subsets of {0..n-1} in lexicographic order.
struct CombinationCursor {
  int n, k;
  std::vector<int> picks;
  bool done = false;

  CombinationCursor(int n_, int k_) : n(n_), k(k_) {
    if (k > n) {
      done = true;
      return;
    }
    picks.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) picks[i] = i;
  }

  void advance() {
    int i = k - 1;
    while (i >= 0 && picks[i] == n - k + i) --i;
    if (i < 0) {
      done = true;
      return;
    }
    ++picks[i];
    for (int j = i + 1; j < k; ++j) picks[j] = picks[j - 1] + 1;
  }
};

std::vector<std::vector<int>> components_without(const UndirectedView& view,
                                                 const std::vector<char>& removed) {
  const int m = static_cast<int>(view.size());
  std::vector<char> visited(static_cast<std::size_t>(m), 0);
  std::vector<std::vector<int>> out;
  for (int start = 0; start < m; ++start) {
    if (visited[start] || removed[start]) continue;
    std::vector<int> comp;
    std::deque<int> queue{start};
    visited[start] = 1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      comp.push_back(view.vertices[v]);
      for (int w : view.adj[v])
        if (!visited[w] && !removed[w]) {
          visited[w] = 1;
          queue.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  // BFS starts ascend, so components already come ordered by smallest member.
  return out;
}

}  // namespace

std::vector<std::vector<int>> connected_components(const UndirectedView& view) {
  std::vector<char> removed(view.size(), 0);
  return components_without(view, removed);
}

bool is_balanced_separator(const UndirectedView& view, const std::vector<int>& removed) {
  const int m = static_cast<int>(view.size());
  std::vector<char> mask(static_cast<std::size_t>(m), 0);
  for (int parent : removed) {
    auto it = std::lower_bound(view.vertices.begin(), view.vertices.end(), parent);
    if (it == view.vertices.end() || *it != parent)
      throw ValidationError("separator vertex not in view");
    mask[static_cast<std::size_t>(it - view.vertices.begin())] = 1;
  }
  for (const auto& comp : components_without(view, mask))
    if (2 * comp.size() > static_cast<std::size_t>(m)) return false;
  return true;
}

Separator smallest_balanced_separator(const UndirectedView& view) {
  const int m = static_cast<int>(view.size());
  for (int k = 0; k <= m; ++k) {
    for (CombinationCursor c(m, k); !c.done; c.advance()) {
      std::vector<char> mask(static_cast<std::size_t>(m), 0);
      for (int i : c.picks) mask[i] = 1;
      bool balanced = true;
      for (const auto& comp : components_without(view, mask))
        if (2 * comp.size() > static_cast<std::size_t>(m)) {
          balanced = false;
          break;
        }
      if (balanced) {
        Separator sep;
        sep.vertices.reserve(c.picks.size());
        for (int i : c.picks) sep.vertices.push_back(view.vertices[i]);
        sep.certified_balance = true;
        return sep;
      }
    }
  }
  throw InternalError("no balanced separator found");  // unreachable: S = V works
}

std::optional<int> directed_cycle_vertex(const Instance& inst,
                                         const std::vector<char>& removed_mask) {
  const int n = inst.n();
  auto live = [&](int v) { return !inst.is_terminal[v] && !removed_mask[v]; };
  std::vector<int> indeg(static_cast<std::size_t>(n), 0);
  for (int u = 0; u < n; ++u) {
    if (!live(u)) continue;
    for (int w : {inst.s0[u], inst.s1[u]})
      if (live(w)) indeg[w] += 1;
  }
  std::deque<int> ready;
  int live_count = 0;
  for (int v = 0; v < n; ++v)
    if (live(v)) {
      ++live_count;
      if (indeg[v] == 0) ready.push_back(v);
    }
  int processed = 0;
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  while (!ready.empty()) {
    int v = ready.front();
    ready.pop_front();
    done[v] = 1;
    ++processed;
    for (int w : {inst.s0[v], inst.s1[v]})
      if (live(w) && !done[w] && --indeg[w] == 0) ready.push_back(w);
  }
  if (processed == live_count) return std::nullopt;
  std::vector<std::vector<int>> rev(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u) {
    if (!live(u) || done[u]) continue;
    for (int w : {inst.s0[u], inst.s1[u]})
      if (live(w) && !done[w]) rev[w].push_back(u);
  }
  int cur = -1;
  for (int v = 0; v < n && cur < 0; ++v)
    if (live(v) && !done[v]) cur = v;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  while (!seen[cur]) {
    seen[cur] = 1;
    cur = *std::min_element(rev[cur].begin(), rev[cur].end());
  }
  return cur;
}

std::optional<std::vector<int>> smallest_feedback_vertex_set(
    const Instance& inst, const std::vector<int>& among) {
  for (int v : among)
    if (inst.is_terminal[v])
      throw ValidationError("feedback vertex candidates must be non-terminals; '" +
                            inst.names[v] + "' is a terminal");
  std::vector<int> pool = among;
  std::sort(pool.begin(), pool.end());
  const int m = static_cast<int>(pool.size());
  std::vector<char> mask(static_cast<std::size_t>(inst.n()), 0);
  for (int k = 0; k <= m; ++k) {
    for (CombinationCursor c(m, k); !c.done; c.advance()) {
      std::fill(mask.begin(), mask.end(), 0);
      for (int i : c.picks) mask[pool[i]] = 1;
      if (!directed_cycle_vertex(inst, mask)) {
        std::vector<int> out;
        out.reserve(c.picks.size());
        for (int i : c.picks) out.push_back(pool[i]);
        return out;
      }
    }
  }
  return std::nullopt;
}

}  // namespace arrival
