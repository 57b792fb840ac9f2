// Copyright (c) arrival contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "arrival/instance.hpp"

namespace arrival {

struct Separator {
  std::vector<int> vertices;  // parent-instance indices, ascending
  // When set, every connected component of view − vertices has at most
  // ⌊|view|/2⌋... precisely: component size ≤ |view|/2 (exact comparison).
  bool certified_balance = false;
};

// Maximal connected vertex sets of the view, as parent indices. Components
// are ordered by smallest contained vertex index; members ascend.
std::vector<std::vector<int>> connected_components(const UndirectedView& view);

// True iff every component of view minus `removed` has size ≤ |view|/2.
// The threshold is compared exactly (2·size ≤ |view|).
bool is_balanced_separator(const UndirectedView& view, const std::vector<int>& removed);

// Minimum-cardinality balanced separator, found by enumerating subsets in
// increasing size, lexicographic order over ascending vertex indices. Always
// terminates: any set of at least half the vertices is balanced.
Separator smallest_balanced_separator(const UndirectedView& view);

// Minimum F ⊆ among (non-terminal indices) whose removal leaves the directed
// non-terminal subgraph acyclic; brute force by increasing size, lexicographic
// tie-break. nullopt when no subset of `among` suffices. Throws
// ValidationError if `among` contains a terminal.
std::optional<std::vector<int>> smallest_feedback_vertex_set(
    const Instance& inst, const std::vector<int>& among);

// Some vertex on a directed cycle of the non-terminal subgraph after deleting
// `removed_mask` vertices, or nullopt when that subgraph is acyclic.
std::optional<int> directed_cycle_vertex(const Instance& inst,
                                         const std::vector<char>& removed_mask);

}  // namespace arrival
