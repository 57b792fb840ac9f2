// Copyright (c) arrival contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

namespace arrival {

// Per-solve diagnostics. All counters are nonnegative.
struct SolveTrace {
  int max_recursion_depth = 0;
  std::int64_t binary_search_probes = 0;
  std::int64_t splitting_events = 0;
  // Size of every balanced separator computed (entry plus one per component
  // at each splitting event), in computation order.
  std::vector<int> separators_found;
  // Component subinstances solved in splitting cases.
  std::int64_t subinstances_solved = 0;
  // Simulation moves or contraction updates, depending on the producer.
  std::int64_t iterations = 0;

  // One entry per root-to-boundary chain of binary-search levels: the size of
  // the separator the chain drew pivots from, and how many levels it used
  // before hitting a splitting event or the base case.
  struct Segment {
    int separator_size;
    int levels_used;
  };
  std::vector<Segment> segments;

  // One entry per component at each splitting event.
  struct SplitComponent {
    int parent_nonterminals;
    int component_size;
  };
  std::vector<SplitComponent> splits;
};

}  // namespace arrival
