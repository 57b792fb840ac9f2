// Copyright (c) arrival contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "arrival/numeric.hpp"

namespace arrival {

// A G-ARRIVAL instance: a switch graph (every vertex has exactly two
// out-edges, the even and the odd successor), a non-empty terminal set and
// the token counts starting on terminals. Vertex identifiers are strings in
// documents; internally vertices are dense indices 0..n-1 in declaration
// order. Instances are immutable after validation; concurrent readers are
// safe.
struct Instance {
  std::vector<std::string> names;  // index -> identifier, declaration order
  std::vector<int> s0;             // even successor, total on vertices
  std::vector<int> s1;             // odd successor, total on vertices
  std::vector<int> terminals;      // document order, non-empty
  std::vector<char> is_terminal;   // size n
  std::vector<Int> tokens;         // size n, zero off terminals, Σ ≥ 1
  Int total_tokens;                // t⁺

  int n() const { return static_cast<int>(names.size()); }

  // index of a known vertex name; throws ValidationError on unknown names.
  int index_of(const std::string& name) const;

  std::vector<int> non_terminals() const;

  bool operator==(const Instance& other) const {
    return names == other.names && s0 == other.s0 && s1 == other.s1 &&
           terminals == other.terminals && tokens == other.tokens;
  }

 private:
  friend Instance make_instance(std::vector<std::string>, std::vector<int>,
                                std::vector<int>, std::vector<int>,
                                std::vector<Int>);
  std::unordered_map<std::string, int> index_;
};

// Builds and validates an instance from index-based parts. `tokens` is a full
// size-n vector (entries off `terminals` must be zero). Throws
// ValidationError when any instance invariant fails, naming the offending
// vertex or field.
Instance make_instance(std::vector<std::string> names, std::vector<int> s0,
                       std::vector<int> s1, std::vector<int> terminals,
                       std::vector<Int> tokens);

// JSON document format (bit-exact contract):
//   { "vertices": ["a","b",...], "s0": {"a":"b",...}, "s1": {"a":"a",...},
//     "terminals": ["d",...], "tokens": {"d": 3, ...} }
// Token values are integers or decimal strings; string values may exceed
// 64 bits. Field order in the document is irrelevant; vertex order is the
// declaration order of the "vertices" array.
Instance parse_instance(const std::string& json_text);

// Canonical serialization; parse_instance(serialize_instance(i)) == i.
std::string serialize_instance(const Instance& inst);

// Simple undirected graph on a vertex subset: directions dropped, parallel
// edges collapsed, self-loops removed. Vertices are parent-instance indices
// in ascending order; adjacency uses local positions.
struct UndirectedView {
  std::vector<int> vertices;            // kept subset, ascending
  std::vector<std::vector<int>> adj;    // local indices, sorted, simple

  std::size_t size() const { return vertices.size(); }
  std::size_t edge_count() const;
  bool has_edge(int local_u, int local_v) const;
};

// View of the subgraph induced by `keep` (parent indices, any order, no
// duplicates). Edges with one endpoint outside `keep` are dropped.
UndirectedView undirected_view(const Instance& inst, const std::vector<int>& keep);

}  // namespace arrival
