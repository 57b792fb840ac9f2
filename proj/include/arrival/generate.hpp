// Copyright (c) arrival contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>

#include "arrival/instance.hpp"

namespace arrival {

// The one PRNG behind every generator, so alternate implementations can
// reproduce outputs bit-exactly. Update formula (SplitMix64):
//   state += 0x9E3779B97F4A7C15
//   z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   output = z ^ (z >> 31)
// Bounded draws use plain modulo: below(k) = next() % k.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }
};

enum class GenFamily { Uniform, LowTreewidth, LowFvs, Acyclic };

GenFamily family_from_name(const std::string& name);
std::string family_name(GenFamily family);

struct GenParams {
  int n = 6;
  int terminal_count = 1;
  Int token_budget = 1;
  GenFamily family = GenFamily::Uniform;
  std::uint64_t seed = 0;
};

// Deterministic under seed. Families:
//   uniform       successors drawn uniformly over all vertices
//   low_treewidth successors along a random 2-tree skeleton (treewidth ≤ 2)
//   low_fvs       forward edges plus back edges into a set B with |B| ≤ 2,
//                 so every directed cycle meets B
//   acyclic       non-terminal successors strictly increase, vertex n−1 is a
//                 terminal; greedy acyclic solving always applies
// Any terminal-unreachable vertex gets one out-edge redirected toward a
// terminal-reachable vertex; tokens are split over terminals and sum to the
// budget.
Instance generate_instance(const GenParams& params);

}  // namespace arrival
