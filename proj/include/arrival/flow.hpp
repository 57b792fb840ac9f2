// Copyright (c) arrival contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "arrival/instance.hpp"

namespace arrival {

// Edge labeling x : E -> N0, stored per source vertex and parity slot.
// (v, even) and (v, odd) are distinct slots even when s0(v) == s1(v).
struct SwitchingFlow {
  std::vector<Int> even;
  std::vector<Int> odd;

  static SwitchingFlow zero(int n) {
    return {std::vector<Int>(static_cast<std::size_t>(n), 0),
            std::vector<Int>(static_cast<std::size_t>(n), 0)};
  }
  Int out(int v) const { return even[v] + odd[v]; }
};

// Answer to an instance: tokens arriving per terminal, parallel to
// Instance::terminals.
struct ArrivalVector {
  std::vector<Int> counts;

  bool operator==(const ArrivalVector& other) const { return counts == other.counts; }
};

enum class FlowViolation { NonNegative, Switching, Conservation, Source };

std::string violation_name(FlowViolation kind);

struct FlowReport {
  bool valid = false;  // iff violations empty
  std::vector<std::pair<FlowViolation, int>> violations;
  bool bound_ok = false;  // x(e) < 2^|V|·t⁺ for every edge slot
};

// Exact check of the three switching-flow constraint families plus the flow
// upper bound. Lists every violation, not just the first. Throws
// ValidationError if the flow is not keyed on the instance's vertices.
FlowReport verify_switching_flow(const Instance& inst, const SwitchingFlow& flow);

// in(v) for every vertex: Σ over edge slots entering v.
std::vector<Int> inflows(const Instance& inst, const SwitchingFlow& flow);

// Terminal inflows of a *valid* flow; throws ValidationError on invalid flows.
ArrivalVector arrivals_of(const Instance& inst, const SwitchingFlow& flow);

// JSON flow format: { "flow": { "<vertex>": {"even": <int-or-string>,
// "odd": <int-or-string>} } }. Values may exceed 64 bits as decimal strings.
SwitchingFlow parse_flow(const Instance& inst, const std::string& json_text);
std::string serialize_flow(const Instance& inst, const SwitchingFlow& flow);

}  // namespace arrival
