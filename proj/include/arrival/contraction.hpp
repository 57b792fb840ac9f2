// Copyright (c) arrival contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "arrival/flow.hpp"

namespace arrival {

// Token mass per vertex. Functions below document whether a vector is keyed
// on all of V or on the non-terminals V∖T (ascending vertex index either
// way). All arithmetic is exact rational.
using MassVector = std::vector<Rat>;

Rat l1_norm(const MassVector& x);
Rat l1_distance(const MassVector& x, const MassVector& y);

// h0(x) = min{x − ⌊x/2⌋, ⌈x/2⌉}, h1(x) = max{⌊x/2⌋, x − ⌈x/2⌉}; the
// continuous monotone pair with h0(x) + h1(x) = x and h1 ≤ h0 ≤ h1 + 1 that
// sends ⌈m/2⌉ of an integral pile along the even edge. Throw on negative
// input.
Rat h0(const Rat& x);
Rat h1(const Rat& x);

// One-step update f(x)_v = Σ_{u: s0(u)=v} h0(x_u) + Σ_{u: s1(u)=v} h1(x_u),
// keyed on V. Mass-conserving, ℓ1-non-expansive, monotone.
MassVector one_step_update(const Instance& inst, const MassVector& x);

// Extension of a V∖T vector to V: terminals carry t⁺_v.
MassVector extend_with_tokens(const Instance& inst, const MassVector& x);

// Projection g(x)_v = f(x')_v of the one-step update to non-terminals.
MassVector projected_update(const Instance& inst, const MassVector& x);

// λ-discounted projection g^(λ) = λ·g, an ℓ1-contraction with factor λ.
struct DiscountedUpdate {
  const Instance* instance;
  Rat lambda;  // in [0, 1), strictly below 1

  DiscountedUpdate(const Instance& inst, Rat lambda_);
};

MassVector discounted_update(const DiscountedUpdate& update, const MassVector& x);

// λ = 1 − δ/(t⁺·(1+n·2ⁿ)) for δ in (0,1): the discount for which the unique
// fixed point pins every terminal inflow within δ of its token count.
Rat default_lambda(const Instance& inst, const Rat& delta);

struct IterateResult {
  MassVector fixed_point;
  std::int64_t iterations;
};

// Banach iteration x ← g^(λ)(x) until ‖g^(λ)(x) − x‖₁ ≤ eps. The residual
// shrinks by λ per step, so termination is guaranteed; blowing through the
// implied iteration cap is an internal error.
IterateResult fixed_point_iterate(const DiscountedUpdate& update, MassVector x0,
                                  const Rat& eps);

// Terminal inflows f(x')_v for v ∈ T under the undiscounted update.
MassVector terminal_inflow(const Instance& inst, const MassVector& x);

// Rounds the undiscounted terminal inflows at an eps-approximate fixed point
// to the nearest integers. Requires λ = default_lambda(inst, δ) with
// eps/(1−λ) + δ < 1/2; a value farther than that margin from every integer
// raises "accuracy insufficient" rather than guessing. The result sums to t⁺.
ArrivalVector extract_arrivals(const Instance& inst, const DiscountedUpdate& update,
                               const MassVector& x_hat, const Rat& eps);

// x ↦ min(g^(λ)(x·M)/M, 1) coordinate-wise with M = t⁺·2ⁿ: an ℓ1-contraction
// of the unit box whose fixed point, rescaled by M, is g^(λ)'s fixed point.
struct CappedScaledUpdate {
  const Instance* instance;
  Rat lambda;
  Rat scale;  // M = t⁺·2ⁿ

  MassVector operator()(const MassVector& unit_x) const;
};

CappedScaledUpdate capped_scaled_update(const Instance& inst, const Rat& lambda);

// For a fixed point x of g whose induced edge values y(v,s_b) = h_b(x'_v)
// contain a fractional one: a directed cycle (as a vertex sequence) of
// fractional edges avoiding terminals. nullopt when every edge value is
// integral. Throws ValidationError when x is not a fixed point of g.
std::optional<std::vector<int>> fractional_edge_cycle(const Instance& inst,
                                                      const MassVector& x);

}  // namespace arrival
