// Copyright (c) arrival contributors.
// SPDX-License-Identifier: Apache-2.0
#include "arrival/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace arrival {

namespace {

void require_domain(const MassVector& x, std::size_t expect, const char* domain) {
  if (x.size() != expect)
    throw ValidationError(std::string("mass vector key mismatch: expected ") +
                          domain);
}

Rat abs_rat(const Rat& x) { return x < 0 ? Rat(-x) : x; }

}  // namespace

Rat l1_norm(const MassVector& x) {
  Rat sum = 0;
  for (const auto& v : x) sum += abs_rat(v);
  return sum;
}

Rat l1_distance(const MassVector& x, const MassVector& y) {
  if (x.size() != y.size())
    throw ValidationError("mass vector key mismatch: dimensions differ");
  Rat sum = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += abs_rat(x[i] - y[i]);
  return sum;
}

Rat h0(const Rat& x) {
  if (x < 0) throw ValidationError("h0: negative input");
  Rat half = x / 2;
  Rat a = x - Rat(floor_rat(half));
  Rat b(ceil_rat(half));
  return a < b ? a : b;
}

Rat h1(const Rat& x) {
  if (x < 0) throw ValidationError("h1: negative input");
  Rat half = x / 2;
  Rat a(floor_rat(half));
  Rat b = x - Rat(ceil_rat(half));
  return a > b ? a : b;
}

MassVector one_step_update(const Instance& inst, const MassVector& x) {
  require_domain(x, static_cast<std::size_t>(inst.n()), "all vertices");
  MassVector out(static_cast<std::size_t>(inst.n()), Rat(0));
  for (int u = 0; u < inst.n(); ++u) {
    out[inst.s0[u]] += h0(x[u]);
    out[inst.s1[u]] += h1(x[u]);
  }
  return out;
}

MassVector extend_with_tokens(const Instance& inst, const MassVector& x) {
  auto nts = inst.non_terminals();
  require_domain(x, nts.size(), "non-terminal vertices");
  MassVector full(static_cast<std::size_t>(inst.n()), Rat(0));
  for (int v = 0; v < inst.n(); ++v)
    if (inst.is_terminal[v]) full[v] = Rat(inst.tokens[v]);
  for (std::size_t i = 0; i < nts.size(); ++i) full[nts[i]] = x[i];
  return full;
}

MassVector projected_update(const Instance& inst, const MassVector& x) {
  MassVector full = one_step_update(inst, extend_with_tokens(inst, x));
  MassVector out;
  for (int v = 0; v < inst.n(); ++v)
    if (!inst.is_terminal[v]) out.push_back(std::move(full[v]));
  return out;
}

DiscountedUpdate::DiscountedUpdate(const Instance& inst, Rat lambda_)
    : instance(&inst), lambda(std::move(lambda_)) {
  if (lambda < 0 || lambda >= 1)
    throw ValidationError("discount must satisfy 0 <= lambda < 1");
}

MassVector discounted_update(const DiscountedUpdate& update, const MassVector& x) {
  MassVector out = projected_update(*update.instance, x);
  for (auto& v : out) v *= update.lambda;
  return out;
}

Rat default_lambda(const Instance& inst, const Rat& delta) {
  if (delta <= 0 || delta >= 1)
    throw ValidationError("delta must lie strictly between 0 and 1");
  Rat denominator = Rat(inst.total_tokens) *
                    (Rat(1) + Rat(inst.n()) * Rat(pow2(static_cast<unsigned long>(inst.n()))));
  return Rat(1) - delta / denominator;
}

IterateResult fixed_point_iterate(const DiscountedUpdate& update, MassVector x0,
                                  const Rat& eps) {
  if (eps <= 0) throw ValidationError("eps must be positive");
  const Instance& inst = *update.instance;
  require_domain(x0, inst.non_terminals().size(), "non-terminal vertices");
  MassVector x = std::move(x0);
  MassVector next = discounted_update(update, x);
  Rat residual = l1_distance(next, x);
  std::int64_t iterations = 1;
  if (residual <= eps) return {std::move(next), iterations};

  // Residual shrinks by λ per step, so k with r₀·λ^k ≤ eps bounds the loop.
  // Only a tripwire, so floating point is fine here.
  double r0 = residual.get_d();
  double e = eps.get_d();
  double lam = update.lambda.get_d();
  std::int64_t cap = 1u << 20;
  if (lam > 0.0 && lam < 1.0 && e > 0.0) {
    double bound = (std::log(r0) - std::log(e)) / -std::log(lam);
    if (std::isfinite(bound) && bound >= 0 && bound < 1e15)
      cap = static_cast<std::int64_t>(bound) * 2 + inst.n() + 64;
    else if (bound >= 1e15)
      cap = std::numeric_limits<std::int64_t>::max() / 2;
  }
  while (true) {
    x = std::move(next);
    next = discounted_update(update, x);
    ++iterations;
    if (l1_distance(next, x) <= eps) return {std::move(next), iterations};
    if (iterations > cap)
      throw InternalError("fixed-point iteration exceeded its contraction cap");
  }
}

MassVector terminal_inflow(const Instance& inst, const MassVector& x) {
  MassVector full = one_step_update(inst, extend_with_tokens(inst, x));
  MassVector out;
  out.reserve(inst.terminals.size());
  for (int t : inst.terminals) out.push_back(std::move(full[t]));
  return out;
}

ArrivalVector extract_arrivals(const Instance& inst, const DiscountedUpdate& update,
                               const MassVector& x_hat, const Rat& eps) {
  if (eps <= 0) throw ValidationError("eps must be positive");
  Rat one_minus = Rat(1) - update.lambda;
  // δ recovered from λ = 1 − δ/(t⁺(1+n·2ⁿ)).
  Rat delta = one_minus * Rat(inst.total_tokens) *
              (Rat(1) + Rat(inst.n()) * Rat(pow2(static_cast<unsigned long>(inst.n()))));
  Rat margin = eps / one_minus + delta;
  if (!(margin < Rat(1, 2)))
    throw ValidationError("accuracy insufficient: eps/(1-lambda) + delta must be < 1/2");
  MassVector inflow = terminal_inflow(inst, x_hat);
  ArrivalVector arrivals;
  arrivals.counts.reserve(inflow.size());
  Int sum = 0;
  for (std::size_t i = 0; i < inflow.size(); ++i) {
    if (distance_to_nearest_int(inflow[i]) >= margin)
      throw ValidationError("accuracy insufficient: inflow at terminal '" +
                            inst.names[inst.terminals[i]] +
                            "' is not within the rounding margin of an integer");
    Int rounded = nearest_int(inflow[i]);
    sum += rounded;
    arrivals.counts.push_back(std::move(rounded));
  }
  if (sum != inst.total_tokens)
    throw InternalError("extracted arrivals do not sum to the token total");
  return arrivals;
}

MassVector CappedScaledUpdate::operator()(const MassVector& unit_x) const {
  const Instance& inst = *instance;
  require_domain(unit_x, inst.non_terminals().size(), "non-terminal vertices");
  MassVector x = unit_x;
  for (auto& v : x) v *= scale;
  MassVector g = projected_update(inst, x);
  for (auto& v : g) {
    v *= lambda;
    v /= scale;
    if (v > 1) v = 1;
  }
  return g;
}

CappedScaledUpdate capped_scaled_update(const Instance& inst, const Rat& lambda) {
  if (lambda < 0 || lambda >= 1)
    throw ValidationError("discount must satisfy 0 <= lambda < 1");
  Rat scale = Rat(inst.total_tokens) * Rat(pow2(static_cast<unsigned long>(inst.n())));
  return CappedScaledUpdate{&inst, lambda, scale};
}

std::optional<std::vector<int>> fractional_edge_cycle(const Instance& inst,
                                                      const MassVector& x) {
  MassVector gx = projected_update(inst, x);
  if (gx != x)
    throw ValidationError("fractional_edge_cycle requires a fixed point of g");
  MassVector full = extend_with_tokens(inst, x);
  // y(v, s0) = h0(x'_v), y(v, s1) = h1(x'_v); at most one of them fractional.
  std::vector<char> even_fractional(static_cast<std::size_t>(inst.n()), 0);
  std::vector<char> odd_fractional(static_cast<std::size_t>(inst.n()), 0);
  bool any = false;
  for (int v = 0; v < inst.n(); ++v) {
    even_fractional[v] = !is_integral(h0(full[v]));
    odd_fractional[v] = !is_integral(h1(full[v]));
    any = any || even_fractional[v] || odd_fractional[v];
  }
  if (!any) return std::nullopt;

  // Walk backward over fractional edges; sources of fractional edges are
  // non-terminals whose inflow at a fixed point must itself contain a
  // fractional edge, so the walk closes a cycle within n steps.
  int start = -1;
  for (int v = 0; v < inst.n() && start < 0; ++v)
    if (even_fractional[v] || odd_fractional[v]) start = v;
  auto predecessor = [&](int v) {
    for (int u = 0; u < inst.n(); ++u) {
      if (even_fractional[u] && inst.s0[u] == v) return u;
      if (odd_fractional[u] && inst.s1[u] == v) return u;
    }
    throw InternalError("fractional edge without fractional predecessor");
  };
  std::vector<int> order;
  std::vector<int> position(static_cast<std::size_t>(inst.n()), -1);
  int cur = start;
  while (position[cur] < 0) {
    position[cur] = static_cast<int>(order.size());
    order.push_back(cur);
    cur = predecessor(cur);
  }
  std::vector<int> cycle(order.begin() + position[cur], order.end());
  std::reverse(cycle.begin(), cycle.end());  // backward walk -> forward cycle
  return cycle;
}

}  // namespace arrival
