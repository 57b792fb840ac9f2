// Copyright (c) arrival contributors.
// SPDX-License-Identifier: Apache-2.0
#include "arrival/contraction.hpp"

#include "arrival/simulate.hpp"
#include "arrival/solver.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace arrival;

namespace {

Instance two_vertex() {
  return make_instance({"d", "v"}, {1, 1}, {1, 0}, {0}, {Int(1), Int(0)});
}

Rat random_rat(SplitMix64& rng, long num_bound) {
  return make_rat(Int(rng.below(num_bound)), Int(1 + rng.below(16)));
}

MassVector random_mass(SplitMix64& rng, std::size_t size, long num_bound) {
  MassVector x;
  x.reserve(size);
  for (std::size_t i = 0; i < size; ++i) x.push_back(random_rat(rng, num_bound));
  return x;
}

}  // namespace

TEST_CASE("h0 and h1 on the examples") {
  CHECK(h0(Rat(0)) == 0);
  CHECK(h1(Rat(0)) == 0);
  CHECK(h0(Rat(3)) == 2);
  CHECK(h1(Rat(3)) == 1);
  CHECK(h0(Rat(5, 2)) == Rat(3, 2));
  CHECK(h1(Rat(5, 2)) == 1);
  CHECK_THROWS_AS(h0(Rat(-1)), ValidationError);
  CHECK_THROWS_AS(h1(Rat(-1, 2)), ValidationError);
}

TEST_CASE("h0/h1 split, sandwich, and monotonicity") {
  SplitMix64 rng(11);
  Rat prev_x(-1), prev_h0(0), prev_h1(0);
  std::vector<Rat> grid;
  for (int i = 0; i <= 64; ++i) grid.push_back(Rat(i, 8));  // quarter steps to 8
  for (int i = 0; i < 300; ++i) grid.push_back(random_rat(rng, 64));
  std::sort(grid.begin(), grid.end());
  for (const auto& x : grid) {
    Rat a = h0(x), b = h1(x);
    CHECK(a + b == x);
    CHECK(b <= a);
    CHECK(a <= b + 1);
    if (prev_x >= 0) {
      CHECK(a >= prev_h0);
      CHECK(b >= prev_h1);
    }
    prev_x = x;
    prev_h0 = a;
    prev_h1 = b;
  }
}

TEST_CASE("one-step update on the two-vertex instance") {
  auto inst = two_vertex();
  MassVector x{Rat(1), Rat(2)};  // x_d = 1, x_v = 2
  auto fx = one_step_update(inst, x);
  CHECK(fx[1] == 2);  // h0(1)+h1(1) + h0(2) = 1 + 1
  CHECK(fx[0] == 1);  // h1(2)
  CHECK(one_step_update(inst, MassVector{Rat(0), Rat(0)}) ==
        MassVector{Rat(0), Rat(0)});
  CHECK_THROWS_AS(one_step_update(inst, MassVector{Rat(1)}), ValidationError);
}

TEST_CASE("one-step update conserves mass exactly") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    auto inst = testing::seeded_instance(seed, testing::family_of(seed), 8, 4);
    SplitMix64 rng(seed + 5);
    for (int trial = 0; trial < 50; ++trial) {
      auto x = random_mass(rng, inst.n(), 40);
      CHECK(l1_norm(one_step_update(inst, x)) == l1_norm(x));
    }
  }
}

TEST_CASE("one-step update is non-expansive and monotone") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto inst = testing::seeded_instance(seed, testing::family_of(seed), 8, 4);
    SplitMix64 rng(seed + 9);
    for (int trial = 0; trial < 50; ++trial) {
      auto x = random_mass(rng, inst.n(), 40);
      auto y = random_mass(rng, inst.n(), 40);
      CHECK(l1_distance(one_step_update(inst, x), one_step_update(inst, y)) <=
            l1_distance(x, y));
      auto above = x;
      for (auto& v : above) v += random_rat(rng, 8);
      auto fx = one_step_update(inst, x);
      auto fa = one_step_update(inst, above);
      for (int v = 0; v < inst.n(); ++v) CHECK(fx[v] <= fa[v]);
    }
  }
}

TEST_CASE("projected update on the two-vertex instance is 1 + h0(x)") {
  auto inst = two_vertex();
  for (long k : {0L, 1L, 3L, 5L}) {
    Rat x(k, 2);
    auto g = projected_update(inst, MassVector{x});
    CHECK(g[0] == Rat(1) + h0(x));
  }
}

TEST_CASE("projected update is non-expansive and monotone") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto inst = testing::seeded_instance(seed, testing::family_of(seed), 8, 4);
    auto nts = inst.non_terminals();
    Rat lambda = default_lambda(inst, Rat(1, 4));
    DiscountedUpdate update(inst, lambda);
    SplitMix64 rng(seed + 21);
    for (int trial = 0; trial < 40; ++trial) {
      auto x = random_mass(rng, nts.size(), 40);
      auto y = random_mass(rng, nts.size(), 40);
      CHECK(l1_distance(projected_update(inst, x), projected_update(inst, y)) <=
            l1_distance(x, y));
      auto above = x;
      for (auto& v : above) v += random_rat(rng, 8);
      auto gx = projected_update(inst, x);
      auto ga = projected_update(inst, above);
      auto dx = discounted_update(update, x);
      auto da = discounted_update(update, above);
      for (std::size_t i = 0; i < nts.size(); ++i) {
        CHECK(gx[i] <= ga[i]);
        CHECK(dx[i] <= da[i]);
      }
    }
  }
}

TEST_CASE("integral fixed points of g are integral switching flows") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto inst = testing::seeded_instance(seed, testing::family_of(seed), 8, 4, 4);
    auto solved = solve_fvs(inst);
    auto nts = inst.non_terminals();
    MassVector x;
    for (int v : nts) x.push_back(Rat(solved.flow.out(v)));
    CHECK(projected_update(inst, x) == x);  // outflows of a valid flow
    auto full = extend_with_tokens(inst, x);
    auto y = SwitchingFlow::zero(inst.n());
    for (int v = 0; v < inst.n(); ++v) {
      Rat e = h0(full[v]), o = h1(full[v]);
      REQUIRE(is_integral(e));
      REQUIRE(is_integral(o));
      y.even[v] = e.get_num();
      y.odd[v] = o.get_num();
    }
    CHECK(verify_switching_flow(inst, y).valid);
  }
}

TEST_CASE("discounted update contracts with factor lambda") {
  auto inst = two_vertex();
  DiscountedUpdate zero_discount(inst, Rat(0));
  CHECK(discounted_update(zero_discount, MassVector{Rat(7, 3)}) == MassVector{Rat(0)});
  CHECK_THROWS_AS(DiscountedUpdate(inst, Rat(1)), ValidationError);
  CHECK_THROWS_AS(DiscountedUpdate(inst, Rat(-1, 2)), ValidationError);

  // two-vertex closed form: g^λ(x) = λ(1 + h0(x))
  Rat lambda(17, 18);
  DiscountedUpdate update(inst, lambda);
  for (long k : {0L, 1L, 3L, 7L}) {
    Rat x(k, 2);
    CHECK(discounted_update(update, MassVector{x}) ==
          MassVector{lambda * (Rat(1) + h0(x))});
  }

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto random_inst = testing::seeded_instance(seed, testing::family_of(seed), 7, 4);
    auto nts = random_inst.non_terminals();
    Rat lambda = default_lambda(random_inst, Rat(1, 4));
    DiscountedUpdate update(random_inst, lambda);
    SplitMix64 rng(seed + 33);
    for (int trial = 0; trial < 40; ++trial) {
      auto x = random_mass(rng, nts.size(), 40);
      auto y = random_mass(rng, nts.size(), 40);
      CHECK(l1_distance(discounted_update(update, x), discounted_update(update, y)) <=
            lambda * l1_distance(x, y));
    }
  }
}

TEST_CASE("default lambda matches the prescribed formula") {
  // n=2, t⁺=1, δ=1/2: λ = 1 − (1/2)/9 = 17/18
  CHECK(default_lambda(two_vertex(), Rat(1, 2)) == Rat(17, 18));
  CHECK_THROWS_AS(default_lambda(two_vertex(), Rat(1)), ValidationError);
  CHECK_THROWS_AS(default_lambda(two_vertex(), Rat(0)), ValidationError);
  // monotone in n: a larger graph pushes λ closer to 1
  auto three = make_instance({"d", "v", "w"}, {1, 2, 0}, {1, 0, 0}, {0},
                             {Int(1), Int(0), Int(0)});
  CHECK(default_lambda(three, Rat(1, 2)) > Rat(17, 18));
  CHECK(default_lambda(three, Rat(1, 2)) < 1);
}

TEST_CASE("banach iteration lands on the analytic fixed point 2*lambda") {
  auto inst = two_vertex();
  Rat lambda = default_lambda(inst, Rat(1, 2));  // 17/18 ≥ 2/3
  DiscountedUpdate update(inst, lambda);
  Rat eps = (Rat(1) - lambda) / 8;
  auto result = fixed_point_iterate(update, MassVector{Rat(0)}, eps);
  CHECK(result.fixed_point == MassVector{2 * lambda});
  CHECK(result.iterations <= 8);

  // starting at the exact fixed point takes at most one update
  auto again = fixed_point_iterate(update, MassVector{2 * lambda}, eps);
  CHECK(again.fixed_point == MassVector{2 * lambda});
  CHECK(again.iterations <= 1);

  CHECK_THROWS_AS(fixed_point_iterate(update, MassVector{Rat(0)}, Rat(0)),
                  ValidationError);
}

TEST_CASE("orbits from zero are coordinate-wise nondecreasing") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto inst = testing::seeded_instance(seed, testing::family_of(seed), 7, 3);
    DiscountedUpdate update(inst, default_lambda(inst, Rat(1, 4)));
    MassVector x(inst.non_terminals().size(), Rat(0));
    for (int step = 0; step < 12; ++step) {
      auto next = discounted_update(update, x);
      for (std::size_t i = 0; i < x.size(); ++i) CHECK(next[i] >= x[i]);
      x = std::move(next);
    }
  }
}

TEST_CASE("iterates from both box corners approach the same fixed point") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    auto inst = testing::seeded_instance(seed, testing::family_of(seed), 6, 3);
    auto nts = inst.non_terminals();
    Rat lambda = default_lambda(inst, Rat(1, 4));
    Rat eps = (Rat(1) - lambda) / 8;
    DiscountedUpdate update(inst, lambda);
    Rat big = Rat(inst.total_tokens) * Rat(pow2(inst.n()));
    auto from_zero =
        fixed_point_iterate(update, MassVector(nts.size(), Rat(0)), eps);
    auto from_top =
        fixed_point_iterate(update, MassVector(nts.size(), big), eps);
    CHECK(l1_distance(from_zero.fixed_point, from_top.fixed_point) <=
          2 * eps / (Rat(1) - lambda));
  }
}

TEST_CASE("discounted fixed point sits below every integral fixed point") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    auto inst = testing::seeded_instance(seed, testing::family_of(seed), 7, 3, 4);
    auto nts = inst.non_terminals();
    Rat lambda = default_lambda(inst, Rat(1, 4));
    Rat eps = (Rat(1) - lambda) / 8;
    DiscountedUpdate update(inst, lambda);
    auto x_hat =
        fixed_point_iterate(update, MassVector(nts.size(), Rat(0)), eps).fixed_point;
    for (auto strategy : {PivotStrategy::Arbitrary, PivotStrategy::Fvs}) {
      auto solved = solve_with(inst, strategy);
      for (std::size_t i = 0; i < nts.size(); ++i)
        CHECK(x_hat[i] <= Rat(solved.flow.out(nts[i])));
    }
  }
}

TEST_CASE("extraction matches the simulation oracle") {
  auto inst = two_vertex();
  Rat lambda = default_lambda(inst, Rat(1, 4));
  Rat eps = (Rat(1) - lambda) / 8;
  DiscountedUpdate update(inst, lambda);
  auto iterate = fixed_point_iterate(update, MassVector{Rat(0)}, eps);
  auto arrivals = extract_arrivals(inst, update, iterate.fixed_point, eps);
  CHECK(arrivals.counts == std::vector<Int>{Int(1)});

  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto random_inst = testing::seeded_instance(seed, testing::family_of(seed), 6, 3);
    Rat lam = default_lambda(random_inst, Rat(1, 4));
    Rat e = (Rat(1) - lam) / 8;
    DiscountedUpdate u(random_inst, lam);
    auto x =
        fixed_point_iterate(u, MassVector(random_inst.non_terminals().size(), Rat(0)), e);
    auto extracted = extract_arrivals(random_inst, u, x.fixed_point, e);
    CHECK(extracted == run_profile(random_inst).arrivals);
    Int sum = 0;
    for (const auto& c : extracted.counts) sum += c;
    CHECK(sum == random_inst.total_tokens);
  }
}

TEST_CASE("extraction refuses insufficient accuracy") {
  auto inst = two_vertex();
  // λ = 1/2 makes the recovered δ huge; the margin precondition must fail
  DiscountedUpdate update(inst, Rat(1, 2));
  auto iterate = fixed_point_iterate(update, MassVector{Rat(0)}, Rat(1, 100));
  CHECK_THROWS_WITH_AS(
      extract_arrivals(inst, update, iterate.fixed_point, Rat(1, 100)),
      "accuracy insufficient: eps/(1-lambda) + delta must be < 1/2", ValidationError);
}

TEST_CASE("terminal inflow under the discounted update exceeds t+ - 1") {
  // strict lower bound on the discounted inflow, exact rationals
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    auto inst = testing::seeded_instance(seed, testing::family_of(seed), 6, 3);
    Rat lambda = default_lambda(inst, Rat(1, 4));
    Rat eps = (Rat(1) - lambda) / 8;
    DiscountedUpdate update(inst, lambda);
    auto x =
        fixed_point_iterate(update, MassVector(inst.non_terminals().size(), Rat(0)), eps);
    Rat discounted_in = 0;
    for (const auto& value : terminal_inflow(inst, x.fixed_point))
      discounted_in += lambda * value;
    CHECK(discounted_in > Rat(inst.total_tokens) - 1);
  }
}

TEST_CASE("capped scaled update stays in the unit box and contracts") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto inst = testing::seeded_instance(seed, testing::family_of(seed), 6, 3);
    auto nts = inst.non_terminals();
    Rat lambda = default_lambda(inst, Rat(1, 4));
    auto capped = capped_scaled_update(inst, lambda);
    SplitMix64 rng(seed + 55);
    for (int trial = 0; trial < 30; ++trial) {
      MassVector x, y;
      for (std::size_t i = 0; i < nts.size(); ++i) {
        x.push_back(make_rat(Int(rng.below(64)), Int(64)));
        y.push_back(make_rat(Int(rng.below(64)), Int(64)));
      }
      auto cx = capped(x);
      for (const auto& v : cx) {
        CHECK(v >= 0);
        CHECK(v <= 1);
      }
      CHECK(l1_distance(cx, capped(y)) <= lambda * l1_distance(x, y));
    }
  }
}

TEST_CASE("rescaled fixed point of the capped map equals g^lambda's") {
  auto inst = two_vertex();
  Rat lambda = default_lambda(inst, Rat(1, 4));
  auto capped = capped_scaled_update(inst, lambda);
  Rat scale = capped.scale;
  MassVector x{Rat(0)};
  for (int step = 0; step < 64; ++step) {
    auto next = capped(x);
    if (next == x) break;
    x = std::move(next);
  }
  CHECK(x == MassVector{2 * lambda / scale});  // analytic fixed point 2λ, rescaled
}

TEST_CASE("fractional fixed points expose a fractional directed cycle") {
  // u↔w two-cycle off to the side; no tokens ever reach it
  auto inst = make_instance({"d", "u", "w"}, {0, 2, 1}, {0, 0, 0}, {0},
                            {Int(2), Int(0), Int(0)});
  MassVector x{Rat(1, 2), Rat(1, 2)};  // masses on u, w
  CHECK(projected_update(inst, x) == x);
  auto cycle = fractional_edge_cycle(inst, x);
  REQUIRE(cycle.has_value());
  CHECK(cycle->size() == 2);
  for (int v : *cycle) CHECK_FALSE(inst.is_terminal[v]);

  // integral fixed points have no fractional edges at all
  MassVector zero{Rat(0), Rat(0)};
  CHECK_FALSE(fractional_edge_cycle(inst, zero).has_value());
  // non fixed points are rejected
  CHECK_THROWS_AS(fractional_edge_cycle(inst, MassVector{Rat(1, 3), Rat(2, 3)}),
                  ValidationError);
}
