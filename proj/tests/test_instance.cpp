// Copyright (c) arrival contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <set>

#include "arrival/instance.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace arrival;

namespace {

std::string two_vertex_doc() {
  return R"({ "vertices": ["d","v"], "s0": {"d":"v","v":"v"},
              "s1": {"d":"v","v":"d"}, "terminals": ["d"], "tokens": {"d": 1} })";
}

std::set<std::pair<int, int>> edge_set(const UndirectedView& view) {
  std::set<std::pair<int, int>> edges;
  for (std::size_t u = 0; u < view.adj.size(); ++u)
    for (int w : view.adj[u]) {
      int a = view.vertices[u], b = view.vertices[w];
      edges.emplace(std::min(a, b), std::max(a, b));
    }
  return edges;
}

}  // namespace

TEST_CASE("smallest legal instance parses") {
  auto inst = parse_instance(
      R"({"vertices":["d"],"s0":{"d":"d"},"s1":{"d":"d"},"terminals":["d"],"tokens":{"d":1}})");
  CHECK(inst.n() == 1);
  CHECK(inst.s0[0] == 0);
  CHECK(inst.s1[0] == 0);
  CHECK(inst.terminals == std::vector<int>{0});
  CHECK(inst.total_tokens == 1);
}

TEST_CASE("vertex order is declaration order") {
  auto inst = parse_instance(two_vertex_doc());
  CHECK(inst.names == std::vector<std::string>{"d", "v"});
  CHECK(inst.index_of("v") == 1);
  CHECK_THROWS_AS(inst.index_of("zz"), ValidationError);
}

TEST_CASE("field order in the document is irrelevant") {
  auto reordered = parse_instance(
      R"({"tokens":{"d":1},"terminals":["d"],"s1":{"d":"v","v":"d"},
          "s0":{"d":"v","v":"v"},"vertices":["d","v"]})");
  CHECK(reordered == parse_instance(two_vertex_doc()));
}

TEST_CASE("each validation error names the offender") {
  SUBCASE("empty terminals") {
    CHECK_THROWS_WITH_AS(
        parse_instance(
            R"({"vertices":["d"],"s0":{"d":"d"},"s1":{"d":"d"},"terminals":[],"tokens":{}})"),
        "terminals empty", ValidationError);
  }
  SUBCASE("unreachable terminal") {
    // non-terminal v with both successors pointing at itself
    CHECK_THROWS_WITH_AS(
        parse_instance(
            R"({"vertices":["d","v"],"s0":{"d":"d","v":"v"},"s1":{"d":"d","v":"v"},
                "terminals":["d"],"tokens":{"d":1}})"),
        "no terminal reachable from 'v'", ValidationError);
  }
  SUBCASE("duplicate vertex id") {
    CHECK_THROWS_WITH_AS(
        parse_instance(
            R"({"vertices":["d","d"],"s0":{"d":"d"},"s1":{"d":"d"},"terminals":["d"],"tokens":{"d":1}})"),
        "vertices: duplicate vertex id 'd'", ValidationError);
  }
  SUBCASE("unknown successor") {
    CHECK_THROWS_AS(parse_instance(R"({"vertices":["d"],"s0":{"d":"x"},"s1":{"d":"d"},
                                       "terminals":["d"],"tokens":{"d":1}})"),
                    ValidationError);
  }
  SUBCASE("missing successor") {
    CHECK_THROWS_AS(parse_instance(R"({"vertices":["d","v"],"s0":{"d":"d"},"s1":{"d":"d","v":"d"},
                                       "terminals":["d"],"tokens":{"d":1}})"),
                    ValidationError);
  }
  SUBCASE("zero tokens") {
    CHECK_THROWS_WITH_AS(
        parse_instance(
            R"({"vertices":["d"],"s0":{"d":"d"},"s1":{"d":"d"},"terminals":["d"],"tokens":{}})"),
        "tokens: total token count is zero", ValidationError);
  }
  SUBCASE("tokens on a non-terminal") {
    CHECK_THROWS_AS(
        parse_instance(
            R"({"vertices":["d","v"],"s0":{"d":"v","v":"d"},"s1":{"d":"v","v":"d"},
                "terminals":["d"],"tokens":{"d":1,"v":1}})"),
        ValidationError);
  }
  SUBCASE("negative tokens") {
    CHECK_THROWS_AS(parse_instance(R"({"vertices":["d"],"s0":{"d":"d"},"s1":{"d":"d"},
                                       "terminals":["d"],"tokens":{"d":-2}})"),
                    ValidationError);
  }
  SUBCASE("unknown field") {
    CHECK_THROWS_AS(parse_instance(R"({"vertices":["d"],"s0":{"d":"d"},"s1":{"d":"d"},
                                       "terminals":["d"],"tokens":{"d":1},"extra":0})"),
                    ValidationError);
  }
  SUBCASE("duplicate terminal") {
    CHECK_THROWS_AS(
        parse_instance(
            R"({"vertices":["d"],"s0":{"d":"d"},"s1":{"d":"d"},"terminals":["d","d"],"tokens":{"d":1}})"),
        ValidationError);
  }
}

TEST_CASE("token values beyond 64 bits parse from strings") {
  auto inst = parse_instance(
      R"({"vertices":["d"],"s0":{"d":"d"},"s1":{"d":"d"},"terminals":["d"],
          "tokens":{"d":"340282366920938463463374607431768211456"}})");
  CHECK(inst.total_tokens == pow2(128));
  auto again = parse_instance(serialize_instance(inst));
  CHECK(again == inst);
}

TEST_CASE("parse after serialize is the identity on valid instances") {
  auto inst = parse_instance(two_vertex_doc());
  CHECK(parse_instance(serialize_instance(inst)) == inst);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto generated = testing::seeded_instance(seed, testing::family_of(seed), 9, 6);
    CHECK(parse_instance(serialize_instance(generated)) == generated);
  }
}

TEST_CASE("undirected view collapses parallel edges") {
  // s0(a)=b, s1(a)=b: one undirected edge
  auto inst = make_instance({"a", "b"}, {1, 1}, {1, 1}, {1}, {Int(0), Int(1)});
  auto view = undirected_view(inst, {0, 1});
  CHECK(view.edge_count() == 1);
  CHECK(edge_set(view) == std::set<std::pair<int, int>>{{0, 1}});
}

TEST_CASE("undirected view drops self-loops") {
  auto inst = parse_instance(two_vertex_doc());
  auto view = undirected_view(inst, {1});  // keep = {v}, s0(v)=v
  CHECK(view.size() == 1);
  CHECK(view.edge_count() == 0);
}

TEST_CASE("undirected view of a directed 4-cycle is the undirected 4-cycle") {
  // a→b→c→d→a with both successors along the cycle
  auto inst = make_instance({"a", "b", "c", "d"}, {1, 2, 3, 0}, {1, 2, 3, 0}, {0},
                            {Int(1), Int(0), Int(0), Int(0)});
  auto view = undirected_view(inst, {0, 1, 2, 3});
  // enumerated by hand from the successor maps
  CHECK(edge_set(view) ==
        std::set<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

TEST_CASE("empty keep yields the empty view") {
  auto inst = parse_instance(two_vertex_doc());
  auto view = undirected_view(inst, {});
  CHECK(view.size() == 0);
  CHECK(view.edge_count() == 0);
}

TEST_CASE("shrinking keep never adds edges") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto inst = testing::seeded_instance(seed, GenFamily::Uniform, 9, 4);
    SplitMix64 rng(seed + 1000);
    std::vector<int> larger, smaller;
    for (int v = 0; v < inst.n(); ++v)
      if (rng.below(4) != 0) larger.push_back(v);
    for (int v : larger)
      if (rng.below(4) != 0) smaller.push_back(v);
    auto big = edge_set(undirected_view(inst, larger));
    auto small = edge_set(undirected_view(inst, smaller));
    CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));
  }
}
