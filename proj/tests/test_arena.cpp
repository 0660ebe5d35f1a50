#include <random>

#include "doctest.h"

#include "bgp/arena.hpp"
#include "bgp/families.hpp"
#include "bgp/graph_spec.hpp"
#include "oracle.hpp"

using namespace bgp;

namespace {

std::vector<Vertex> tv(std::initializer_list<Vertex> v) { return v; }

std::vector<Graph> small_graphs() {
  std::mt19937 rng(17);
  std::vector<Graph> out{path_graph(1), path_graph(3), cycle_graph(4), star_graph(5), complete_graph(4),
                         Graph::from_edges(3, {})};
  for (int i = 0; i < 6; ++i) {
    const std::size_t n = 2 + i % 4;
    out.push_back(oracle::graph_from_mask(n, rng() & ((1u << (n * (n - 1) / 2)) - 1)));
  }
  return out;
}

}  // namespace

TEST_CASE("multiset ranking") {
  SUBCASE("n=3, k=2 in lexicographic order") {
    CHECK(rank_placement(tv({0, 0}), 3) == 0);
    CHECK(rank_placement(tv({0, 1}), 3) == 1);
    CHECK(rank_placement(tv({0, 2}), 3) == 2);
    CHECK(rank_placement(tv({1, 1}), 3) == 3);
    CHECK(rank_placement(tv({1, 2}), 3) == 4);
    CHECK(rank_placement(tv({2, 2}), 3) == 5);
  }
  SUBCASE("bijection onto the full range, n<=6, k<=5") {
    for (std::size_t n = 1; n <= 6; ++n) {
      for (std::size_t k = 0; k <= 5; ++k) {
        const auto all = oracle::all_multisets(n, k);
        REQUIRE(all.size() == multiset_count(n, k));
        MultisetIndexer ix(n, k);
        std::vector<Vertex> walk(k, 0);
        for (std::size_t r = 0; r < all.size(); ++r) {
          CHECK(ix.rank(all[r]) == r);
          CHECK(ix.unrank(r) == all[r]);
          CHECK(walk == all[r]);
          CHECK(next_multiset(walk, n) == (r + 1 < all.size()));
        }
      }
    }
  }
  SUBCASE("last multiset") {
    CHECK(rank_placement(tv({4, 4, 4}), 5) == multiset_count(5, 3) - 1);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(rank_placement(tv({1, 0}), 3), Error);
    CHECK_THROWS_AS(rank_placement(tv({0, 3}), 3), Error);
    CHECK_THROWS_AS(unrank_placement(6, 3, 2), Error);
  }
  SUBCASE("counts") {
    CHECK(multiset_count(0, 0) == 1);
    CHECK(multiset_count(0, 3) == 0);
    CHECK(multiset_count(16, 5) == 15504);
    CHECK(multiset_count(1u << 16, 40) == UINT64_MAX);
  }
}

TEST_CASE("keys") {
  const Placement p(tv({3, 1, 1}));
  CHECK(p.key() == "[1,1,3]");
  CHECK(Placement::parse_key("[1,1,3]") == p);
  CHECK(Placement::parse_key("[]").size() == 0);
  CHECK_THROWS_AS(Placement::parse_key("[3,1]"), ParseError);
  CHECK_THROWS_AS(Placement::parse_key("[1, 3]"), ParseError);
  const GameState s{p, 4, Turn::president};
  CHECK(s.key() == "placement=[1,1,3];president=4;turn=P");
  CHECK(GameState::parse_key(s.key()) == s);
  CHECK_THROWS_AS(GameState::parse_key("placement=[1];president=x;turn=P"), ParseError);
  CHECK_THROWS_AS(GameState::parse_key("placement=[1];president=0;turn=Q"), ParseError);
}

TEST_CASE("surround predicate") {
  const Graph c4 = cycle_graph(4);
  CHECK(surrounded(c4, tv({1, 3}), 0, SurroundMode::open));
  CHECK_FALSE(surrounded(c4, tv({1, 3}), 0, SurroundMode::closed));
  CHECK(surrounded(c4, tv({0, 1, 3}), 0, SurroundMode::closed));
  CHECK_FALSE(surrounded(c4, tv({0, 1}), 0, SurroundMode::open));
  const Graph fig = graph_from_spec("tree:0-1;1-2;1-3;0-4;0-5");
  CHECK(surrounded(fig, tv({1, 4, 5}), 0, SurroundMode::open));
  CHECK_FALSE(surrounded(fig, tv({1, 4, 5}), 1, SurroundMode::open));
  CHECK(surrounded(path_graph(1), {}, 0, SurroundMode::open));
  CHECK_FALSE(surrounded(path_graph(1), {}, 0, SurroundMode::closed));

  for (const Graph& g : small_graphs()) {
    for (std::size_t k = 0; k <= 3; ++k) {
      for (const auto& t : oracle::all_multisets(g.order(), k)) {
        for (Vertex v = 0; v < g.order(); ++v) {
          const bool open = surrounded(g, t, v, SurroundMode::open);
          CHECK(open == oracle::covered(g, t, v, false));
          CHECK(surrounded(g, t, v, SurroundMode::closed) == oracle::covered(g, t, v, true));
          if (surrounded(g, t, v, SurroundMode::closed)) CHECK(open);
        }
      }
    }
  }
}

TEST_CASE("president moves") {
  CHECK(president_moves(path_graph(3), 1) == tv({0, 1, 2}));
  CHECK(president_moves(path_graph(1), 0) == tv({0}));
  CHECK(president_moves(hypercube_graph(3), 5).size() == 4);
}

TEST_CASE("joint successors") {
  SUBCASE("P3 from {0,1}") {
    const auto succ = joint_successors(path_graph(3), Placement(tv({0, 1})));
    std::vector<std::string> keys;
    for (const auto& p : succ) keys.push_back(p.key());
    CHECK(keys == std::vector<std::string>{"[0,0]", "[0,1]", "[0,2]", "[1,1]", "[1,2]"});
  }
  SUBCASE("isolated vertex") {
    const auto succ = joint_successors(path_graph(1), Placement(tv({0})));
    REQUIRE(succ.size() == 1);
    CHECK(succ[0] == Placement(tv({0})));
  }
  SUBCASE("agrees with brute force; symmetric; feasibility matches") {
    for (const Graph& g : small_graphs()) {
      if (g.order() > 5) continue;
      for (std::size_t k = 0; k <= 3; ++k) {
        const Arena arena(g, k);
        arena.materialize();
        const auto all = oracle::all_multisets(g.order(), k);
        for (std::size_t i = 0; i < all.size(); ++i) {
          const auto expected = oracle::moves_of(g, all[i]);
          const auto row = arena.table().row(static_cast<PlacementRank>(i));
          std::set<oracle::Tokens> got;
          for (PlacementRank q : row) got.insert(all[q]);
          CHECK(got == expected);
          CHECK(row.size() == expected.size());
          CHECK(std::binary_search(row.begin(), row.end(), static_cast<PlacementRank>(i)));
          std::size_t product = 1;
          for (Vertex t : all[i]) product *= g.degree(t) + 1;
          CHECK(row.size() <= std::min<std::size_t>(product, all.size()));
          for (std::size_t j = 0; j < all.size(); ++j) {
            const bool forward = expected.contains(all[j]);
            CHECK(joint_move_feasible(g, all[i], all[j]) == forward);
            const auto back = arena.table().row(static_cast<PlacementRank>(j));
            CHECK(std::binary_search(back.begin(), back.end(), static_cast<PlacementRank>(i)) == forward);
          }
        }
      }
    }
  }
}

TEST_CASE("joint move feasibility") {
  const Graph p3 = path_graph(3);
  CHECK(joint_move_feasible(p3, tv({0, 2}), tv({0, 2})));
  CHECK_FALSE(joint_move_feasible(p3, tv({0, 0}), tv({2, 2})));
  CHECK(joint_move_feasible(p3, tv({0, 2}), tv({1, 1})));
  CHECK(joint_move_assignment(p3, tv({0, 2}), tv({1, 1})) == tv({1, 1}));
  CHECK(joint_move_assignment(p3, tv({0, 0}), tv({2, 2})).empty());
  CHECK_FALSE(joint_move_feasible(p3, tv({0}), tv({0, 1})));
}

TEST_CASE("arena sizes and ids") {
  CHECK(Arena(cycle_graph(5), 2).state_count() == 150);
  CHECK(Arena(path_graph(2), 1).state_count() == 8);
  CHECK(Arena(path_graph(1), 0).state_count() == 2);
  CHECK(Arena(cycle_graph(4), 2).state_count() == 80);
  CHECK_THROWS_AS(Arena(cycle_graph(10), 5, 1000), ResourceLimitError);
  try {
    Arena(cycle_graph(10), 5, 1000);
  } catch (const ResourceLimitError& e) {
    CHECK(e.requested() == 2002 * 10 * 2);
    CHECK(e.limit() == 1000);
  }

  const Arena arena(graph_from_spec("cart(path:2,path:3)"), 3);
  for (StateId s = 0; s < arena.state_count(); ++s) {
    const GameState st = arena.state(s);
    CHECK(arena.id(st) == s);
    CHECK(st.placement.size() == 3);
    CHECK(st.president < 6);
  }
}

TEST_CASE("materialization is independent of worker count") {
  const Graph g = graph_from_spec("cart(path:3,path:3)");
  const Arena one(g, 3), many(g, 3);
  one.materialize(1);
  many.materialize(4);
  CHECK(one.table().offsets == many.table().offsets);
  CHECK(one.table().targets == many.table().targets);
  CHECK_THROWS_AS(Arena(g, 3).materialize(1, 100), ResourceLimitError);
}

TEST_CASE("safe states") {
  const Arena arena(cycle_graph(4), 2);
  const auto safe = arena.safe_states(SurroundMode::open);
  CHECK(safe[arena.id({Placement(tv({1, 3})), 0, Turn::president})]);
  CHECK_FALSE(safe[arena.id({Placement(tv({0, 1})), 0, Turn::president})]);
  for (StateId s = 0; s < arena.state_count(); s += 2) CHECK(safe[s]);
}
