#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"

#include "bgp/families.hpp"
#include "bgp/graph.hpp"
#include "bgp/graph_io.hpp"
#include "bgp/graph_spec.hpp"
#include "oracle.hpp"

using namespace bgp;

namespace {

Graph random_graph(std::mt19937& rng, std::size_t n, double density) {
  std::bernoulli_distribution coin(density);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, edges);
}

bool brute_force_retraction(const Graph& g, const std::vector<Vertex>& h, const std::vector<Vertex>& r) {
  for (Vertex x : h) {
    if (r[x] != x) return false;
  }
  for (auto [u, v] : g.edges()) {
    if (r[u] != r[v] && !g.adjacent(r[u], r[v])) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("graph construction rejects malformed edge lists") {
  const std::vector<Edge> loop{{1, 1}}, dup{{0, 1}, {1, 0}}, range{{0, 3}};
  CHECK_THROWS_AS(Graph::from_edges(3, loop), Error);
  CHECK_THROWS_AS(Graph::from_edges(3, dup), Error);
  CHECK_THROWS_AS(Graph::from_edges(3, range), Error);
  const Graph empty = Graph::from_edges(0, {});
  CHECK(empty.order() == 0);
  CHECK(degree_profile(empty).max_degree == 0);
}

TEST_CASE("adjacency is symmetric and irreflexive") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = random_graph(rng, 1 + trial % 9, 0.4);
    for (Vertex u = 0; u < g.order(); ++u) {
      CHECK_FALSE(g.adjacent(u, u));
      for (Vertex v = 0; v < g.order(); ++v) CHECK(g.adjacent(u, v) == g.adjacent(v, u));
      for (Vertex v : g.neighbors(u)) CHECK(g.adjacent(u, v));
    }
  }
}

TEST_CASE("family generators") {
  SUBCASE("cycle:5 is 2-regular") {
    const Graph c = cycle_graph(5);
    CHECK(c.order() == 5);
    for (Vertex v = 0; v < 5; ++v) CHECK(c.degree(v) == 2);
  }
  SUBCASE("hypercube:3 is 3-regular on 8 vertices") {
    const Graph q = hypercube_graph(3);
    CHECK(q.order() == 8);
    for (Vertex v = 0; v < 8; ++v) CHECK(q.degree(v) == 3);
    CHECK(q.adjacent(0b000, 0b100));
    CHECK_FALSE(q.adjacent(0b000, 0b110));
  }
  SUBCASE("kpartite:2,3") {
    const std::size_t parts[] = {2, 3};
    const Graph k = complete_multipartite(parts);
    CHECK(k.order() == 5);
    CHECK(k.degree(0) == 3);
    CHECK(k.degree(1) == 3);
    CHECK(k.degree(2) == 2);
    CHECK(degree_profile(k).max_degree == 3);
  }
  SUBCASE("wheel:6 has a universal hub") {
    CHECK(degree_profile(wheel_graph(6)).max_degree == 5);
  }
  SUBCASE("invalid parameters") {
    const std::size_t two[] = {2};
    CHECK_THROWS_AS(generate_family(Family::cycle, two), Error);
    const std::size_t not_tree[] = {0, 1, 1, 2, 2, 0};
    CHECK_THROWS_AS(generate_family(Family::tree, not_tree), Error);
  }
  SUBCASE("handshake identity") {
    const std::size_t parts[] = {1, 2, 3};
    for (const Graph& g : {path_graph(7), cycle_graph(9), complete_graph(6), star_graph(5), wheel_graph(7),
                           hypercube_graph(4), complete_multipartite(parts)}) {
      std::size_t sum = 0;
      for (std::size_t d : degree_profile(g).degrees) sum += d;
      CHECK(sum == 2 * g.size());
    }
  }
}

TEST_CASE("leaf sets") {
  CHECK(leaf_set(path_graph(5)) == std::vector<Vertex>{0, 4});
  CHECK(leaf_set(star_graph(4)) == std::vector<Vertex>{1, 2, 3});
  const Graph double_star = graph_from_spec("tree:0-1;1-2;1-3;0-4;0-5");
  CHECK(leaf_set(double_star).size() == 4);
  CHECK(is_tree(double_star));
}

TEST_CASE("products") {
  SUBCASE("P2 x P2 is a 4-cycle") {
    const Graph g = product(path_graph(2), path_graph(2), ProductKind::cartesian);
    CHECK(g.order() == 4);
    CHECK(g.size() == 4);
    for (Vertex v = 0; v < 4; ++v) CHECK(g.degree(v) == 2);
    CHECK(is_connected(g));
  }
  SUBCASE("strong P3 x P3 degrees") {
    const Graph g = product(path_graph(3), path_graph(3), ProductKind::strong);
    CHECK(g.degree(0) == 3);
    CHECK(g.degree(4) == 8);
    CHECK(degree_profile(g).max_degree == 8);
  }
  SUBCASE("P4 x P4 max degree") {
    CHECK(degree_profile(product(path_graph(4), path_graph(4), ProductKind::cartesian)).max_degree == 4);
  }
  SUBCASE("degree identities on random factors") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
      const Graph g = random_graph(rng, 1 + trial % 5, 0.5);
      const Graph h = random_graph(rng, 1 + (trial * 7) % 5, 0.5);
      const Graph cart = product(g, h, ProductKind::cartesian);
      const Graph strong = product(g, h, ProductKind::strong);
      const Graph lex = product(g, h, ProductKind::lexicographic);
      for (const Graph* p : {&cart, &strong, &lex}) CHECK(p->order() == g.order() * h.order());
      for (Vertex u = 0; u < g.order(); ++u) {
        for (Vertex v = 0; v < h.order(); ++v) {
          const Vertex id = static_cast<Vertex>(u * h.order() + v);
          CHECK(cart.degree(id) == g.degree(u) + h.degree(v));
          CHECK(strong.degree(id) == (g.degree(u) + 1) * (h.degree(v) + 1) - 1);
          CHECK(lex.degree(id) == h.order() * g.degree(u) + h.degree(v));
        }
      }
    }
  }
}

TEST_CASE("graph spec parsing") {
  SUBCASE("literals") {
    CHECK(graph_from_spec("cycle:5") == cycle_graph(5));
    CHECK(graph_from_spec("cart(path:2,path:2)") == product(path_graph(2), path_graph(2), ProductKind::cartesian));
    CHECK(graph_from_spec(" strong( path:3 , path:3 ) ") ==
          product(path_graph(3), path_graph(3), ProductKind::strong));
    const std::size_t parts[] = {1, 2, 3};
    CHECK(graph_from_spec("lex(kpartite:1,2,3,path:2)") ==
          product(complete_multipartite(parts), path_graph(2), ProductKind::lexicographic));
  }
  SUBCASE("round trip is canonical") {
    for (const char* text : {"cycle:5", "cart(path:2,path:2)", "kpartite:2,3", "tree:0-1;0-2;1-3",
                             "lex(strong(path:2,cycle:3),hypercube:2)", "file:some/graph.json"}) {
      CHECK(render(parse_graph_spec(text)) == text);
    }
    CHECK(render(parse_graph_spec("tree:3-1;2-0;0-1")) == "tree:0-1;0-2;1-3");
  }
  SUBCASE("diagnostics") {
    auto offset_of = [](const char* text) -> std::size_t {
      try {
        parse_graph_spec(text);
      } catch (const ParseError& e) {
        return e.offset();
      }
      return SIZE_MAX;
    };
    CHECK_THROWS_WITH_AS(parse_graph_spec("cycle:2"), doctest::Contains("cycle order must be >= 3"), ParseError);
    CHECK(offset_of("cycle:2") == 6);
    CHECK_THROWS_WITH_AS(parse_graph_spec("blob:3"), doctest::Contains("unknown family"), ParseError);
    CHECK(offset_of("cart(path:2 path:2)") == 12);
    CHECK(offset_of("path:3)") == 6);
    CHECK_THROWS_AS(parse_graph_spec(""), ParseError);
    CHECK_THROWS_AS(parse_graph_spec("tree:0-1;1-2;2-0"), ParseError);
  }
}

TEST_CASE("graph files") {
  const auto dir = std::filesystem::temp_directory_path() / "bgp_graph_io_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "g.json").string();
  SUBCASE("read P2") {
    std::ofstream(path) << R"({"n":2,"edges":[[0,1]]})";
    CHECK(read_graph(path) == path_graph(2));
  }
  SUBCASE("self-loop rejected") {
    std::ofstream(path) << R"({"n":3,"edges":[[0,0]]})";
    CHECK_THROWS_AS(read_graph(path), ParseError);
  }
  SUBCASE("duplicate rejected") {
    std::ofstream(path) << R"({"n":3,"edges":[[0,1],[1,0]]})";
    CHECK_THROWS_AS(read_graph(path), ParseError);
  }
  SUBCASE("malformed JSON") {
    std::ofstream(path) << R"({"n":3,"edges":[[0,1]})";
    CHECK_THROWS_AS(read_graph(path), ParseError);
  }
  SUBCASE("write then read is byte identical") {
    const Graph g = graph_from_spec("cart(cycle:3,path:3)");
    write_graph(g, path);
    std::ifstream in(path);
    const std::string first((std::istreambuf_iterator<char>(in)), {});
    const Graph back = read_graph(path);
    CHECK(back == g);
    write_graph(back, path);
    std::ifstream again(path);
    const std::string second((std::istreambuf_iterator<char>(again)), {});
    CHECK(first == second);
    CHECK(graph_from_spec("file:" + path) == g);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("fingerprints") {
  CHECK(cycle_graph(5).fingerprint() == graph_from_spec("cycle:5").fingerprint());
  CHECK(cycle_graph(5).fingerprint() != path_graph(5).fingerprint());
  CHECK(path_graph(3).canonical_text() == "3:0-1,1-2");
  CHECK(cycle_graph(5).fingerprint().size() == 16);
}

TEST_CASE("retractions") {
  SUBCASE("folding a 4-cycle onto a path of three vertices") {
    const Graph c4 = cycle_graph(4);
    CHECK(is_retraction({&c4, {0, 1, 2}, {0, 1, 2, 1}}));
  }
  SUBCASE("identity") {
    const Graph g = graph_from_spec("cart(path:2,path:3)");
    std::vector<Vertex> all(g.order());
    for (Vertex v = 0; v < g.order(); ++v) all[v] = v;
    CHECK(is_retraction({&g, all, all}));
  }
  SUBCASE("P3 onto its endpoints") {
    const Graph p3 = path_graph(3);
    CHECK_FALSE(is_retraction({&p3, {0, 2}, {0, 0, 2}}));
  }
  SUBCASE("image outside H is an error") {
    const Graph p3 = path_graph(3);
    CHECK_THROWS_AS(is_retraction({&p3, {0, 2}, {0, 1, 2}}), Error);
  }
  SUBCASE("agrees with brute force on small graphs") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 2 + trial % 4;
      const Graph g = random_graph(rng, n, 0.5);
      std::vector<Vertex> h;
      for (Vertex v = 0; v < n; ++v) {
        if (v == 0 || rng() % 2) h.push_back(v);
      }
      std::vector<std::size_t> digits(n, 0);
      for (;;) {
        std::vector<Vertex> r(n);
        for (std::size_t i = 0; i < n; ++i) r[i] = h[digits[i]];
        CHECK(is_retraction({&g, h, r}) == brute_force_retraction(g, h, r));
        std::size_t i = 0;
        while (i < n && digits[i] + 1 == h.size()) digits[i++] = 0;
        if (i == n) break;
        ++digits[i];
      }
    }
  }
}

TEST_CASE("distance table and connectivity") {
  const auto d = distance_table(cycle_graph(6));
  CHECK(d[0][3] == 3);
  CHECK(d[1][5] == 2);
  const Graph two = Graph::from_edges(2, {});
  CHECK_FALSE(is_connected(two));
  CHECK(distance_table(two)[0][1] == SIZE_MAX);
  CHECK(oracle::tree_canonical_form(path_graph(4)) == oracle::tree_canonical_form(graph_from_spec("tree:1-0;0-3;3-2")));
  CHECK(oracle::tree_canonical_form(path_graph(4)) != oracle::tree_canonical_form(star_graph(4)));
}
