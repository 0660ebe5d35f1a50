#include "bgp/families.hpp"

#include <algorithm>

namespace bgp {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(message);
}

}  // namespace

Graph path_graph(std::size_t n) {
  require(n >= 1, "path order must be >= 1");
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph::from_edges(n, edges);
}

Graph cycle_graph(std::size_t n) {
  require(n >= 3, "cycle order must be >= 3");
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  edges.emplace_back(0, static_cast<Vertex>(n - 1));
  return Graph::from_edges(n, edges);
}

Graph complete_graph(std::size_t n) {
  require(n >= 1, "complete graph order must be >= 1");
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

Graph star_graph(std::size_t n) {
  require(n >= 2, "star order must be >= 2");
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(0, v);
  return Graph::from_edges(n, edges);
}

Graph wheel_graph(std::size_t n) {
  require(n >= 4, "wheel order must be >= 4");
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(0, v);
  for (Vertex v = 1; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  edges.emplace_back(1, static_cast<Vertex>(n - 1));
  return Graph::from_edges(n, edges);
}

Graph hypercube_graph(std::size_t dimension) {
  require(dimension >= 1, "hypercube dimension must be >= 1");
  require(dimension <= 16, "hypercube dimension must be <= 16");
  const std::size_t n = std::size_t{1} << dimension;
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) {
    for (std::size_t bit = 0; bit < dimension; ++bit) {
      Vertex w = v ^ (Vertex{1} << bit);
      if (v < w) edges.emplace_back(v, w);
    }
  }
  return Graph::from_edges(n, edges);
}

Graph complete_multipartite(std::span<const std::size_t> parts) {
  require(!parts.empty(), "kpartite needs at least one part");
  std::vector<std::size_t> part_of;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    require(parts[p] >= 1, "kpartite parts must be >= 1");
    require(part_of.size() + parts[p] <= kMaxVertices, "kpartite graph too large");
    part_of.insert(part_of.end(), parts[p], p);
  }
  std::vector<Edge> edges;
  for (Vertex u = 0; u < part_of.size(); ++u)
    for (Vertex v = u + 1; v < part_of.size(); ++v)
      if (part_of[u] != part_of[v]) edges.emplace_back(u, v);
  return Graph::from_edges(part_of.size(), edges);
}

Graph tree_from_edges(std::span<const Edge> edges) {
  std::size_t n = 1;
  for (auto [u, v] : edges) n = std::max<std::size_t>(n, std::max(u, v) + std::size_t{1});
  Graph g = Graph::from_edges(n, edges);
  require(is_tree(g), "edge list does not form a tree");
  return g;
}

const char* to_string(Family family) {
  switch (family) {
    case Family::path: return "path";
    case Family::cycle: return "cycle";
    case Family::complete: return "complete";
    case Family::star: return "star";
    case Family::wheel: return "wheel";
    case Family::hypercube: return "hypercube";
    case Family::kpartite: return "kpartite";
    case Family::tree: return "tree";
  }
  return "?";
}

Graph generate_family(Family family, std::span<const std::size_t> params) {
  auto single = [&]() {
    require(params.size() == 1, std::string(to_string(family)) + " takes exactly one parameter");
    return params[0];
  };
  switch (family) {
    case Family::path: return path_graph(single());
    case Family::cycle: return cycle_graph(single());
    case Family::complete: return complete_graph(single());
    case Family::star: return star_graph(single());
    case Family::wheel: return wheel_graph(single());
    case Family::hypercube: return hypercube_graph(single());
    case Family::kpartite: return complete_multipartite(params);
    case Family::tree: {
      require(params.size() % 2 == 0, "tree parameters must be vertex pairs");
      std::vector<Edge> edges;
      for (std::size_t i = 0; i < params.size(); i += 2) {
        require(params[i] < kMaxVertices && params[i + 1] < kMaxVertices, "tree vertex id too large");
        edges.emplace_back(static_cast<Vertex>(params[i]), static_cast<Vertex>(params[i + 1]));
      }
      return tree_from_edges(edges);
    }
  }
  throw Error("unknown family");
}

const char* to_string(ProductKind kind) {
  switch (kind) {
    case ProductKind::cartesian: return "cart";
    case ProductKind::strong: return "strong";
    case ProductKind::lexicographic: return "lex";
  }
  return "?";
}

Graph product(const Graph& g, const Graph& h, ProductKind kind) {
  const std::size_t ng = g.order(), nh = h.order();
  if (ng != 0 && nh > kMaxVertices / ng) {
    throw ResourceLimitError("product vertex count", std::uint64_t{ng} * nh, kMaxVertices);
  }
  auto id = [nh](Vertex u, Vertex v) { return static_cast<Vertex>(u * nh + v); };
  std::vector<Edge> edges;
  auto add = [&](Vertex a, Vertex b) {
    if (a < b) edges.emplace_back(a, b);
  };
  for (Vertex u = 0; u < ng; ++u) {
    for (Vertex v = 0; v < nh; ++v) {
      const Vertex a = id(u, v);
      for (Vertex y : h.neighbors(v)) add(a, id(u, y));
      for (Vertex x : g.neighbors(u)) {
        switch (kind) {
          case ProductKind::cartesian:
            add(a, id(x, v));
            break;
          case ProductKind::strong:
            add(a, id(x, v));
            for (Vertex y : h.neighbors(v)) add(a, id(x, y));
            break;
          case ProductKind::lexicographic:
            for (Vertex y = 0; y < nh; ++y) add(a, id(x, y));
            break;
        }
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  return Graph::from_edges(ng * nh, edges);
}

}  // namespace bgp
