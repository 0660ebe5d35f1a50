#include "bgp/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <queue>

namespace bgp {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  if (n > kMaxVertices) throw ResourceLimitError("vertex count", n, kMaxVertices);
  Graph g;
  g.adjacency_.assign(n, {});
  g.words_ = (n + 63) / 64;
  g.rows_.assign(n * g.words_, 0);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) {
      throw Error("edge " + std::to_string(u) + "-" + std::to_string(v) + " out of range for n=" +
                  std::to_string(n));
    }
    if (u == v) throw Error("self-loop at vertex " + std::to_string(u));
    if (g.adjacent(u, v)) {
      throw Error("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
    }
    g.rows_[u * g.words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
    g.rows_[v * g.words_ + (u >> 6)] |= std::uint64_t{1} << (u & 63);
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
    ++g.edge_count_;
  }
  for (auto& list : g.adjacency_) std::sort(list.begin(), list.end());
  return g;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < order(); ++u) {
    for (Vertex v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::string Graph::canonical_text() const {
  std::string text = std::to_string(order()) + ":";
  bool first = true;
  for (auto [u, v] : edges()) {
    if (!first) text += ',';
    first = false;
    text += std::to_string(u) + "-" + std::to_string(v);
  }
  return text;
}

std::string Graph::fingerprint() const {
  // FNV-1a, 64 bit.
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : canonical_text()) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

DegreeProfile degree_profile(const Graph& g) {
  DegreeProfile p;
  p.degrees.resize(g.order());
  for (Vertex v = 0; v < g.order(); ++v) {
    p.degrees[v] = g.degree(v);
    p.max_degree = std::max(p.max_degree, p.degrees[v]);
  }
  return p;
}

std::vector<Vertex> leaf_set(const Graph& g) {
  std::vector<Vertex> leaves;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (g.degree(v) == 1) leaves.push_back(v);
  }
  return leaves;
}

bool is_connected(const Graph& g) {
  if (g.order() == 0) return true;
  std::vector<char> seen(g.order(), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == g.order();
}

bool is_tree(const Graph& g) {
  return g.order() >= 1 && g.size() + 1 == g.order() && is_connected(g);
}

std::vector<std::vector<std::size_t>> distance_table(const Graph& g) {
  constexpr auto kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::vector<std::size_t>> dist(g.order(), std::vector<std::size_t>(g.order(), kInf));
  for (Vertex s = 0; s < g.order(); ++s) {
    auto& row = dist[s];
    std::queue<Vertex> q;
    row[s] = 0;
    q.push(s);
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      for (Vertex w : g.neighbors(v)) {
        if (row[w] == kInf) {
          row[w] = row[v] + 1;
          q.push(w);
        }
      }
    }
  }
  return dist;
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (g.adjacent(vertices[i], vertices[j])) {
        edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
      }
    }
  }
  return Graph::from_edges(vertices.size(), edges);
}

bool is_retraction(const RetractionMap& r) {
  if (r.source == nullptr) throw Error("retraction map has no source graph");
  const Graph& g = *r.source;
  if (r.map.size() != g.order()) throw Error("retraction map is not total on V(G)");
  std::vector<char> in_target(g.order(), 0);
  for (Vertex h : r.target) {
    if (h >= g.order()) throw Error("target vertex out of range");
    in_target[h] = 1;
  }
  for (Vertex v = 0; v < g.order(); ++v) {
    if (r.map[v] >= g.order() || !in_target[r.map[v]]) {
      throw Error("image of vertex " + std::to_string(v) + " is not in H");
    }
  }
  for (Vertex h : r.target) {
    if (r.map[h] != h) return false;
  }
  for (auto [u, v] : g.edges()) {
    Vertex a = r.map[u], b = r.map[v];
    if (a != b && !g.adjacent(a, b)) return false;
  }
  return true;
}

}  // namespace bgp
