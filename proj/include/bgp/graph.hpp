#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bgp/common.hpp"

namespace bgp {

using Edge = std::pair<Vertex, Vertex>;

/// Immutable simple undirected graph on vertices 0..n-1.
///
/// Adjacency is held twice: as sorted neighbor lists for iteration and as
/// packed bit rows for O(1) adjacency tests. Self-loops and parallel edges are
/// rejected at construction.
class Graph {
 public:
  Graph() = default;

  /// Throws Error on self-loops, duplicate edges or out-of-range ids.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t order() const { return adjacency_.size(); }
  std::size_t size() const { return edge_count_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  std::size_t degree(Vertex v) const { return adjacency_[v].size(); }
  bool adjacent(Vertex u, Vertex v) const {
    return (rows_[u * words_ + (v >> 6)] >> (v & 63)) & 1u;
  }

  /// Edges with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  /// Canonical text "n:u-v,u-v,..." of the labeled graph; equal strings iff
  /// equal labeled graphs.
  std::string canonical_text() const;

  /// Hex digest of canonical_text(); stable across runs and platforms.
  std::string fingerprint() const;

  bool operator==(const Graph& other) const { return adjacency_ == other.adjacency_; }

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<std::uint64_t> rows_;
  std::size_t words_ = 0;
  std::size_t edge_count_ = 0;
};

struct DegreeProfile {
  std::vector<std::size_t> degrees;
  std::size_t max_degree = 0;
};

DegreeProfile degree_profile(const Graph& g);

/// Degree-one vertices in increasing order.
std::vector<Vertex> leaf_set(const Graph& g);

bool is_connected(const Graph& g);
bool is_tree(const Graph& g);

/// All-pairs hop distances; unreachable pairs hold SIZE_MAX.
std::vector<std::vector<std::size_t>> distance_table(const Graph& g);

/// Subgraph induced by `vertices`, relabeled 0..|vertices|-1 in the given order.
Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

/// A map r: V(G) -> H for a vertex subset H of G.
struct RetractionMap {
  const Graph* source = nullptr;
  std::vector<Vertex> target;  // H, any order
  std::vector<Vertex> map;     // map[v] = r(v)
};

/// True iff r fixes H pointwise and maps every edge of G to an edge of G[H]
/// or collapses it. Throws Error when the image leaves H or the map is not
/// total.
bool is_retraction(const RetractionMap& r);

}  // namespace bgp
