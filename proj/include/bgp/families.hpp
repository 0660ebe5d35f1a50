#pragma once

#include <span>
#include <string>
#include <vector>

#include "bgp/graph.hpp"

namespace bgp {

// Canonical labelings:
//   path:n       0-1-...-(n-1)
//   cycle:n      path plus edge (n-1)-0
//   complete:n   all pairs
//   star:n       center 0, leaves 1..n-1
//   wheel:n      hub 0, rim 1..n-1 as a cycle in index order
//   hypercube:d  vertex id = binary coordinate vector, bit i = coordinate i
//   kpartite:p.. parts in the given order as contiguous id blocks

Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph star_graph(std::size_t n);
Graph wheel_graph(std::size_t n);
Graph hypercube_graph(std::size_t dimension);
Graph complete_multipartite(std::span<const std::size_t> parts);

/// Builds a tree from an explicit edge list; n is one more than the largest
/// id mentioned (or 1 for an empty list). Throws Error if the edges do not
/// form a tree.
Graph tree_from_edges(std::span<const Edge> edges);

enum class Family { path, cycle, complete, star, wheel, hypercube, kpartite, tree };

const char* to_string(Family family);

/// Dispatches to the generators above after validating `params`. For `tree`
/// the parameters are a flattened edge list u0,v0,u1,v1,...
Graph generate_family(Family family, std::span<const std::size_t> params);

enum class ProductKind { cartesian, strong, lexicographic };

const char* to_string(ProductKind kind);

/// Vertex (u, v) receives id u * |V(h)| + v.
Graph product(const Graph& g, const Graph& h, ProductKind kind);

}  // namespace bgp
