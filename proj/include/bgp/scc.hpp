#pragma once

#include <cstdint>
#include <vector>

namespace bgp {

/// Directed graph in adjacency-list form over nodes 0..n-1.
using Digraph = std::vector<std::vector<std::uint32_t>>;

struct SccResult {
  std::vector<std::uint32_t> component;  // component id per node
  std::uint32_t count = 0;
  /// True for components that contain a cycle (size > 1 or a self-loop).
  std::vector<char> cyclic;
};

/// Iterative Tarjan.
SccResult strongly_connected_components(const Digraph& graph);

/// A cycle through `start` that stays inside start's component, as a node
/// list beginning and ending with `start`; empty if there is none.
std::vector<std::uint32_t> cycle_through(const Digraph& graph, const SccResult& scc, std::uint32_t start);

}  // namespace bgp
