#include "bgp/scc.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace bgp {

SccResult strongly_connected_components(const Digraph& graph) {
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  const auto n = static_cast<std::uint32_t>(graph.size());
  SccResult out;
  out.component.assign(n, kUnset);
  std::vector<std::uint32_t> index(n, kUnset), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::uint32_t> stack;
  struct Frame {
    std::uint32_t node;
    std::size_t edge;
  };
  std::vector<Frame> call;
  std::uint32_t next_index = 0;

  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    call.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto& edges = graph[f.node];
      if (f.edge < edges.size()) {
        const std::uint32_t w = edges[f.edge++];
        if (index[w] == kUnset) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], index[w]);
        }
        continue;
      }
      const std::uint32_t v = f.node;
      call.pop_back();
      if (!call.empty()) low[call.back().node] = std::min(low[call.back().node], low[v]);
      if (low[v] != index[v]) continue;
      const std::uint32_t id = out.count++;
      std::size_t members = 0;
      for (;;) {
        const std::uint32_t w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        out.component[w] = id;
        ++members;
        if (w == v) break;
      }
      bool cyclic = members > 1;
      if (!cyclic) cyclic = std::find(edges.begin(), edges.end(), v) != edges.end();
      out.cyclic.push_back(cyclic ? 1 : 0);
    }
  }
  return out;
}

std::vector<std::uint32_t> cycle_through(const Digraph& graph, const SccResult& scc, std::uint32_t start) {
  const std::uint32_t comp = scc.component[start];
  if (!scc.cyclic[comp]) return {};
  constexpr auto kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> parent(graph.size(), kNone);
  std::queue<std::uint32_t> q;
  q.push(start);
  std::uint32_t last = kNone;
  while (!q.empty() && last == kNone) {
    const std::uint32_t v = q.front();
    q.pop();
    for (std::uint32_t w : graph[v]) {
      if (scc.component[w] != comp) continue;
      if (w == start) {
        last = v;
        break;
      }
      if (parent[w] == kNone) {
        parent[w] = v;
        q.push(w);
      }
    }
  }
  if (last == kNone) return {};
  std::vector<std::uint32_t> cycle{start};
  for (std::uint32_t v = last; v != start; v = parent[v]) cycle.push_back(v);
  cycle.push_back(start);
  std::reverse(cycle.begin() + 1, cycle.end() - 1);
  return cycle;
}

}  // namespace bgp
