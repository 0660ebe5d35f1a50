#include "bgp/policies.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <queue>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "bgp/families.hpp"
#include "bgp/scc.hpp"

namespace bgp {

namespace {

using Distances = std::vector<std::vector<std::size_t>>;

bool within_closed(const Graph& g, Vertex from, Vertex to) { return from == to || g.adjacent(from, to); }

// Neighbor of `from` one step closer to `to`, smallest id; `from` if equal.
Vertex step_toward(const Graph& g, const Distances& dist, Vertex from, Vertex to) {
  if (from == to) return from;
  for (Vertex w : g.neighbors(from)) {
    if (dist[w][to] + 1 == dist[from][to]) return w;
  }
  return from;
}

Placement sorted_placement(std::span<const Vertex> tokens) {
  return Placement(std::vector<Vertex>(tokens.begin(), tokens.end()));
}

void require(bool ok, const std::string& message) {
  if (!ok) throw PolicyError(message);
}

class Universal final : public BodyguardPolicy {
 public:
  Universal(const Graph& g, std::size_t k) : g_(g), k_(k) {
    require(g.order() >= 1 && k == g.order() - 1, "universal policy needs k = n - 1");
  }
  std::string id() const override { return "universal"; }
  std::size_t tokens() const override { return k_; }
  std::vector<Vertex> initial() const override {
    std::vector<Vertex> out(k_);
    for (Vertex i = 0; i < k_; ++i) out[i] = i + 1;
    return out;
  }
  std::vector<Vertex> step(std::span<const Vertex> tokens, Vertex v) const override {
    std::vector<Vertex> out(tokens.begin(), tokens.end());
    if (surrounded(g_, sorted_placement(tokens).tokens(), v, SurroundMode::open)) return out;
    const std::size_t n = g_.order();
    std::vector<int> holder(n, -1);
    for (std::size_t i = tokens.size(); i-- > 0;) holder[tokens[i]] = static_cast<int>(i);
    // Nearest free vertex other than v, through occupied vertices.
    std::vector<Vertex> parent(n, std::numeric_limits<Vertex>::max());
    std::queue<Vertex> q;
    parent[v] = v;
    q.push(v);
    Vertex free = v;
    while (!q.empty() && free == v) {
      const Vertex x = q.front();
      q.pop();
      for (Vertex w : g_.neighbors(x)) {
        if (parent[w] != std::numeric_limits<Vertex>::max()) continue;
        parent[w] = x;
        if (holder[w] < 0) {
          free = w;
          break;
        }
        q.push(w);
      }
    }
    if (free == v) return out;
    for (Vertex x = free; x != v; x = parent[x]) {
      const Vertex from = parent[x];
      if (holder[from] >= 0) out[static_cast<std::size_t>(holder[from])] = x;
    }
    return out;
  }

 private:
  Graph g_;
  std::size_t k_;
};

class Multipartite final : public BodyguardPolicy {
 public:
  Multipartite(const Graph& g, std::size_t k) : g_(g), k_(k) {
    const std::size_t n = g.order();
    require(n >= 2, "multipartite policy needs at least two vertices");
    part_.resize(n);
    for (Vertex v = 0; v < n; ++v) {
      Vertex p = v;
      for (Vertex u = 0; u < v; ++u) {
        if (!g.adjacent(u, v)) {
          p = u;
          break;
        }
      }
      part_[v] = p;
    }
    std::vector<std::size_t> size(n, 0);
    for (Vertex v = 0; v < n; ++v) {
      ++size[part_[v]];
      for (Vertex u = 0; u < n; ++u) {
        if (u != v) require(g.adjacent(u, v) == (part_[u] != part_[v]), "graph is not complete multipartite");
      }
    }
    std::size_t smallest = n;
    Vertex smallest_part = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (part_[v] == v && size[v] < smallest) {
        smallest = size[v];
        smallest_part = v;
      }
    }
    require(smallest < n, "multipartite policy needs at least two parts");
    require(k == n - smallest, "multipartite policy needs k = n - (smallest part size) = " + std::to_string(n - smallest));
    for (Vertex v = 0; v < n; ++v) {
      if (part_[v] != smallest_part) initial_.push_back(v);
    }
  }
  std::string id() const override { return "multipartite"; }
  std::size_t tokens() const override { return k_; }
  std::vector<Vertex> initial() const override { return initial_; }
  std::vector<Vertex> step(std::span<const Vertex> tokens, Vertex v) const override {
    std::vector<Vertex> targets;
    for (Vertex u = 0; u < g_.order(); ++u) {
      if (part_[u] != part_[v]) targets.push_back(u);
    }
    // Kuhn matching of target vertices to tokens, trying a token already on
    // the target first.
    std::vector<int> owner(tokens.size(), -1);
    std::vector<char> visited(tokens.size());
    auto augment = [&](auto&& self, Vertex s) -> bool {
      auto try_token = [&](std::size_t i) {
        if (visited[i] || !within_closed(g_, tokens[i], s)) return false;
        visited[i] = 1;
        if (owner[i] < 0 || self(self, static_cast<Vertex>(owner[i]))) {
          owner[i] = static_cast<int>(s);
          return true;
        }
        return false;
      };
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i] == s && try_token(i)) return true;
      }
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i] != s && try_token(i)) return true;
      }
      return false;
    };
    for (Vertex s : targets) {
      std::fill(visited.begin(), visited.end(), 0);
      augment(augment, s);
    }
    std::vector<Vertex> out(tokens.begin(), tokens.end());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (owner[i] >= 0) out[i] = static_cast<Vertex>(owner[i]);
    }
    return out;
  }

 private:
  Graph g_;
  std::size_t k_;
  std::vector<Vertex> part_;
  std::vector<Vertex> initial_;
};

class TreeBodyguards final : public BodyguardPolicy {
 public:
  TreeBodyguards(const Graph& g, std::size_t k) : g_(g), dist_(distance_table(g)), leaves_(leaf_set(g)) {
    require(is_tree(g), "tree policy needs a tree");
    require(leaves_.size() >= 2, "tree policy needs at least two leaves");
    require(k == leaves_.size(), "tree policy needs k = number of leaves = " + std::to_string(leaves_.size()));
  }
  std::string id() const override { return "tree"; }
  std::size_t tokens() const override { return leaves_.size(); }
  std::vector<Vertex> initial() const override { return leaves_; }
  std::vector<Vertex> step(std::span<const Vertex> tokens, Vertex v) const override {
    std::vector<Vertex> out(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      const Vertex leaf = leaves_[i];
      const Vertex target = leaf == v ? tokens[i] : step_toward(g_, dist_, v, leaf);
      out[i] = step_toward(g_, dist_, tokens[i], target);
    }
    return out;
  }

 private:
  Graph g_;
  Distances dist_;
  std::vector<Vertex> leaves_;
};

class CycleBodyguards final : public BodyguardPolicy {
 public:
  CycleBodyguards(const Graph& g, std::size_t k) : g_(g), k_(k) {
    require(g.order() >= 3 && g == cycle_graph(g.order()), "cycle policy needs a cycle in canonical labeling");
    require(k >= 1, "cycle policy needs at least one token");
  }
  std::string id() const override { return "cycle"; }
  std::size_t tokens() const override { return k_; }
  std::vector<Vertex> initial() const override {
    const std::size_t n = g_.order();
    std::vector<Vertex> out(k_);
    if (n <= 5) {
      for (std::size_t i = 0; i < k_; ++i) out[i] = static_cast<Vertex>((2 * i) % n);
    } else {
      for (std::size_t i = 0; i < k_; ++i) out[i] = static_cast<Vertex>(i * n / k_);
    }
    return out;
  }
  std::vector<Vertex> step(std::span<const Vertex> tokens, Vertex v) const override {
    return g_.order() <= 5 ? step_small(tokens, v) : step_large(tokens, v);
  }

 private:
  Vertex at(Vertex v, long delta) const {
    const long n = static_cast<long>(g_.order());
    return static_cast<Vertex>(((static_cast<long>(v) + delta) % n + n) % n);
  }

  std::vector<Vertex> step_small(std::span<const Vertex> tokens, Vertex v) const {
    std::vector<Vertex> out(tokens.begin(), tokens.end());
    const Vertex right = at(v, 1), left = at(v, -1);
    // Prefer tokens already in place, then any token that can reach.
    auto pick = [&](Vertex target, std::size_t skip) -> std::size_t {
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i != skip && tokens[i] == target) return i;
      }
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i != skip && within_closed(g_, tokens[i], target)) return i;
      }
      return SIZE_MAX;
    };
    for (int order = 0; order < 2; ++order) {
      const Vertex a = order == 0 ? right : left, b = order == 0 ? left : right;
      const std::size_t i = pick(a, SIZE_MAX);
      if (i == SIZE_MAX) continue;
      const std::size_t j = pick(b, i);
      if (j == SIZE_MAX) continue;
      out[i] = a;
      out[j] = b;
      return out;
    }
    return out;
  }

  std::vector<Vertex> step_large(std::span<const Vertex> tokens, Vertex v) const {
    const std::size_t n = g_.order();
    std::vector<std::size_t> offset(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) offset[i] = (tokens[i] + n - v) % n;
    std::vector<int> role(tokens.size(), 0);  // 1 right escort, -1 left escort
    auto choose = [&](std::initializer_list<std::size_t> wanted) -> bool {
      for (std::size_t d : wanted) {
        for (std::size_t i = 0; i < tokens.size(); ++i) {
          if (role[i] == 0 && offset[i] == d) return role[i] = 2, true;
        }
      }
      return false;
    };
    auto take = [&](int r) {
      for (auto& x : role) {
        if (x == 2) x = r;
      }
    };
    bool right = choose({1, 2});
    take(1);
    bool left = choose({n - 1, n - 2});
    take(-1);
    if (!right && choose({0})) right = true, take(1);
    if (!left && choose({0})) left = true, take(-1);

    std::vector<Vertex> out(tokens.begin(), tokens.end());
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (role[i] == 1) out[i] = at(v, 1);
      if (role[i] == -1) out[i] = at(v, -1);
      if (role[i] == 0) rest.push_back(i);
    }
    if ((right && left) || rest.empty()) return out;
    // Close in on the president from both sides: the token with the smallest
    // clockwise offset walks counterclockwise, the largest walks clockwise.
    std::stable_sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) { return offset[a] < offset[b]; });
    if (rest.size() == 1) {
      out[rest[0]] = at(tokens[rest[0]], right ? 1 : -1);
      return out;
    }
    for (std::size_t r = 0; r + 1 < rest.size(); ++r) out[rest[r]] = at(tokens[rest[r]], -1);
    out[rest.back()] = at(tokens[rest.back()], 1);
    return out;
  }

  Graph g_;
  std::size_t k_;
};

class StrongGrid final : public BodyguardPolicy {
 public:
  StrongGrid(const Graph& g, std::span<const std::size_t> dims, std::size_t k) : g_(g), dims_(dims.begin(), dims.end()) {
    require(!dims_.empty(), "strong-grid policy needs at least one dimension");
    for (std::size_t d : dims_) require(d >= 3, "strong-grid policy needs every path order >= 3");
    Graph expected = path_graph(dims_[0]);
    for (std::size_t i = 1; i < dims_.size(); ++i) expected = product(expected, path_graph(dims_[i]), ProductKind::strong);
    require(g == expected, "graph is not the strong product of the given paths");
    std::size_t count = 1;
    for (std::size_t i = 0; i < dims_.size(); ++i) count *= 3;
    require(k == count - 1, "strong-grid policy needs k = 3^d - 1 = " + std::to_string(count - 1));
    for (std::size_t code = 0; code < count; ++code) {
      std::vector<int> a(dims_.size());
      std::size_t c = code;
      for (std::size_t i = dims_.size(); i-- > 0;) {
        a[i] = static_cast<int>(c % 3) - 1;
        c /= 3;
      }
      if (std::any_of(a.begin(), a.end(), [](int x) { return x != 0; })) offsets_.push_back(a);
    }
  }
  std::string id() const override { return "strong-grid"; }
  std::size_t tokens() const override { return offsets_.size(); }
  std::vector<Vertex> initial() const override {
    std::vector<long> center(dims_.size());
    for (std::size_t i = 0; i < dims_.size(); ++i) center[i] = static_cast<long>(dims_[i] / 2);
    std::vector<Vertex> out;
    for (const auto& a : offsets_) out.push_back(target(center, a));
    return out;
  }
  std::vector<Vertex> step(std::span<const Vertex> tokens, Vertex v) const override {
    const auto pv = coords(v);
    std::vector<Vertex> out(tokens.size());
    for (std::size_t j = 0; j < tokens.size(); ++j) {
      const auto goal = coords(target(pv, offsets_[j]));
      auto pos = coords(tokens[j]);
      for (std::size_t i = 0; i < pos.size(); ++i) pos[i] += (goal[i] > pos[i]) - (goal[i] < pos[i]);
      out[j] = encode(pos);
    }
    return out;
  }

 private:
  std::vector<long> coords(Vertex v) const {
    std::vector<long> c(dims_.size());
    for (std::size_t i = dims_.size(); i-- > 0;) {
      c[i] = static_cast<long>(v % dims_[i]);
      v /= static_cast<Vertex>(dims_[i]);
    }
    return c;
  }
  Vertex encode(const std::vector<long>& c) const {
    std::size_t id = 0;
    for (std::size_t i = 0; i < dims_.size(); ++i) id = id * dims_[i] + static_cast<std::size_t>(c[i]);
    return static_cast<Vertex>(id);
  }
  Vertex target(const std::vector<long>& p, const std::vector<int>& a) const {
    std::vector<long> c(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) c[i] = std::clamp<long>(p[i] + a[i], 0, static_cast<long>(dims_[i]) - 1);
    return encode(c);
  }

  Graph g_;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<int>> offsets_;
};

class EvaderCycle final : public PresidentPolicy {
 public:
  EvaderCycle(const Graph& g, std::size_t k) : g_(g), dist_(distance_table(g)) {
    require(g.order() >= 6 && g == cycle_graph(g.order()), "cycle evader needs C_n with n >= 6 in canonical labeling");
    require(k == 2, "cycle evader plays against exactly 2 tokens");
  }
  std::string id() const override { return "evader-cycle"; }
  Vertex place(const Placement& placement) const override {
    Vertex best = 0;
    std::size_t best_d = 0;
    for (Vertex v = 0; v < g_.order(); ++v) {
      const std::size_t d = farthest(placement, v);
      if (d > best_d) best = v, best_d = d;
    }
    return best;
  }
  Vertex step(const Placement& placement, Vertex v) const override {
    if (farthest(placement, v) >= 3) return v;
    // Some token sits at distance 2: step away from it.
    for (Vertex t : placement.tokens()) {
      if (dist_[v][t] != 2) continue;
      for (Vertex w : g_.neighbors(v)) {
        if (dist_[w][t] == 3) return w;
      }
    }
    return v;
  }

 private:
  std::size_t farthest(const Placement& placement, Vertex v) const {
    std::size_t d = 0;
    for (Vertex t : placement.tokens()) d = std::max(d, dist_[v][t]);
    return d;
  }

  Graph g_;
  Distances dist_;
};

class EvaderTree final : public PresidentPolicy {
 public:
  EvaderTree(const Graph& g, std::size_t k) : g_(g), dist_(distance_table(g)) {
    require(is_tree(g), "tree evader needs a tree");
    const auto leaves = leaf_set(g);
    require(leaves.size() >= 2, "tree evader needs at least two leaves");
    require(k + 1 == leaves.size(), "tree evader plays against l - 1 = " + std::to_string(leaves.size() - 1) + " tokens");
    // Center: minimum eccentricity, smallest id.
    std::size_t best = SIZE_MAX;
    for (Vertex v = 0; v < g.order(); ++v) {
      const std::size_t ecc = *std::max_element(dist_[v].begin(), dist_[v].end());
      if (ecc < best) best = ecc, center_ = v;
    }
  }
  std::string id() const override { return "evader-tree"; }
  Vertex place(const Placement&) const override { return center_; }
  Vertex step(const Placement& placement, Vertex v) const override {
    if (!surrounded(g_, placement.tokens(), v, SurroundMode::open)) return step_toward(g_, dist_, v, center_);
    // Branch of T - v through w: vertices closer to w than to v.
    Vertex best = v;
    long best_score = std::numeric_limits<long>::min();
    bool best_away = false;
    for (Vertex w : g_.neighbors(v)) {
      long leaves = 0, guards = 0;
      for (Vertex x = 0; x < g_.order(); ++x) {
        if (dist_[w][x] < dist_[v][x] && g_.degree(x) == 1) ++leaves;
      }
      for (Vertex t : placement.tokens()) {
        if (dist_[w][t] < dist_[v][t]) ++guards;
      }
      const long score = leaves - guards;
      const bool away = !(dist_[w][center_] < dist_[v][center_]);
      if (score > best_score || (score == best_score && away && !best_away)) {
        best = w, best_score = score, best_away = away;
      }
    }
    return best;
  }

 private:
  Graph g_;
  Distances dist_;
  Vertex center_ = 0;
};

class EvaderHypercube final : public PresidentPolicy {
 public:
  EvaderHypercube(const Graph& g, std::size_t k) {
    std::size_t d = 0;
    while ((std::size_t{1} << d) < g.order()) ++d;
    require(d >= 3 && d <= 16 && g == hypercube_graph(d), "hypercube evader needs Q_d with d >= 3");
    require(k == d, "hypercube evader plays against d = " + std::to_string(d) + " tokens");
    d_ = d;
  }
  std::string id() const override { return "evader-hypercube"; }
  Vertex place(const Placement& placement) const override {
    const Vertex first = placement.size() ? placement.tokens()[0] : 0;
    return first ^ static_cast<Vertex>((1u << d_) - 1);
  }
  Vertex step(const Placement& placement, Vertex v) const override {
    for (Vertex t : placement.tokens()) {
      const Vertex diff = t ^ v;
      if (std::popcount(diff) != 2) continue;
      for (std::size_t c = 0; c < d_; ++c) {
        if (!(diff >> c & 1u)) return v ^ (1u << c);
      }
    }
    return v;
  }

 private:
  std::size_t d_ = 0;
};

Vertex max_degree_vertex(const Graph& g) {
  Vertex best = 0;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (g.degree(v) > g.degree(best)) best = v;
  }
  return best;
}

class Stay final : public PresidentPolicy {
 public:
  explicit Stay(const Graph& g) : park_(max_degree_vertex(g)) {
    require(g.order() >= 1, "president needs a vertex");
  }
  std::string id() const override { return "stay"; }
  Vertex place(const Placement&) const override { return park_; }
  Vertex step(const Placement&, Vertex v) const override { return v; }

 private:
  Vertex park_;
};

class GreedyEscape final : public PresidentPolicy {
 public:
  explicit GreedyEscape(const Graph& g) : g_(g) { require(g.order() >= 1, "president needs a vertex"); }
  std::string id() const override { return "greedy-escape"; }
  Vertex place(const Placement& placement) const override {
    Vertex best = 0;
    for (Vertex v = 1; v < g_.order(); ++v) {
      if (open(placement, v) > open(placement, best)) best = v;
    }
    return best;
  }
  Vertex step(const Placement& placement, Vertex v) const override {
    Vertex best = v;
    std::size_t best_open = 0;
    bool first = true;
    for (Vertex u : president_moves(g_, v)) {
      const std::size_t o = open(placement, u);
      if (first || o > best_open) best = u, best_open = o, first = false;
    }
    return best;
  }

 private:
  std::size_t open(const Placement& placement, Vertex v) const {
    std::size_t count = 0;
    for (Vertex u : g_.neighbors(v)) {
      count += !std::binary_search(placement.tokens().begin(), placement.tokens().end(), u);
    }
    return count;
  }

  Graph g_;
};

class BestResponse final : public PresidentPolicy {
 public:
  explicit BestResponse(const WinRegion& region) : region_(region) {}
  std::string id() const override { return "best-response"; }
  Vertex place(const Placement& placement) const override {
    const Arena& arena = *region_.arena;
    const PlacementRank p = arena.rank(placement.tokens());
    Vertex best = 0;
    std::uint32_t best_rank = 0;
    for (Vertex v = 0; v < arena.vertices(); ++v) {
      const StateId s = arena.state_id(p, v, Turn::bodyguards);
      if (!region_.contains(s)) return v;
      if (v == 0 || region_.rank[s] > best_rank) best = v, best_rank = region_.rank[s];
    }
    return best;
  }
  Vertex step(const Placement& placement, Vertex v) const override {
    const Arena& arena = *region_.arena;
    return best_response_president(region_, arena.state_id(arena.rank(placement.tokens()), v, Turn::president));
  }

 private:
  const WinRegion& region_;
};

std::string labeled_key(std::span<const Vertex> tokens, Vertex v, Turn t) {
  std::string key;
  key.reserve(4 * tokens.size() + 5);
  auto put = [&](Vertex x) { key.append(reinterpret_cast<const char*>(&x), sizeof x); };
  for (Vertex x : tokens) put(x);
  put(v);
  key.push_back(static_cast<char>(t));
  return key;
}

void check_placement(const Graph& g, std::span<const Vertex> tokens, std::size_t k, std::size_t step) {
  if (tokens.size() != k) throw IllegalMoveError("policy returned " + std::to_string(tokens.size()) + " tokens, expected " + std::to_string(k), step);
  for (Vertex t : tokens) {
    if (t >= g.order()) throw IllegalMoveError("token position " + std::to_string(t) + " out of range", step);
  }
}

void check_move(const Graph& g, std::span<const Vertex> from, std::span<const Vertex> to, std::size_t step) {
  check_placement(g, to, from.size(), step);
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (!within_closed(g, from[i], to[i])) {
      throw IllegalMoveError("token " + std::to_string(i) + " jumps from " + std::to_string(from[i]) + " to " +
                                 std::to_string(to[i]),
                             step);
    }
  }
}

void check_president(const Graph& g, Vertex from, Vertex to, std::size_t step) {
  if (to >= g.order() || !within_closed(g, from, to)) {
    throw IllegalMoveError("president jumps from " + std::to_string(from) + " to " + std::to_string(to), step);
  }
}

}  // namespace

std::unique_ptr<BodyguardPolicy> policy_universal(const Graph& g, std::size_t k) {
  return std::make_unique<Universal>(g, k);
}
std::unique_ptr<BodyguardPolicy> policy_multipartite(const Graph& g, std::size_t k) {
  return std::make_unique<Multipartite>(g, k);
}
std::unique_ptr<BodyguardPolicy> policy_tree_bodyguards(const Graph& g, std::size_t k) {
  return std::make_unique<TreeBodyguards>(g, k);
}
std::unique_ptr<BodyguardPolicy> policy_cycle_bodyguards(const Graph& g, std::size_t k) {
  return std::make_unique<CycleBodyguards>(g, k);
}
std::unique_ptr<BodyguardPolicy> policy_strong_grid(const Graph& g, std::span<const std::size_t> dims, std::size_t k) {
  return std::make_unique<StrongGrid>(g, dims, k);
}
std::unique_ptr<PresidentPolicy> evader_cycle(const Graph& g, std::size_t k) { return std::make_unique<EvaderCycle>(g, k); }
std::unique_ptr<PresidentPolicy> evader_tree(const Graph& g, std::size_t k) { return std::make_unique<EvaderTree>(g, k); }
std::unique_ptr<PresidentPolicy> evader_hypercube(const Graph& g, std::size_t k) {
  return std::make_unique<EvaderHypercube>(g, k);
}
std::unique_ptr<PresidentPolicy> president_stay(const Graph& g) { return std::make_unique<Stay>(g); }
std::unique_ptr<PresidentPolicy> president_greedy_escape(const Graph& g) { return std::make_unique<GreedyEscape>(g); }
std::unique_ptr<PresidentPolicy> president_best_response(const WinRegion& region) {
  return std::make_unique<BestResponse>(region);
}

PolicyVerdict verify_policy(const Graph& g, const BodyguardPolicy& policy, SurroundMode mode, std::uint64_t state_limit) {
  const std::size_t n = g.order();
  const std::size_t k = policy.tokens();
  PolicyVerdict verdict;
  if (n == 0) {
    verdict.holds = true;
    return verdict;
  }
  struct Node {
    std::vector<Vertex> tokens;
    Vertex president;
    Turn turn;
  };
  std::vector<Node> nodes;
  std::unordered_map<std::string, std::uint32_t> index;
  Digraph edges;
  auto node_of = [&](std::vector<Vertex> tokens, Vertex v, Turn t) {
    auto [it, inserted] = index.emplace(labeled_key(tokens, v, t), static_cast<std::uint32_t>(nodes.size()));
    if (inserted) {
      if (nodes.size() >= state_limit) throw ResourceLimitError("policy verification states", nodes.size() + 1, state_limit);
      nodes.push_back({std::move(tokens), v, t});
      edges.emplace_back();
    }
    return std::pair{it->second, inserted};
  };

  const std::vector<Vertex> start = policy.initial();
  check_placement(g, start, k, 0);
  std::vector<std::uint32_t> stack;
  for (Vertex v = 0; v < n; ++v) stack.push_back(node_of(start, v, Turn::bodyguards).first);
  while (!stack.empty()) {
    const std::uint32_t i = stack.back();
    stack.pop_back();
    const Vertex v = nodes[i].president;
    if (nodes[i].turn == Turn::bodyguards) {
      std::vector<Vertex> next = policy.step(nodes[i].tokens, v);
      check_move(g, nodes[i].tokens, next, 0);
      auto [j, fresh] = node_of(std::move(next), v, Turn::president);
      edges[i].push_back(j);
      if (fresh) stack.push_back(j);
    } else {
      for (Vertex u : president_moves(g, v)) {
        auto [j, fresh] = node_of(nodes[i].tokens, u, Turn::bodyguards);
        edges[i].push_back(j);
        if (fresh) stack.push_back(j);
      }
    }
  }
  verdict.states = nodes.size();
  auto as_state = [&](const Node& node) { return GameState{sorted_placement(node.tokens), node.president, node.turn}; };

  const SccResult scc = strongly_connected_components(edges);
  verdict.holds = true;
  for (std::uint32_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].turn != Turn::president || !scc.cyclic[scc.component[i]]) continue;
    if (surrounded(g, sorted_placement(nodes[i].tokens).tokens(), nodes[i].president, mode)) continue;
    verdict.holds = false;
    for (std::uint32_t j : cycle_through(edges, scc, i)) verdict.witness.push_back(as_state(nodes[j]));
    break;
  }
  for (const Node& node : nodes) {
    if (node.turn == Turn::bodyguards) verdict.bodyguard_states.push_back(as_state(node));
  }
  std::sort(verdict.bodyguard_states.begin(), verdict.bodyguard_states.end(),
            [](const GameState& a, const GameState& b) { return a.key() < b.key(); });
  verdict.bodyguard_states.erase(std::unique(verdict.bodyguard_states.begin(), verdict.bodyguard_states.end()),
                                 verdict.bodyguard_states.end());
  return verdict;
}

PolicyVerdict verify_policy(const Graph& g, std::size_t k, const PresidentPolicy& policy, SurroundMode mode,
                            std::uint64_t state_limit) {
  PolicyVerdict verdict;
  const std::size_t n = g.order();
  if (n == 0) return verdict;
  const Arena arena(g, k, state_limit);
  arena.materialize();
  const StateSet safe = arena.safe_states(mode);

  // Reachable states, with unsurrounded president-to-move states left out of
  // the graph: a cycle that survives the removal is a play the bodyguards win.
  constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  std::unordered_map<StateId, std::uint32_t> local;
  std::vector<StateId> ids;
  Digraph edges;
  std::vector<StateId> stack;
  StateSet seen(arena.state_count(), 0);
  auto visit = [&](StateId s) {
    if (!seen[s]) {
      seen[s] = 1;
      stack.push_back(s);
    }
  };
  auto local_of = [&](StateId s) -> std::uint32_t {
    if (!safe[s]) return kNone;
    auto [it, inserted] = local.emplace(s, static_cast<std::uint32_t>(ids.size()));
    if (inserted) {
      ids.push_back(s);
      edges.emplace_back();
    }
    return it->second;
  };
  for (PlacementRank p = 0; p < arena.placement_count(); ++p) {
    const Placement placement(arena.unrank(p));
    const Vertex v = policy.place(placement);
    if (v >= n) throw IllegalMoveError("president placed outside the graph", 0);
    visit(arena.state_id(p, v, Turn::bodyguards));
  }
  while (!stack.empty()) {
    const StateId s = stack.back();
    stack.pop_back();
    ++verdict.states;
    const PlacementRank p = arena.placement_of(s);
    const Vertex v = arena.president_of(s);
    const std::uint32_t from = local_of(s);
    auto link = [&](StateId t) {
      const std::uint32_t to = local_of(t);
      if (from != kNone && to != kNone) edges[from].push_back(to);
      visit(t);
    };
    if (Arena::turn_of(s) == Turn::bodyguards) {
      for (PlacementRank q : arena.table().row(p)) link(arena.state_id(q, v, Turn::president));
    } else {
      const Vertex u = policy.step(Placement(arena.unrank(p)), v);
      check_president(g, v, u, 0);
      link(arena.state_id(p, u, Turn::bodyguards));
    }
  }
  const SccResult scc = strongly_connected_components(edges);
  verdict.holds = true;
  for (std::uint32_t i = 0; i < ids.size(); ++i) {
    if (!scc.cyclic[scc.component[i]]) continue;
    verdict.holds = false;
    for (std::uint32_t j : cycle_through(edges, scc, i)) verdict.witness.push_back(arena.state(ids[j]));
    break;
  }
  return verdict;
}

std::string Playout::transcript() const {
  std::string out;
  std::size_t turn = 0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    nlohmann::ordered_json line;
    line["step"] = i;
    line["state"] = states[i].key();
    if (states[i].turn == Turn::president && turn < surrounded.size()) line["surrounded"] = static_cast<bool>(surrounded[turn++]);
    out += line.dump() + "\n";
  }
  return out;
}

Playout playout(const Graph& g, const BodyguardPolicy& bodyguards, const PresidentPolicy& president,
                std::size_t max_steps, SurroundMode mode, bool stop_on_repeat) {
  Playout play;
  const std::size_t k = bodyguards.tokens();
  std::vector<Vertex> tokens = bodyguards.initial();
  check_placement(g, tokens, k, 0);
  if (g.order() == 0) return play;
  Vertex v = president.place(sorted_placement(tokens));
  if (v >= g.order()) throw IllegalMoveError("president placed outside the graph", 0);
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t step = 0;; ++step) {
    play.states.push_back({sorted_placement(tokens), v, Turn::bodyguards});
    if (stop_on_repeat) {
      const auto [it, fresh] = seen.emplace(labeled_key(tokens, v, Turn::bodyguards), play.states.size() - 1);
      if (!fresh) {
        play.end = Playout::End::lasso;
        play.lasso_start = it->second;
        return play;
      }
    }
    if (step == max_steps) return play;
    std::vector<Vertex> next = bodyguards.step(tokens, v);
    check_move(g, tokens, next, step);
    tokens = std::move(next);
    const Placement placed = sorted_placement(tokens);
    play.surrounded.push_back(surrounded(g, placed.tokens(), v, mode));
    play.states.push_back({placed, v, Turn::president});
    const Vertex u = president.step(placed, v);
    check_president(g, v, u, step);
    v = u;
  }
}

}  // namespace bgp
