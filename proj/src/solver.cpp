#include "bgp/solver.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <unordered_map>

#include "bgp/graph_io.hpp"
#include "bgp/scc.hpp"

namespace bgp {

namespace {

// Backward propagation of the bodyguard attractor. Counters for
// president-to-move states persist across seed batches, so repeated calls to
// seed()+run() grow one monotone set at total cost linear in the transitions.
class BodyguardAttractor {
 public:
  BodyguardAttractor(const Arena& arena, StateSet& in, std::vector<std::uint32_t>* rank)
      : arena_(arena), in_(in), rank_(rank), pending_(arena.state_count(), 0) {
    const std::size_t n = arena.vertices();
    for (StateId s = 1; s < arena.state_count(); s += 2) {
      pending_[s] = static_cast<std::uint32_t>(arena.closed_neighborhood(static_cast<Vertex>((s >> 1) % n)).size());
    }
  }

  std::uint32_t clock() const { return clock_; }

  void seed(StateId s) { join(s); }

  void run() {
    const std::size_t n = arena_.vertices();
    const auto& table = arena_.table();
    while (head_ < queue_.size()) {
      const StateId s = queue_[head_++];
      const PlacementRank p = arena_.placement_of(s);
      const Vertex v = static_cast<Vertex>((s >> 1) % n);
      if (Arena::turn_of(s) == Turn::bodyguards) {
        for (Vertex u : arena_.closed_neighborhood(v)) {
          const StateId t = arena_.state_id(p, u, Turn::president);
          if (!in_[t] && --pending_[t] == 0) join(t);
        }
      } else {
        for (PlacementRank q : table.row(p)) join(arena_.state_id(q, v, Turn::bodyguards));
      }
    }
    queue_.clear();
    head_ = 0;
  }

 private:
  void join(StateId s) {
    if (in_[s]) return;
    in_[s] = 1;
    if (rank_) (*rank_)[s] = clock_;
    ++clock_;
    queue_.push_back(s);
  }

  const Arena& arena_;
  StateSet& in_;
  std::vector<std::uint32_t>* rank_;
  std::vector<std::uint32_t> pending_;
  std::vector<StateId> queue_;
  std::size_t head_ = 0;
  std::uint32_t clock_ = 0;
};

// President attractor of `target` inside the subgame `within`, which must be
// closed under bodyguard moves (no bodyguard-to-move state in it has a
// successor outside).
StateSet president_attractor_within(const Arena& arena, const StateSet& target, const StateSet* within) {
  const std::uint64_t states = arena.state_count();
  const std::size_t n = arena.vertices();
  const auto& table = arena.table();
  StateSet in(states, 0);
  std::vector<std::uint32_t> pending(states, 0);
  for (StateId s = 0; s < states; s += 2) {
    pending[s] = static_cast<std::uint32_t>(table.row(arena.placement_of(s)).size());
  }
  std::vector<StateId> queue;
  auto inside = [&](StateId s) { return within == nullptr || (*within)[s]; };
  for (StateId s = 0; s < states; ++s) {
    if (target[s] && inside(s)) {
      in[s] = 1;
      queue.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const StateId s = queue[head];
    const PlacementRank p = arena.placement_of(s);
    const Vertex v = static_cast<Vertex>((s >> 1) % n);
    if (Arena::turn_of(s) == Turn::bodyguards) {
      for (Vertex u : arena.closed_neighborhood(v)) {
        const StateId t = arena.state_id(p, u, Turn::president);
        if (!in[t] && inside(t)) {
          in[t] = 1;
          queue.push_back(t);
        }
      }
    } else {
      for (PlacementRank q : table.row(p)) {
        const StateId t = arena.state_id(q, v, Turn::bodyguards);
        if (!in[t] && inside(t) && --pending[t] == 0) {
          in[t] = 1;
          queue.push_back(t);
        }
      }
    }
  }
  return in;
}

Decision pruned_loss(const Graph& g, std::size_t k) {
  Decision d;
  d.k = k;
  d.pruned = true;
  const auto profile = degree_profile(g);
  const auto it = std::find(profile.degrees.begin(), profile.degrees.end(), profile.max_degree);
  d.park_vertex = static_cast<Vertex>(it - profile.degrees.begin());
  return d;
}

}  // namespace

std::uint64_t WinRegion::size() const {
  return static_cast<std::uint64_t>(std::count(member.begin(), member.end(), std::uint8_t{1}));
}

StateSet safe_set(const Arena& arena, SurroundMode mode) { return arena.safe_states(mode); }

StateSet eternal_core(const Arena& arena, SurroundMode mode) {
  arena.materialize();
  StateSet unsafe = safe_set(arena, mode);
  for (auto& b : unsafe) b = !b;
  StateSet core = president_attractor_within(arena, unsafe, nullptr);
  for (auto& b : core) b = !b;
  return core;
}

StateSet attractor(const Arena& arena, const StateSet& target) {
  arena.materialize();
  StateSet in(arena.state_count(), 0);
  BodyguardAttractor attr(arena, in, nullptr);
  for (StateId s = 0; s < arena.state_count(); ++s) {
    if (target[s]) attr.seed(s);
  }
  attr.run();
  return in;
}

StateSet president_attractor(const Arena& arena, const StateSet& target) {
  arena.materialize();
  return president_attractor_within(arena, target, nullptr);
}

WinRegion cobuchi_region(const Arena& arena, SurroundMode mode, Method method, std::size_t workers) {
  arena.materialize(workers);
  const std::uint64_t states = arena.state_count();
  WinRegion region;
  region.arena = &arena;
  region.mode = mode;
  region.method = method;
  region.member.assign(states, 0);
  region.rank.assign(states, WinRegion::kUnranked);
  region.core_level.assign(states, 0);

  const StateSet safe = safe_set(arena, mode);
  BodyguardAttractor attr(arena, region.member, &region.rank);
  StateSet rest(states, 1), unsafe(states, 0);
  for (;;) {
    // Inside the states not yet won, the president tries to force unsurrounded
    // configurations; what he cannot reach is a core the bodyguards keep.
    for (StateId s = 0; s < states; ++s) {
      rest[s] = !region.member[s];
      unsafe[s] = rest[s] && !safe[s];
    }
    const StateSet escape = president_attractor_within(arena, unsafe, &rest);
    const auto level = static_cast<std::uint32_t>(region.iterations + 1);
    const std::uint32_t start = attr.clock();
    for (StateId s = 0; s < states; ++s) {
      if (rest[s] && !escape[s]) {
        region.core_level[s] = level;
        attr.seed(s);
      }
    }
    if (attr.clock() == start) break;
    region.level_start.push_back(start);
    ++region.iterations;
    attr.run();
    if (method == Method::two_phase) break;
  }
  return region;
}

Decision decide_from_region(const WinRegion& region) {
  const Arena& arena = *region.arena;
  Decision d;
  d.k = arena.tokens();
  d.states = arena.state_count();
  const std::size_t n = arena.vertices();
  if (n == 0) {
    d.win = true;
    d.witness = Placement{};
    return d;
  }
  d.escape.assign(arena.placement_count(), 0);
  for (PlacementRank p = 0; p < arena.placement_count(); ++p) {
    bool good = true;
    for (Vertex v = 0; v < n && good; ++v) {
      if (!region.contains(arena.state_id(p, v, Turn::bodyguards))) {
        good = false;
        d.escape[p] = v;
      }
    }
    if (good) {
      d.win = true;
      d.witness = Placement(arena.unrank(p));
      d.escape.clear();
      return d;
    }
  }
  return d;
}

std::size_t bodyguard_lower_bound(const Graph& g, SurroundMode mode) {
  if (g.order() == 0) return 0;
  const std::size_t delta = degree_profile(g).max_degree;
  return mode == SurroundMode::open ? delta : delta + 1;
}

std::size_t bodyguard_upper_bound(const Graph& g, SurroundMode mode) {
  if (g.order() == 0) return 0;
  return mode == SurroundMode::open ? g.order() - 1 : g.order();
}

Decision decide(const Graph& g, std::size_t k, const SolveOptions& opts) {
  if (g.order() == 0) {
    Decision d;
    d.win = true;
    d.k = k;
    d.witness = Placement{};
    return d;
  }
  if (opts.degree_prune && k < bodyguard_lower_bound(g, opts.mode)) return pruned_loss(g, k);
  const Arena arena(g, k, opts.state_limit);
  const WinRegion region = cobuchi_region(arena, opts.mode, opts.method, opts.workers);
  return decide_from_region(region);
}

std::size_t bodyguard_number(const Graph& g, const SolveOptions& opts) {
  const std::size_t low = bodyguard_lower_bound(g, opts.mode);
  const std::size_t high = bodyguard_upper_bound(g, opts.mode);
  for (std::size_t k = low; k <= high; ++k) {
    try {
      if (decide(g, k, opts).win) return k;
    } catch (const ResourceLimitError& e) {
      throw BracketError(e, k, high);
    }
  }
  throw Error("no bodyguard count up to " + std::to_string(high) + " wins; method " +
              to_string(opts.method) + " is too weak for this graph");
}

PlacementRank strategy_move(const WinRegion& region, StateId s) {
  const Arena& arena = *region.arena;
  if (Arena::turn_of(s) != Turn::bodyguards) throw Error("strategy moves are defined at bodyguard turns only");
  if (!region.contains(s)) throw Error("state " + arena.state(s).key() + " is outside the winning region");
  const PlacementRank p = arena.placement_of(s);
  const Vertex v = arena.president_of(s);
  const std::uint32_t level = region.core_level[s];
  for (PlacementRank q : arena.table().row(p)) {
    const StateId t = arena.state_id(q, v, Turn::president);
    if (!region.contains(t)) continue;
    const bool ok = level != 0 ? (region.core_level[t] == level || region.rank[t] < region.level_start[level - 1])
                               : region.rank[t] < region.rank[s];
    if (ok) return q;
  }
  throw Error("no strategy move found at " + arena.state(s).key());
}

StrategyCertificate extract_strategy(const WinRegion& region) {
  const Arena& arena = *region.arena;
  const Decision d = decide_from_region(region);
  if (!d.win) throw Error("winning region contains no placement good against every president start");
  StrategyCertificate cert;
  cert.graph = arena.graph();
  cert.fingerprint = arena.graph().fingerprint();
  cert.k = arena.tokens();
  cert.mode = region.mode;
  cert.method = region.method;
  cert.witness = *d.witness;
  const std::size_t n = arena.vertices();
  if (n == 0) return cert;

  const PlacementRank start = arena.rank(cert.witness.tokens());
  StateSet seen(arena.state_count(), 0);
  std::vector<StateId> stack;
  for (Vertex v = 0; v < n; ++v) {
    const StateId s = arena.state_id(start, v, Turn::bodyguards);
    seen[s] = 1;
    stack.push_back(s);
  }
  std::set<std::string> core;
  while (!stack.empty()) {
    const StateId s = stack.back();
    stack.pop_back();
    const PlacementRank q = strategy_move(region, s);
    const Vertex v = arena.president_of(s);
    const StateId t = arena.state_id(q, v, Turn::president);
    cert.moves.emplace(arena.state(s).key(), Placement(arena.unrank(q)).key());
    if (region.in_core(s)) core.insert(arena.state(s).key());
    if (region.in_core(t)) core.insert(arena.state(t).key());
    for (Vertex u : arena.closed_neighborhood(v)) {
      const StateId next = arena.state_id(q, u, Turn::bodyguards);
      if (!seen[next]) {
        seen[next] = 1;
        stack.push_back(next);
      }
    }
  }
  cert.core.assign(core.begin(), core.end());
  return cert;
}

nlohmann::ordered_json StrategyCertificate::to_json() const {
  nlohmann::ordered_json doc;
  doc["version"] = version;
  doc["graph"] = graph_to_json(graph);
  doc["fingerprint"] = fingerprint;
  doc["k"] = k;
  doc["mode"] = to_string(mode);
  doc["method"] = to_string(method);
  doc["witness_placement"] = witness.key();
  doc["core"] = core;
  auto m = nlohmann::ordered_json::object();
  for (const auto& [state, placement] : moves) m[state] = placement;
  doc["moves"] = std::move(m);
  return doc;
}

StrategyCertificate StrategyCertificate::from_json(const nlohmann::json& doc) {
  auto require = [&](const char* field) -> const nlohmann::json& {
    if (!doc.is_object() || !doc.contains(field)) {
      throw ParseError(std::string("certificate is missing field \"") + field + "\"");
    }
    return doc[field];
  };
  StrategyCertificate cert;
  try {
    cert.version = require("version").get<std::string>();
    cert.graph = graph_from_json(require("graph"));
    cert.fingerprint = require("fingerprint").get<std::string>();
    cert.k = require("k").get<std::size_t>();
    cert.mode = parse_mode(require("mode").get<std::string>());
    cert.method = parse_method(require("method").get<std::string>());
    cert.witness = Placement::parse_key(require("witness_placement").get<std::string>());
    cert.core = require("core").get<std::vector<std::string>>();
    for (const auto& [state, placement] : require("moves").items()) {
      cert.moves.emplace(state, placement.get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what());
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what());
  }
  return cert;
}

CertificateCheck verify_certificate(const StrategyCertificate& cert) {
  auto fail = [](std::string reason) { return CertificateCheck{false, std::move(reason)}; };
  const Graph& g = cert.graph;
  const std::size_t n = g.order();
  if (cert.fingerprint != g.fingerprint()) return fail("fingerprint does not match the graph");
  if (cert.witness.size() != cert.k) return fail("witness placement does not have k tokens");
  auto in_range = [&](const Placement& p) {
    return std::all_of(p.tokens().begin(), p.tokens().end(), [&](Vertex x) { return x < n; });
  };
  if (!in_range(cert.witness)) return fail("witness placement leaves the graph");
  if (n == 0) return {};

  // Nodes: bodyguard-to-move states (one per move entry), then the
  // president-to-move states the moves lead to.
  std::unordered_map<std::string, std::uint32_t> index;
  std::vector<GameState> nodes;
  Digraph edges;
  auto node_of = [&](const GameState& s) {
    auto [it, inserted] = index.emplace(s.key(), static_cast<std::uint32_t>(nodes.size()));
    if (inserted) {
      nodes.push_back(s);
      edges.emplace_back();
    }
    return it->second;
  };
  for (const auto& [key, target] : cert.moves) {
    GameState s;
    Placement to;
    try {
      s = GameState::parse_key(key);
      to = Placement::parse_key(target);
    } catch (const ParseError& e) {
      return fail(e.what());
    }
    if (s.turn != Turn::bodyguards) return fail("move given at president turn: " + key);
    if (s.placement.size() != cert.k || to.size() != cert.k) return fail("wrong token count at " + key);
    if (!in_range(s.placement) || !in_range(to) || s.president >= n) return fail("vertex out of range at " + key);
    if (!joint_move_feasible(g, s.placement.tokens(), to.tokens())) {
      return fail("illegal joint move " + key + " -> " + target);
    }
    node_of(s);
  }
  const std::size_t move_nodes = nodes.size();
  for (Vertex v = 0; v < n; ++v) {
    const GameState s{cert.witness, v, Turn::bodyguards};
    if (!index.contains(s.key())) return fail("no move for initial state " + s.key());
  }
  for (std::uint32_t i = 0; i < move_nodes; ++i) {
    const GameState s = nodes[i];
    const GameState t{Placement::parse_key(cert.moves.at(s.key())), s.president, Turn::president};
    const std::uint32_t j = node_of(t);
    edges[i].push_back(j);
    if (edges[j].empty()) {
      for (Vertex u : president_moves(g, t.president)) {
        const GameState next{t.placement, u, Turn::bodyguards};
        auto it = index.find(next.key());
        if (it == index.end() || it->second >= move_nodes) {
          return fail("strategy not closed: no move for " + next.key());
        }
        edges[j].push_back(it->second);
      }
    }
  }
  const SccResult scc = strongly_connected_components(edges);
  for (std::uint32_t j = static_cast<std::uint32_t>(move_nodes); j < nodes.size(); ++j) {
    if (surrounded(g, nodes[j].placement.tokens(), nodes[j].president, cert.mode)) continue;
    if (scc.cyclic[scc.component[j]]) {
      return fail("president can return forever to unsurrounded state " + nodes[j].key());
    }
  }
  for (const auto& key : cert.core) {
    GameState s;
    try {
      s = GameState::parse_key(key);
    } catch (const ParseError& e) {
      return fail(e.what());
    }
    if (!index.contains(key)) return fail("core state not reached by the strategy: " + key);
    if (s.turn == Turn::president && !surrounded(g, s.placement.tokens(), s.president, cert.mode)) {
      return fail("core state is not surrounded: " + key);
    }
  }
  return {};
}

Vertex best_response_president(const WinRegion& region, StateId s) {
  const Arena& arena = *region.arena;
  if (Arena::turn_of(s) != Turn::president) throw Error("best response needs a president-to-move state");
  const PlacementRank p = arena.placement_of(s);
  const Vertex v = arena.president_of(s);
  Vertex best = v;
  std::uint32_t best_rank = 0;
  bool first = true;
  for (Vertex u : arena.closed_neighborhood(v)) {
    const StateId t = arena.state_id(p, u, Turn::bodyguards);
    if (!region.contains(t)) return u;
    if (first || region.rank[t] > best_rank) {
      best = u;
      best_rank = region.rank[t];
      first = false;
    }
  }
  return best;
}

bool cops_win(const Graph& g, std::size_t k, std::uint64_t state_limit) {
  const std::size_t n = g.order();
  if (n == 0) return true;
  if (k == 0) return false;
  const Arena arena(g, k, state_limit);
  StateSet capture(arena.state_count(), 0);
  std::vector<Vertex> tokens(k, 0);
  for (PlacementRank p = 0; p < arena.placement_count(); ++p) {
    for (Vertex x : tokens) {
      capture[arena.state_id(p, x, Turn::bodyguards)] = 1;
      capture[arena.state_id(p, x, Turn::president)] = 1;
    }
    next_multiset(tokens, n);
  }
  const StateSet won = attractor(arena, capture);
  for (PlacementRank p = 0; p < arena.placement_count(); ++p) {
    bool all = true;
    for (Vertex v = 0; v < n && all; ++v) all = won[arena.state_id(p, v, Turn::bodyguards)];
    if (all) return true;
  }
  return false;
}

std::size_t cop_number(const Graph& g, std::uint64_t state_limit) {
  if (g.order() == 0) return 0;
  for (std::size_t k = 1;; ++k) {
    if (cops_win(g, k, state_limit)) return k;
  }
}

}  // namespace bgp
