#include "suites.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "bgp/families.hpp"
#include "bgp/graph_spec.hpp"
#include "bgp/policies.hpp"

namespace bgp::app {

namespace {

using json = nlohmann::ordered_json;
using Status = SuiteCase::Status;

struct Registered {
  std::string spec;
  std::string quantity;
  json expected;
  std::string provenance;
  std::string method;
  // Fills `computed` and returns whether it matches.
  std::function<bool(json& computed)> run;
};

Graph figure_two() {
  return Graph::from_edges(6, std::vector<Edge>{{4, 1}, {1, 0}, {0, 3}, {3, 4}, {0, 2}, {2, 5}, {3, 5}});
}

SolveOptions solve_options(const SuiteOptions& opts, SurroundMode mode = SurroundMode::open,
                           Method method = Method::exact) {
  SolveOptions o;
  o.mode = mode;
  o.method = method;
  o.workers = opts.workers;
  o.state_limit = opts.state_limit;
  return o;
}

Registered number_case(const SuiteOptions& opts, std::string spec, std::size_t expected, std::string provenance) {
  return {spec, "B", expected, std::move(provenance), "exact", [&opts, spec, expected](json& out) {
            const std::size_t b = cached_number(graph_from_spec(spec), solve_options(opts), opts.cache);
            out = b;
            return b == expected;
          }};
}

Registered decide_case(const SuiteOptions& opts, std::string spec, std::size_t k, Method method, bool expected,
                       std::string provenance) {
  return {spec, "win at k=" + std::to_string(k), expected, std::move(provenance), to_string(method),
          [&opts, spec, k, method, expected](json& out) {
            const bool win = cached_decide(graph_from_spec(spec), k, solve_options(opts, SurroundMode::open, method),
                                           opts.cache)
                                 .win;
            out = win;
            return win == expected;
          }};
}

std::vector<Registered> paper_values(const SuiteOptions& opts) {
  std::vector<Registered> out;
  const char* cycles = "published: cycles up to five vertices need 2, longer ones 3";
  for (std::size_t n = 3; n <= 8; ++n) out.push_back(number_case(opts, "cycle:" + std::to_string(n), n <= 5 ? 2 : 3, cycles));
  const char* low = "published: B=1 only for P2, B=2 for longer paths";
  for (std::size_t n = 2; n <= 8; ++n) out.push_back(number_case(opts, "path:" + std::to_string(n), n == 2 ? 1 : 2, low));
  const char* trees = "published: a tree needs one bodyguard per leaf";
  out.push_back(number_case(opts, "tree:0-1;1-2;1-3;0-4;0-5", 4, trees));
  out.push_back(number_case(opts, "star:6", 5, trees));
  out.push_back(number_case(opts, "tree:0-1;1-2;0-3;3-4;0-5;5-6", 3, trees));
  out.push_back({figure_two().canonical_text(), "B", 3,
                 "published: three bodyguards alternate between two covering positions; degree bound 3", "exact",
                 [&opts](json& c) {
                   const std::size_t b = cached_number(figure_two(), solve_options(opts), opts.cache);
                   c = b;
                   return b == 3;
                 }});
  const char* universal = "published: B=n-1 exactly when some vertex is universal";
  out.push_back(number_case(opts, "complete:5", 4, universal));
  out.push_back(number_case(opts, "wheel:6", 5, universal));
  const char* parts = "published: complete multipartite graphs need all parts but the smallest";
  out.push_back(number_case(opts, "kpartite:2,3", 3, parts));
  out.push_back(number_case(opts, "kpartite:1,2,3", 5, parts));
  out.push_back(number_case(opts, "kpartite:2,2,2", 4, parts));
  const char* grids = "published: 2-dimensional grid values 2, 3, 4, 5";
  out.push_back(number_case(opts, "cart(path:2,path:2)", 2, grids));
  for (std::size_t m = 3; m <= 5; ++m) out.push_back(number_case(opts, "cart(path:2,path:" + std::to_string(m) + ")", 3, grids));
  for (std::size_t m = 3; m <= 4; ++m) out.push_back(number_case(opts, "cart(path:3,path:" + std::to_string(m) + ")", 4, grids));
  out.push_back(decide_case(opts, "cart(path:4,path:4)", 4, Method::exact, false, grids));
  out.push_back(decide_case(opts, "cart(path:4,path:4)", 5, Method::two_phase, true, grids));
  out.push_back(number_case(opts, "hypercube:3", 4, "published: hypercube bounds meet at d=3"));
  out.push_back({"strong(path:3,path:3)", "B", 8, "published: strong grids need 3^d-1; degree bound plus verified policy",
                 "degree bound + policy verification", [&opts](json& c) {
                   const std::string spec = "strong(path:3,path:3)";
                   const Graph g = graph_from_spec(spec);
                   const std::size_t lower = bodyguard_lower_bound(g, SurroundMode::open);
                   const auto dims = strong_dims(spec);
                   const bool holds =
                       verify_policy(g, *policy_strong_grid(g, dims, 8), SurroundMode::open, opts.state_limit).holds;
                   c = json{{"lower", lower}, {"policy_k8_wins", holds}};
                   return lower == 8 && holds;
                 }});
  const char* trees_cops = "published (cited): cop number of a product of m trees is ceil((m+1)/2)";
  for (const char* spec : {"cart(path:3,path:4)", "cart(cart(path:2,path:2),path:2)", "cart(star:4,path:3)"}) {
    out.push_back({spec, "c", 2, trees_cops, "exact", [&opts, spec](json& c) {
                     const std::size_t cops = cop_number(graph_from_spec(spec), opts.state_limit);
                     c = cops;
                     return cops == 2;
                   }});
  }
  return out;
}

std::vector<Registered> exhaustive_n6(const SuiteOptions& opts) {
  std::vector<Registered> out;
  for (std::size_t n = 1; n <= 6; ++n) {
    out.push_back({"connected labeled graphs, n=" + std::to_string(n), "B=n-1 iff max degree n-1", true,
                   "published: characterization of B=n-1", "exact, no degree pruning", [&opts, n](json& c) {
                     std::size_t graphs = 0, universal = 0, agree = 0;
                     json mismatches = json::array();
                     SolveOptions o = solve_options(opts);
                     o.degree_prune = false;
                     for (const Graph& g : connected_labeled_graphs(n)) {
                       ++graphs;
                       const bool has_universal = degree_profile(g).max_degree + 1 == n;
                       universal += has_universal;
                       // B <= n-1 always, so B = n-1 exactly when n-2 bodyguards lose.
                       const bool b_is_max = n == 1 || !cached_decide(g, n - 2, o, opts.cache).win;
                       if (b_is_max == has_universal) {
                         ++agree;
                       } else if (mismatches.size() < 10) {
                         mismatches.push_back(g.canonical_text());
                       }
                     }
                     c = json{{"graphs", graphs}, {"with_universal_vertex", universal}, {"agree", agree},
                              {"mismatches", mismatches}};
                     return agree == graphs;
                   }});
  }
  return out;
}

// Smallest upper-triangle adjacency mask over all relabelings; n <= 8.
std::uint64_t canonical_mask(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::uint64_t best = UINT64_MAX;
  do {
    std::uint64_t mask = 0;
    std::size_t bit = 0;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v, ++bit) {
        if (g.adjacent(perm[u], perm[v])) mask |= std::uint64_t{1} << bit;
      }
    }
    best = std::min(best, mask);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

struct Numbers {
  const SuiteOptions& opts;
  std::size_t b(const Graph& g, SurroundMode mode = SurroundMode::open) const {
    return cached_number(g, solve_options(opts, mode), opts.cache);
  }
  std::size_t c(const Graph& g) const { return cop_number(g, opts.state_limit); }
};

std::vector<Registered> inequalities(const SuiteOptions& opts) {
  std::vector<Registered> out;
  const Numbers num{opts};
  auto pair_spec = [](const char* kind, const std::string& a, const std::string& b) {
    return std::string(kind) + "(" + a + "," + b + ")";
  };

  for (auto [a, b] : {std::pair{"path:2", "path:3"}, {"path:2", "cycle:3"}, {"cycle:3", "cycle:3"}}) {
    const std::string spec = pair_spec("cart", a, b);
    out.push_back({spec, "B(GxH) <= B(G)+B(H)+c(GxH)-1", true, "published: Cartesian product upper bound", "exact",
                   [num, a, b, spec](json& c) {
                     const std::size_t lhs = num.b(graph_from_spec(spec));
                     const std::size_t rhs =
                         num.b(graph_from_spec(a)) + num.b(graph_from_spec(b)) + num.c(graph_from_spec(spec)) - 1;
                     c = json{{"lhs", lhs}, {"rhs", rhs}};
                     return lhs <= rhs;
                   }});
  }

  struct Retract {
    std::string spec;
    std::vector<Vertex> target;
    std::vector<Vertex> map;
  };
  for (const Retract& r : std::vector<Retract>{{"cycle:4", {0, 1, 2}, {0, 1, 2, 1}},
                                               {"cycle:6", {0, 1, 2, 3}, {0, 1, 2, 3, 2, 1}},
                                               {"tree:0-1;1-2;1-3;0-4;0-5", {0, 1, 2, 3}, {0, 1, 2, 3, 1, 1}}}) {
    out.push_back({r.spec + " onto " + Placement(r.target).key(), "B(H) <= B(G) for a retract H", true,
                   "published: bodyguard number is monotone under retracts", "exact", [num, r](json& c) {
                     const Graph g = graph_from_spec(r.spec);
                     const bool retraction = is_retraction({&g, r.target, r.map});
                     const std::size_t bh = num.b(induced_subgraph(g, r.target));
                     const std::size_t bg = num.b(g);
                     c = json{{"retraction", retraction}, {"B(H)", bh}, {"B(G)", bg}};
                     return retraction && bh <= bg;
                   }});
  }

  for (auto [a, b] : {std::pair{"path:2", "path:3"}, {"path:2", "cycle:4"}, {"path:3", "path:3"}}) {
    const std::string spec = pair_spec("strong", a, b);
    out.push_back({spec, "B(GxH) <= B(G)(B(H)+1)+B(H)+c(G)-1 with c(G) <= c(H)", true,
                   "published: strong product upper bound", "exact", [num, a, b, spec](json& c) {
                     Graph g = graph_from_spec(a), h = graph_from_spec(b);
                     if (num.c(g) > num.c(h)) std::swap(g, h);
                     const std::size_t lhs = num.b(graph_from_spec(spec));
                     const std::size_t bg = num.b(g), bh = num.b(h);
                     const std::size_t rhs = bg * (bh + 1) + bh + num.c(g) - 1;
                     c = json{{"lhs", lhs}, {"rhs", rhs}};
                     return lhs <= rhs;
                   }});
  }

  for (auto [a, b] : {std::pair{"path:2", "path:3"}, {"path:3", "path:2"}, {"cycle:4", "path:2"}}) {
    const std::string spec = pair_spec("lex", a, b);
    out.push_back({spec, "B(G.H) <= min(B(G)|H|+B(H)+c(G)-1, B(H)|G|+B(G)+c(H)-1)", true,
                   "published: lexicographic product upper bound", "exact", [num, a, b, spec](json& c) {
                     const Graph g = graph_from_spec(a), h = graph_from_spec(b);
                     const std::size_t lhs = num.b(graph_from_spec(spec));
                     const std::size_t bg = num.b(g), bh = num.b(h);
                     const std::size_t rhs = std::min(bg * h.order() + bh + num.c(g) - 1, bh * g.order() + bg + num.c(h) - 1);
                     c = json{{"lhs", lhs}, {"rhs", rhs}};
                     return lhs <= rhs;
                   }});
  }

  for (const char* spec : {"cart(path:3,path:4)", "cart(path:4,path:4)"}) {
    out.push_back({spec, "5 bodyguards win on a 2-dimensional grid", true, "published: floor(5d/2) grid bound at d=2",
                   "exact", [&opts, spec](json& c) {
                     const bool win = cached_decide(graph_from_spec(spec), 5, solve_options(opts), opts.cache).win;
                     c = win;
                     return win;
                   }});
  }

  for (std::size_t n = 1; n <= 6; ++n) {
    out.push_back({"connected labeled graphs, n=" + std::to_string(n), "B(G) <= B[G] <= B(G)+1", true,
                   "published: closed-neighborhood sandwich (connected graphs)", "exact, memoized up to isomorphism",
                   [num, n](json& c) {
                     std::size_t graphs = 0, hold = 0, tight = 0;
                     json violations = json::array();
                     std::map<std::uint64_t, std::pair<std::size_t, std::size_t>> solved;
                     for (const Graph& g : connected_labeled_graphs(n)) {
                       ++graphs;
                       auto [it, fresh] = solved.try_emplace(canonical_mask(g));
                       if (fresh) it->second = {num.b(g), num.b(g, SurroundMode::closed)};
                       const auto [open, closed] = it->second;
                       if (open <= closed && closed <= open + 1) {
                         ++hold;
                         tight += closed == open;
                       } else if (violations.size() < 10) {
                         violations.push_back(g.canonical_text());
                       }
                     }
                     c = json{{"graphs", graphs}, {"isomorphism_classes", solved.size()}, {"hold", hold},
                              {"closed_equals_open", tight}, {"violations", violations}};
                     return hold == graphs;
                   }});
  }

  for (auto [a, b] : {std::pair{"path:3", "cycle:4"}, {"cycle:4", "cycle:4"}, {"cycle:5", "cycle:5"}}) {
    const std::string spec = pair_spec("strong", a, b);
    out.push_back({spec, "c(GxH) <= c(G)+c(H)-1", true, "published (cited): strong product cop bound", "exact",
                   [num, a, b, spec](json& c) {
                     const std::size_t lhs = num.c(graph_from_spec(spec));
                     const std::size_t rhs = num.c(graph_from_spec(a)) + num.c(graph_from_spec(b)) - 1;
                     c = json{{"lhs", lhs}, {"rhs", rhs}};
                     return lhs <= rhs;
                   }});
  }
  return out;
}

std::vector<Registered> policies(const SuiteOptions& opts) {
  std::vector<Registered> out;
  auto guard = [&opts](std::string spec, std::string id, std::size_t k, std::string provenance) {
    return Registered{spec, "policy " + id + " k=" + std::to_string(k) + " wins", true, std::move(provenance),
                      "labeled-state SCC verification", [&opts, spec, id, k](json& c) {
                        const Graph g = graph_from_spec(spec);
                        std::unique_ptr<BodyguardPolicy> p;
                        if (id == "universal") p = policy_universal(g, k);
                        if (id == "multipartite") p = policy_multipartite(g, k);
                        if (id == "tree") p = policy_tree_bodyguards(g, k);
                        if (id == "cycle") p = policy_cycle_bodyguards(g, k);
                        if (id == "strong-grid") p = policy_strong_grid(g, strong_dims(spec), k);
                        const PolicyVerdict v = verify_policy(g, *p, SurroundMode::open, opts.state_limit);
                        c = json{{"holds", v.holds}, {"states", v.states}};
                        return v.holds;
                      }};
  };
  auto evader = [&opts](std::string spec, std::string id, std::size_t k, std::string provenance) {
    return Registered{spec, "policy " + id + " evades k=" + std::to_string(k), true, std::move(provenance),
                      "exhaustive SCC verification", [&opts, spec, id, k](json& c) {
                        const Graph g = graph_from_spec(spec);
                        std::unique_ptr<PresidentPolicy> p;
                        if (id == "evader-cycle") p = evader_cycle(g, k);
                        if (id == "evader-tree") p = evader_tree(g, k);
                        if (id == "evader-hypercube") p = evader_hypercube(g, k);
                        const PolicyVerdict v = verify_policy(g, k, *p, SurroundMode::open, opts.state_limit);
                        c = json{{"holds", v.holds}, {"states", v.states}};
                        return v.holds;
                      }};
  };
  out.push_back(guard("complete:5", "universal", 4, "published: n-1 bodyguards always suffice"));
  out.push_back(guard("cycle:7", "universal", 6, "published: n-1 bodyguards always suffice"));
  out.push_back(guard("kpartite:2,3", "multipartite", 3, "published: occupy all other parts"));
  out.push_back(guard("kpartite:1,2,3", "multipartite", 5, "published: occupy all other parts"));
  out.push_back(guard("tree:0-1;1-2;1-3;0-4;0-5", "tree", 4, "published: leaf escorts on trees"));
  out.push_back(guard("tree:0-1;1-2;0-3;3-4;0-5;5-6", "tree", 3, "published: leaf escorts on trees"));
  out.push_back(guard("cycle:5", "cycle", 2, "published: two bodyguards on short cycles"));
  out.push_back(guard("cycle:8", "cycle", 3, "published: three bodyguards on long cycles"));
  out.push_back(guard("strong(path:3,path:3)", "strong-grid", 8, "published: offset escorts on strong grids"));
  out.push_back(guard("strong(path:3,path:4)", "strong-grid", 8, "published: offset escorts on strong grids"));
  out.push_back(evader("cycle:8", "evader-cycle", 2, "published: two bodyguards lose on long cycles"));
  out.push_back(evader("tree:0-1;1-2;0-3;3-4;0-5;5-6", "evader-tree", 2, "published: one bodyguard per leaf is needed"));
  out.push_back(evader("tree:0-1;1-2;1-3;0-4;0-5", "evader-tree", 3, "published: one bodyguard per leaf is needed"));
  out.push_back(evader("hypercube:3", "evader-hypercube", 3, "published: d bodyguards lose on Q_d"));
  out.push_back(evader("hypercube:4", "evader-hypercube", 4, "published: d bodyguards lose on Q_d"));

  out.push_back({"cycle:9", "random president playouts, 10^4 steps, end surrounded", true,
                 "derived: a verified winning policy surrounds every long play eventually", "playout",
                 [&opts](json& c) {
                   const Graph g = cycle_graph(9);
                   const auto guards = policy_cycle_bodyguards(g, 3);
                   std::mt19937_64 rng(opts.seed);
                   struct Random final : PresidentPolicy {
                     const Graph& g;
                     std::mt19937_64& rng;
                     Random(const Graph& g, std::mt19937_64& rng) : g(g), rng(rng) {}
                     std::string id() const override { return "random"; }
                     Vertex place(const Placement&) const override { return static_cast<Vertex>(rng() % g.order()); }
                     Vertex step(const Placement&, Vertex v) const override {
                       const auto moves = president_moves(g, v);
                       return moves[rng() % moves.size()];
                     }
                   };
                   std::size_t good = 0;
                   for (int i = 0; i < 5; ++i) {
                     const Playout play = playout(g, *guards, Random(g, rng), 10000, SurroundMode::open, false);
                     good += play.surrounded.back();
                   }
                   c = json{{"playouts", 5}, {"surrounded_at_end", good}};
                   return good == 5;
                 }});
  return out;
}

}  // namespace

const char* to_string(SuiteCase::Status status) {
  switch (status) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "?";
}

std::size_t SuiteResult::count(Status status) const {
  std::size_t n = 0;
  for (const auto& c : cases) n += c.status == status;
  return n;
}

nlohmann::ordered_json SuiteResult::to_json(bool timing) const {
  json doc;
  doc["suite"] = name;
  json list = json::array();
  json seconds = json::array();
  double total = 0;
  for (const auto& c : cases) {
    json item;
    item["spec"] = c.spec;
    item["quantity"] = c.quantity;
    item["expected"] = c.expected;
    item["provenance"] = c.provenance;
    item["computed"] = c.computed;
    item["method"] = c.method;
    item["status"] = to_string(c.status);
    if (!c.reason.empty()) item["reason"] = c.reason;
    list.push_back(std::move(item));
    seconds.push_back(c.seconds);
    total += c.seconds;
  }
  doc["cases"] = std::move(list);
  doc["summary"] = {{"pass", count(Status::pass)}, {"fail", count(Status::fail)}, {"skipped", count(Status::skipped)}};
  if (timing) doc["metadata"] = {{"solver_version", kSolverVersion}, {"seconds", seconds}, {"seconds_total", total}};
  return doc;
}

std::string SuiteResult::summary_table() const {
  std::ostringstream out;
  out << std::left << std::setw(8) << "status" << std::setw(10) << "seconds" << std::setw(44) << "spec"
      << "quantity\n";
  for (const auto& c : cases) {
    out << std::setw(8) << to_string(c.status) << std::setw(10) << std::fixed << std::setprecision(3) << c.seconds
        << std::setw(44) << c.spec << c.quantity;
    if (c.status != Status::pass) out << "  [expected " << c.expected.dump() << ", got " << c.computed.dump() << "]";
    if (!c.reason.empty()) out << "  (" << c.reason << ")";
    out << "\n";
  }
  out << name << ": " << count(Status::pass) << " pass, " << count(Status::fail) << " fail, "
      << count(Status::skipped) << " skipped\n";
  return out.str();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"paper-values", "exhaustive-n6", "inequalities", "policies"};
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opts) {
  std::vector<Registered> registered;
  if (name == "paper-values") {
    registered = paper_values(opts);
  } else if (name == "exhaustive-n6") {
    registered = exhaustive_n6(opts);
  } else if (name == "inequalities") {
    registered = inequalities(opts);
  } else if (name == "policies") {
    registered = policies(opts);
  } else {
    throw Error("unknown suite '" + name + "'");
  }
  SuiteResult result;
  result.name = name;
  for (Registered& r : registered) {
    SuiteCase c;
    c.spec = r.spec;
    c.quantity = r.quantity;
    c.expected = r.expected;
    c.provenance = r.provenance;
    c.method = r.method;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.status = r.run(c.computed) ? Status::pass : Status::fail;
    } catch (const ResourceLimitError& e) {
      c.status = Status::skipped;
      c.reason = e.what();
    } catch (const std::exception& e) {
      c.status = Status::fail;
      c.reason = e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.cases.push_back(std::move(c));
  }
  return result;
}

std::vector<std::size_t> strong_dims(const std::string& spec) {
  std::vector<std::size_t> dims;
  std::function<void(const GraphSpec&)> walk = [&](const GraphSpec& s) {
    if (const auto* p = std::get_if<GraphSpec::ProductNode>(&s.node)) {
      if (p->kind != ProductKind::strong) throw PolicyError("strong-grid policy needs a spec built from strong products of paths");
      walk(*p->left);
      walk(*p->right);
    } else if (const auto* f = std::get_if<GraphSpec::FamilyNode>(&s.node); f && f->family == Family::path) {
      dims.push_back(f->params.at(0));
    } else {
      throw PolicyError("strong-grid policy needs a spec built from strong products of paths");
    }
  };
  walk(parse_graph_spec(spec));
  return dims;
}

std::vector<Graph> connected_labeled_graphs(std::size_t n) {
  std::vector<Edge> slots;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) slots.push_back({u, v});
  }
  std::vector<Graph> out;
  std::vector<Edge> edges;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    edges.clear();
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (mask >> i & 1u) edges.push_back(slots[i]);
    }
    Graph g = Graph::from_edges(n, edges);
    if (is_connected(g)) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace bgp::app
