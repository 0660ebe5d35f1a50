#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bgp/families.hpp"
#include "bgp/graph_io.hpp"
#include "bgp/graph_spec.hpp"
#include "bgp/policies.hpp"
#include "cache.hpp"
#include "suites.hpp"

using namespace bgp;
using json = nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, usage = 1, resource = 2, mismatch = 3 };

// Reported as a usage error.
struct UsageError : Error {
  using Error::Error;
};

struct Flags {
  std::string graph;
  std::size_t k = 0;
  std::string mode = "open";
  std::string method = "exact";
  std::uint64_t state_limit = kDefaultStateLimit;
  std::size_t workers = 1;
  std::uint64_t seed = 1;
  std::string out;
  std::string cache_dir;
  bool no_timing = false;
  std::string policy, bodyguards, president = "greedy-escape";
  std::size_t steps = 100;
  std::string suite, certificate;
};

SolveOptions solve_options(const Flags& f) {
  SolveOptions o;
  o.mode = parse_mode(f.mode);
  o.method = parse_method(f.method);
  o.state_limit = f.state_limit;
  o.workers = f.workers;
  return o;
}

class Timer {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit(json doc, const Flags& f, const Timer& timer, json extra = json::object()) {
  if (!f.no_timing) {
    extra["seconds"] = timer.seconds();
    doc["metadata"] = std::move(extra);
  }
  std::cout << doc.dump() << "\n";
}

json witness_json(const std::optional<Placement>& p) { return p ? json(p->key()) : json(); }

int cmd_decide(const Flags& f) {
  const Timer timer;
  const Graph g = graph_from_spec(f.graph);
  bool hit = false;
  const Decision d = app::cached_decide(g, f.k, solve_options(f), app::ResultCache(f.cache_dir), &hit);
  json doc;
  doc["graph"] = g.canonical_text();
  doc["fingerprint"] = g.fingerprint();
  doc["k"] = f.k;
  doc["mode"] = f.mode;
  doc["method"] = f.method;
  doc["win"] = d.win;
  doc["witness"] = witness_json(d.witness);
  doc["pruned"] = d.pruned;
  if (d.pruned) doc["park_vertex"] = d.park_vertex;
  doc["states"] = d.states;
  emit(doc, f, timer, {{"cached", hit}});
  return ok;
}

int cmd_number(const Flags& f) {
  const Timer timer;
  const Graph g = graph_from_spec(f.graph);
  json doc;
  doc["graph"] = g.canonical_text();
  doc["mode"] = f.mode;
  doc["method"] = f.method;
  try {
    const std::size_t b = app::cached_number(g, solve_options(f), app::ResultCache(f.cache_dir));
    doc["B"] = b;
    doc["bracket"] = {b, b};
    emit(doc, f, timer);
    return ok;
  } catch (const BracketError& e) {
    doc["B"] = nullptr;
    doc["bracket"] = {e.low(), e.high()};
    emit(doc, f, timer);
    std::cerr << "bgp: " << e.what() << "\n";
    return resource;
  }
}

int cmd_strategy(const Flags& f) {
  const Timer timer;
  if (f.out.empty()) throw UsageError("strategy needs --out");
  const Graph g = graph_from_spec(f.graph);
  const SolveOptions o = solve_options(f);
  const Arena arena(g, f.k, o.state_limit);
  const WinRegion region = cobuchi_region(arena, o.mode, o.method, o.workers);
  const Decision d = decide_from_region(region);
  json doc;
  doc["graph"] = g.canonical_text();
  doc["k"] = f.k;
  doc["win"] = d.win;
  if (d.win) {
    const StrategyCertificate cert = extract_strategy(region);
    write_file_atomic(f.out, cert.to_json().dump() + "\n");
    doc["witness"] = cert.witness.key();
    doc["moves"] = cert.moves.size();
    doc["certificate"] = f.out;
  }
  emit(doc, f, timer);
  return ok;
}

int cmd_verify_certificate(const Flags& f) {
  const Timer timer;
  std::ifstream in(f.certificate);
  if (!in) throw UsageError("cannot read '" + f.certificate + "'");
  json parsed;
  try {
    parsed = json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("certificate is not JSON: ") + e.what(), 0);
  }
  const CertificateCheck check = verify_certificate(StrategyCertificate::from_json(parsed));
  json doc;
  doc["ok"] = check.ok;
  if (!check.ok) doc["reason"] = check.reason;
  emit(doc, f, timer);
  return ok;
}

int cmd_copnumber(const Flags& f) {
  const Timer timer;
  const Graph g = graph_from_spec(f.graph);
  json doc;
  doc["graph"] = g.canonical_text();
  doc["c"] = cop_number(g, f.state_limit);
  emit(doc, f, timer);
  return ok;
}

std::unique_ptr<BodyguardPolicy> bodyguard_policy(const std::string& id, const std::string& spec, const Graph& g,
                                                  std::size_t k) {
  if (id == "universal") return policy_universal(g, k);
  if (id == "multipartite") return policy_multipartite(g, k);
  if (id == "tree") return policy_tree_bodyguards(g, k);
  if (id == "cycle") return policy_cycle_bodyguards(g, k);
  if (id == "strong-grid") {
    const auto dims = app::strong_dims(spec);
    return policy_strong_grid(g, dims, k);
  }
  return nullptr;
}

std::unique_ptr<PresidentPolicy> president_policy(const std::string& id, const Graph& g, std::size_t k) {
  if (id == "evader-cycle") return evader_cycle(g, k);
  if (id == "evader-tree") return evader_tree(g, k);
  if (id == "evader-hypercube") return evader_hypercube(g, k);
  if (id == "stay") return president_stay(g);
  if (id == "greedy-escape") return president_greedy_escape(g);
  return nullptr;
}

void write_lines(const std::string& path, const std::vector<GameState>& states) {
  std::string text;
  for (const GameState& s : states) text += json(s.key()).dump() + "\n";
  write_file_atomic(path, text);
}

int cmd_verify_policy(const Flags& f) {
  const Timer timer;
  const Graph g = graph_from_spec(f.graph);
  const SurroundMode mode = parse_mode(f.mode);
  PolicyVerdict verdict;
  bool guards = true;
  if (auto p = bodyguard_policy(f.policy, f.graph, g, f.k)) {
    verdict = verify_policy(g, *p, mode, f.state_limit);
  } else if (f.policy.rfind("evader-", 0) == 0) {
    guards = false;
    verdict = verify_policy(g, f.k, *president_policy(f.policy, g, f.k), mode, f.state_limit);
  } else {
    throw UsageError("unknown policy '" + f.policy + "'");
  }
  json doc;
  doc["graph"] = g.canonical_text();
  doc["policy"] = f.policy;
  doc["k"] = f.k;
  doc["mode"] = f.mode;
  doc["verdict"] = guards ? (verdict.holds ? "winning" : "losing") : (verdict.holds ? "evading" : "caught");
  doc["states"] = verdict.states;
  if (!verdict.holds) {
    json cycle = json::array();
    for (const GameState& s : verdict.witness) cycle.push_back(s.key());
    doc["witness_cycle"] = cycle;
    if (!f.out.empty()) write_lines(f.out, verdict.witness);
  }
  emit(doc, f, timer);
  return ok;
}

int cmd_play(const Flags& f) {
  const Timer timer;
  const Graph g = graph_from_spec(f.graph);
  const auto guards = bodyguard_policy(f.bodyguards, f.graph, g, f.k);
  if (!guards) throw UsageError("unknown bodyguard policy '" + f.bodyguards + "'");
  std::unique_ptr<Arena> arena;
  std::unique_ptr<WinRegion> region;
  std::unique_ptr<PresidentPolicy> president;
  if (f.president == "best-response") {
    arena = std::make_unique<Arena>(g, f.k, f.state_limit);
    region = std::make_unique<WinRegion>(cobuchi_region(*arena, parse_mode(f.mode), Method::exact, f.workers));
    president = president_best_response(*region);
  } else {
    president = president_policy(f.president, g, f.k);
  }
  if (!president) throw UsageError("unknown president policy '" + f.president + "'");
  const Playout play = playout(g, *guards, *president, f.steps, parse_mode(f.mode));
  if (!f.out.empty()) write_file_atomic(f.out, play.transcript());

  // First bodyguard turn from which every later turn ends surrounded.
  std::size_t from = play.surrounded.size();
  while (from > 0 && play.surrounded[from - 1]) --from;
  json doc;
  doc["graph"] = g.canonical_text();
  doc["bodyguards"] = guards->id();
  doc["president"] = president->id();
  doc["k"] = f.k;
  doc["turns"] = play.surrounded.size();
  doc["end"] = play.end == Playout::End::lasso ? "lasso" : "budget";
  if (play.end == Playout::End::lasso) doc["lasso_start"] = play.lasso_start;
  doc["surrounded_from"] = from < play.surrounded.size() ? json(from) : json();
  doc["safe_tail"] = !play.surrounded.empty() && play.surrounded.back() &&
                     (play.end == Playout::End::budget || 2 * from <= play.lasso_start);
  if (f.out.empty()) {
    json states = json::array();
    for (const GameState& s : play.states) states.push_back(s.key());
    doc["transcript"] = states;
  } else {
    doc["transcript_file"] = f.out;
  }
  emit(doc, f, timer);
  return ok;
}

int cmd_suite(const Flags& f) {
  app::SuiteOptions o;
  o.workers = f.workers;
  o.state_limit = f.state_limit;
  o.seed = f.seed;
  o.cache = app::ResultCache(f.cache_dir);
  const app::SuiteResult result = app::run_suite(f.suite, o);
  const std::string doc = result.to_json(!f.no_timing).dump(2) + "\n";
  if (f.out.empty()) {
    std::cout << doc;
    std::cerr << result.summary_table();
  } else {
    write_file_atomic(f.out, doc);
    std::cout << result.summary_table();
  }
  return result.ok() ? ok : mismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bodyguards and president: exact solver, policy verifier and reproduction suites"};
  app.require_subcommand(1);
  Flags f;

  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--mode", f.mode, "open or closed neighborhood")->check(CLI::IsMember({"open", "closed"}));
    cmd->add_option("--method", f.method, "exact or two-phase")->check(CLI::IsMember({"exact", "two-phase"}));
    cmd->add_option("--state-limit", f.state_limit, "maximum number of arena states");
    cmd->add_option("--workers", f.workers, "threads for building successor tables")
        ->envname("BGP_WORKERS")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", f.seed, "seed for randomized checks");
    cmd->add_option("--cache-dir", f.cache_dir, "directory for cached verdicts");
    cmd->add_flag("--no-timing", f.no_timing, "omit the metadata field");
  };
  auto graph_opt = [&](CLI::App* cmd) { cmd->add_option("--graph", f.graph, "graph spec")->required(); };
  auto k_opt = [&](CLI::App* cmd) { cmd->add_option("--k", f.k, "number of bodyguards")->required(); };

  auto* decide_cmd = app.add_subcommand("decide", "can k bodyguards win");
  graph_opt(decide_cmd);
  k_opt(decide_cmd);
  common(decide_cmd);

  auto* number_cmd = app.add_subcommand("number", "bodyguard number");
  graph_opt(number_cmd);
  common(number_cmd);

  auto* strategy_cmd = app.add_subcommand("strategy", "write a strategy certificate");
  graph_opt(strategy_cmd);
  k_opt(strategy_cmd);
  strategy_cmd->add_option("--out", f.out, "certificate path")->required();
  common(strategy_cmd);

  auto* verify_cert_cmd = app.add_subcommand("verify-certificate", "check a strategy certificate offline");
  verify_cert_cmd->add_option("certificate", f.certificate, "certificate path")->required();
  common(verify_cert_cmd);

  auto* cop_cmd = app.add_subcommand("copnumber", "cop number");
  graph_opt(cop_cmd);
  common(cop_cmd);

  auto* policy_cmd = app.add_subcommand("verify-policy", "verify a scripted policy against every opponent");
  graph_opt(policy_cmd);
  k_opt(policy_cmd);
  policy_cmd->add_option("--policy", f.policy, "policy id")->required();
  policy_cmd->add_option("--out", f.out, "witness cycle file (JSON lines)");
  common(policy_cmd);

  auto* play_cmd = app.add_subcommand("play", "simulate two policies");
  graph_opt(play_cmd);
  k_opt(play_cmd);
  play_cmd->add_option("--bodyguards", f.bodyguards, "bodyguard policy id")->required();
  play_cmd->add_option("--president", f.president, "president policy id");
  play_cmd->add_option("--steps", f.steps, "bodyguard turns to simulate");
  play_cmd->add_option("--out", f.out, "transcript file (JSON lines)");
  common(play_cmd);

  auto* suite_cmd = app.add_subcommand("suite", "run a reproduction suite");
  suite_cmd->add_option("name", f.suite, "suite name")->required()->check(CLI::IsMember(app::suite_names()));
  suite_cmd->add_option("--out", f.out, "results file");
  common(suite_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    if (*decide_cmd) return cmd_decide(f);
    if (*number_cmd) return cmd_number(f);
    if (*strategy_cmd) return cmd_strategy(f);
    if (*verify_cert_cmd) return cmd_verify_certificate(f);
    if (*cop_cmd) return cmd_copnumber(f);
    if (*policy_cmd) return cmd_verify_policy(f);
    if (*play_cmd) return cmd_play(f);
    if (*suite_cmd) return cmd_suite(f);
  } catch (const ResourceLimitError& e) {
    std::cerr << "bgp: " << e.what() << "\n";
    return resource;
  } catch (const std::exception& e) {
    std::cerr << "bgp: " << e.what() << "\n";
    return usage;
  }
  return usage;
}
