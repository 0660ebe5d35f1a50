#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"

#include <nlohmann/json.hpp>

#include "bgp/families.hpp"
#include "bgp/policies.hpp"
#include "cache.hpp"
#include "oracle.hpp"
#include "suites.hpp"

using namespace bgp;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run bgp_run(const std::string& args, const std::string& env = {}) {
  const std::string cmd = env + " " + BGP_EXE + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

json parse(const Run& r) { return json::parse(r.out); }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("bgp-cli-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("decide") {
  const Run r = bgp_run("decide --graph 'cart(path:4,path:4)' --k 4");
  CHECK(r.code == 0);
  const json doc = parse(r);
  CHECK(doc["win"] == false);
  CHECK(doc["witness"].is_null());
  CHECK(doc.contains("metadata"));
  const json win = parse(bgp_run("decide --graph cycle:5 --k 2 --no-timing"));
  CHECK(win["win"] == true);
  CHECK(win["witness"] == "[0,0]");
  CHECK_FALSE(win.contains("metadata"));
  CHECK(parse(bgp_run("decide --graph star:5 --k 3"))["pruned"] == true);
  CHECK(parse(bgp_run("decide --graph cycle:6 --k 2 --mode closed"))["win"] == false);
}

TEST_CASE("number and copnumber") {
  const json c7 = parse(bgp_run("number --graph cycle:7"));
  CHECK(c7["B"] == 3);
  CHECK(c7["bracket"] == json::array({3, 3}));
  CHECK(parse(bgp_run("number --graph hypercube:3"))["B"] == 4);
  CHECK(parse(bgp_run("number --graph path:3 --mode closed"))["B"] == 3);
  CHECK(parse(bgp_run("copnumber --graph cycle:6"))["c"] == 2);
  CHECK(parse(bgp_run("copnumber --graph 'cart(path:3,path:3)'"))["c"] == 2);
}

TEST_CASE("exit codes") {
  CHECK(bgp_run("").code == 1);
  CHECK(bgp_run("frobnicate").code == 1);
  CHECK(bgp_run("decide --graph cycle:5").code == 1);
  CHECK(bgp_run("decide --graph 'cycle:' --k 2").code == 1);
  CHECK(bgp_run("decide --graph cycle:5 --k 2 --mode sideways").code == 1);
  CHECK(bgp_run("decide --graph 'cart(path:4,path:4)' --k 4 --state-limit 1000").code == 2);
  const Run bracket = bgp_run("number --graph 'cart(path:4,path:4)' --state-limit 10000");
  CHECK(bracket.code == 2);
  CHECK(parse(bracket)["bracket"] == json::array({4, 15}));
  CHECK(parse(bracket)["B"].is_null());
  CHECK(bgp_run("copnumber --graph hypercube:4 --state-limit 10").code == 2);
  CHECK(bgp_run("verify-policy --graph cycle:6 --policy evader-cycle --k 3").code == 1);
  CHECK(bgp_run("verify-policy --graph cycle:6 --policy dance --k 3").code == 1);
  CHECK(bgp_run("verify-policy --graph 'cart(path:3,path:3)' --policy strong-grid --k 8").code == 1);
  CHECK(bgp_run("play --graph complete:4 --k 3 --bodyguards universal --president nobody").code == 1);
  CHECK(bgp_run("suite nonsense").code == 1);
  CHECK(bgp_run("verify-certificate /nonexistent/cert.json").code == 1);
  CHECK(bgp_run("strategy --graph cycle:5 --k 2").code == 1);
}

TEST_CASE("strategy certificates") {
  const fs::path cert = scratch("c6.json");
  const json doc = parse(bgp_run("strategy --graph cycle:6 --k 3 --out " + cert.string()));
  CHECK(doc["win"] == true);
  REQUIRE(fs::exists(cert));
  CHECK(parse(bgp_run("verify-certificate " + cert.string()))["ok"] == true);

  json body = json::parse(std::ifstream(cert));
  auto& moves = body["moves"];
  REQUIRE(!moves.empty());
  moves.begin().value() = "[0,0,0]";
  const fs::path bad = scratch("c6-bad.json");
  std::ofstream(bad) << body.dump();
  const Run check = bgp_run("verify-certificate " + bad.string());
  CHECK(check.code == 0);
  CHECK(parse(check)["ok"] == false);

  std::ofstream(scratch("junk.json")) << "{not json";
  CHECK(bgp_run("verify-certificate " + scratch("junk.json").string()).code == 1);
  CHECK(parse(bgp_run("strategy --graph cycle:6 --k 2 --out " + scratch("none.json").string()))["win"] == false);
  CHECK_FALSE(fs::exists(scratch("none.json")));
}

TEST_CASE("verify-policy and play") {
  CHECK(parse(bgp_run("verify-policy --graph 'tree:0-1;1-2;1-3;0-4;0-5' --policy tree --k 4"))["verdict"] ==
        "winning");
  CHECK(parse(bgp_run("verify-policy --graph cycle:8 --policy evader-cycle --k 2"))["verdict"] == "evading");
  CHECK(parse(bgp_run("verify-policy --graph 'strong(path:3,path:3)' --policy strong-grid --k 8"))["verdict"] ==
        "winning");
  const fs::path witness = scratch("witness.jsonl");
  const json lose = parse(bgp_run("verify-policy --graph cycle:8 --policy cycle --k 2 --out " + witness.string()));
  CHECK(lose["verdict"] == "losing");
  CHECK(lose["witness_cycle"].size() >= 3);
  CHECK(fs::exists(witness));

  const fs::path transcript = scratch("play.jsonl");
  const json play = parse(bgp_run("play --graph complete:4 --k 3 --bodyguards universal --president greedy-escape "
                                  "--steps 100 --out " + transcript.string()));
  CHECK(play["safe_tail"] == true);
  std::ifstream in(transcript);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) {
    const json state = json::parse(line);
    CHECK(state["state"].get<std::string>().rfind("placement=", 0) == 0);
    ++lines;
  }
  CHECK(lines >= 2);
  const json best = parse(bgp_run("play --graph cycle:6 --k 3 --bodyguards cycle --president best-response --steps 50"));
  CHECK(best["safe_tail"] == true);
  CHECK(best["transcript"].is_array());
}

TEST_CASE("output is byte-deterministic without timing") {
  const std::string args = "decide --graph 'cart(path:3,path:3)' --k 4 --no-timing";
  CHECK(bgp_run(args).out == bgp_run(args).out);
  CHECK(bgp_run(args + " --workers 1").out == bgp_run(args + " --workers 4").out);
  CHECK(bgp_run(args, "BGP_WORKERS=3").out == bgp_run(args).out);
  json timed = parse(bgp_run("decide --graph 'cart(path:3,path:3)' --k 4"));
  timed.erase("metadata");
  CHECK(timed == parse(bgp_run(args)));
  const std::string suite = "suite policies --no-timing";
  CHECK(bgp_run(suite + " --workers 1").out == bgp_run(suite + " --workers 4").out);
}

TEST_CASE("result cache through the command line") {
  const fs::path dir = scratch("cache");
  fs::remove_all(dir);
  const std::string args = "decide --graph cycle:7 --k 3 --cache-dir " + dir.string();
  const json first = parse(bgp_run(args));
  const json second = parse(bgp_run(args));
  CHECK(first["metadata"]["cached"] == false);
  CHECK(second["metadata"]["cached"] == true);
  json a = first, b = second;
  a.erase("metadata");
  b.erase("metadata");
  CHECK(a == b);
  const std::string name = cycle_graph(7).fingerprint() + "-k3-open-exact-v" + kSolverVersion + ".json";
  REQUIRE(fs::exists(dir / name));

  // An entry whose recorded version differs is not a hit.
  json entry = json::parse(std::ifstream(dir / name));
  entry["version"] = "0.0.0";
  std::ofstream(dir / name) << entry.dump();
  CHECK(parse(bgp_run(args))["metadata"]["cached"] == false);
  CHECK(parse(bgp_run("number --graph cycle:7 --cache-dir " + dir.string()))["B"] == 3);
}

TEST_CASE("cached verdicts equal fresh recomputation on 20 random cases") {
  const fs::path dir = scratch("cache-random");
  fs::remove_all(dir);
  const app::ResultCache cache(dir.string());
  std::mt19937 rng(2024);
  std::set<std::string> seen;
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 2 + rng() % 5;
    const Graph g = oracle::graph_from_mask(n, rng() & ((1u << (n * (n - 1) / 2)) - 1));
    const std::size_t k = 1 + rng() % n;
    SolveOptions o;
    o.mode = rng() % 2 ? SurroundMode::closed : SurroundMode::open;
    o.method = rng() % 2 ? Method::two_phase : Method::exact;
    bool hit = true;
    const Decision stored = app::cached_decide(g, k, o, cache, &hit);
    CHECK(hit == !seen.insert(app::cache_key(g, k, o).file_name()).second);
    const Decision again = app::cached_decide(g, k, o, cache, &hit);
    CHECK(hit);
    const Decision fresh = decide(g, k, o);
    CHECK(again.win == fresh.win);
    CHECK(again.witness == fresh.witness);
    CHECK(again.pruned == fresh.pruned);
    CHECK(again.states == fresh.states);
    CHECK(stored.win == fresh.win);
  }
}

TEST_CASE("suite result documents") {
  app::SuiteOptions o;
  const app::SuiteResult r = app::run_suite("policies", o);
  CHECK(r.ok());
  const auto doc = r.to_json(false);
  CHECK_FALSE(doc.contains("metadata"));
  for (const auto& c : doc["cases"]) {
    CHECK_FALSE(c["provenance"].get<std::string>().empty());
    CHECK(c["status"] == "pass");
  }
  CHECK(r.to_json(true).contains("metadata"));
  CHECK(r.summary_table().find("policies: 16 pass, 0 fail, 0 skipped") != std::string::npos);
  CHECK_THROWS_AS(app::run_suite("nope", o), Error);
  CHECK(app::connected_labeled_graphs(4).size() == 38);
  CHECK(app::strong_dims("strong(path:3,strong(path:4,path:5))") == std::vector<std::size_t>{3, 4, 5});
  CHECK_THROWS_AS(app::strong_dims("cart(path:3,path:3)"), PolicyError);
}
