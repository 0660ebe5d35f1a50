#include "cache.hpp"

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "bgp/graph_io.hpp"

namespace bgp::app {

std::string CacheKey::file_name() const {
  return fingerprint + "-k" + std::to_string(k) + "-" + to_string(mode) + "-" + to_string(method) + "-v" + version +
         ".json";
}

std::string ResultCache::path(const CacheKey& key) const {
  return (std::filesystem::path(root_) / key.file_name()).string();
}

std::optional<Decision> ResultCache::load(const CacheKey& key) const {
  if (!enabled()) return std::nullopt;
  std::ifstream in(path(key));
  if (!in) return std::nullopt;
  try {
    const auto doc = nlohmann::json::parse(in);
    if (doc.at("fingerprint") != key.fingerprint || doc.at("k") != key.k || doc.at("mode") != to_string(key.mode) ||
        doc.at("method") != to_string(key.method) || doc.at("version") != key.version) {
      return std::nullopt;
    }
    Decision d;
    d.k = key.k;
    d.win = doc.at("win").get<bool>();
    if (!doc.at("witness").is_null()) d.witness = Placement::parse_key(doc.at("witness").get<std::string>());
    d.pruned = doc.at("pruned").get<bool>();
    d.park_vertex = doc.at("park_vertex").get<Vertex>();
    d.states = doc.at("states").get<std::uint64_t>();
    return d;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void ResultCache::store(const CacheKey& key, const Decision& decision) const {
  if (!enabled()) return;
  std::filesystem::create_directories(root_);
  nlohmann::ordered_json doc;
  doc["fingerprint"] = key.fingerprint;
  doc["k"] = key.k;
  doc["mode"] = to_string(key.mode);
  doc["method"] = to_string(key.method);
  doc["version"] = key.version;
  doc["win"] = decision.win;
  doc["witness"] = decision.witness ? nlohmann::ordered_json(decision.witness->key()) : nlohmann::ordered_json();
  doc["pruned"] = decision.pruned;
  doc["park_vertex"] = decision.park_vertex;
  doc["states"] = decision.states;
  write_file_atomic(path(key), doc.dump() + "\n");
}

CacheKey cache_key(const Graph& g, std::size_t k, const SolveOptions& opts) {
  return {g.fingerprint(), k, opts.mode, opts.method, kSolverVersion};
}

Decision cached_decide(const Graph& g, std::size_t k, const SolveOptions& opts, const ResultCache& cache, bool* hit) {
  const CacheKey key = cache_key(g, k, opts);
  if (auto found = cache.load(key)) {
    if (hit) *hit = true;
    return *found;
  }
  if (hit) *hit = false;
  Decision d = decide(g, k, opts);
  d.escape.clear();
  cache.store(key, d);
  return d;
}

std::size_t cached_number(const Graph& g, const SolveOptions& opts, const ResultCache& cache) {
  const std::size_t low = bodyguard_lower_bound(g, opts.mode);
  const std::size_t high = bodyguard_upper_bound(g, opts.mode);
  for (std::size_t k = low; k <= high; ++k) {
    try {
      if (cached_decide(g, k, opts, cache).win) return k;
    } catch (const ResourceLimitError& e) {
      throw BracketError(e, k, high);
    }
  }
  throw Error("no bodyguard count up to " + std::to_string(high) + " wins with method " + to_string(opts.method));
}

}  // namespace bgp::app
