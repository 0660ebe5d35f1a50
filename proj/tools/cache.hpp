#pragma once

#include <optional>
#include <string>

#include "bgp/solver.hpp"

namespace bgp::app {

struct CacheKey {
  std::string fingerprint;
  std::size_t k = 0;
  SurroundMode mode = SurroundMode::open;
  Method method = Method::exact;
  std::string version = kSolverVersion;

  std::string file_name() const;
};

// One JSON file per verdict. An empty root disables the cache.
class ResultCache {
 public:
  explicit ResultCache(std::string root = {}) : root_(std::move(root)) {}
  bool enabled() const { return !root_.empty(); }

  // Entries whose stored key does not match exactly are ignored.
  std::optional<Decision> load(const CacheKey& key) const;
  void store(const CacheKey& key, const Decision& decision) const;

 private:
  std::string path(const CacheKey& key) const;
  std::string root_;
};

CacheKey cache_key(const Graph& g, std::size_t k, const SolveOptions& opts);

// decide() with a cache lookup in front; `hit` reports whether the cache answered.
Decision cached_decide(const Graph& g, std::size_t k, const SolveOptions& opts, const ResultCache& cache,
                       bool* hit = nullptr);

// bodyguard_number() through the cache. Throws BracketError on a resource limit.
std::size_t cached_number(const Graph& g, const SolveOptions& opts, const ResultCache& cache);

}  // namespace bgp::app
