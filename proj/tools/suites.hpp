#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cache.hpp"

namespace bgp::app {

struct SuiteCase {
  enum class Status { pass, fail, skipped };

  std::string spec;
  std::string quantity;
  nlohmann::ordered_json expected;
  std::string provenance;
  nlohmann::ordered_json computed;
  std::string method;
  Status status = Status::pass;
  std::string reason;
  double seconds = 0;
};

const char* to_string(SuiteCase::Status status);

struct SuiteResult {
  std::string name;
  std::vector<SuiteCase> cases;

  std::size_t count(SuiteCase::Status status) const;
  bool ok() const { return count(SuiteCase::Status::fail) == 0; }

  // Deterministic except for the top-level "metadata" member, which is left
  // out when `timing` is false.
  nlohmann::ordered_json to_json(bool timing = true) const;
  std::string summary_table() const;
};

struct SuiteOptions {
  std::size_t workers = 1;
  std::uint64_t state_limit = kDefaultStateLimit;
  std::uint64_t seed = 1;
  ResultCache cache;
};

const std::vector<std::string>& suite_names();

// Throws Error for an unknown suite name.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opts);

// Path orders of a spec such as "strong(path:3,strong(path:3,path:4))".
std::vector<std::size_t> strong_dims(const std::string& spec);

// Edge-subset enumeration of labeled graphs on n vertices, connected ones only.
std::vector<Graph> connected_labeled_graphs(std::size_t n);

}  // namespace bgp::app
