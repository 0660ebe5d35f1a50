#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "bgp/graph.hpp"

namespace bgp {

// Graph file: {"n": int, "edges": [[u, v], ...]}, 0-based ids. Written with
// u < v, edges sorted, "n" first, no whitespace and a trailing newline.

nlohmann::ordered_json graph_to_json(const Graph& g);

/// Throws ParseError on schema violations, self-loops and duplicate edges.
Graph graph_from_json(const nlohmann::json& doc);

Graph read_graph(const std::string& path);
void write_graph(const Graph& g, const std::string& path);

/// Writes `content` to `path` through a temporary file and a rename, so
/// readers never observe a partial file.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace bgp
