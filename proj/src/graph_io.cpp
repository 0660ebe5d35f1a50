#include "bgp/graph_io.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <thread>

#include <unistd.h>

namespace bgp {

nlohmann::ordered_json graph_to_json(const Graph& g) {
  nlohmann::ordered_json doc;
  doc["n"] = g.order();
  auto edges = nlohmann::ordered_json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  doc["edges"] = std::move(edges);
  return doc;
}

Graph graph_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("graph file must hold a JSON object");
  if (!doc.contains("n") || !doc["n"].is_number_unsigned()) {
    throw ParseError("graph file needs a non-negative integer field \"n\"");
  }
  if (!doc.contains("edges") || !doc["edges"].is_array()) {
    throw ParseError("graph file needs an array field \"edges\"");
  }
  const auto n = doc["n"].get<std::uint64_t>();
  if (n > kMaxVertices) throw ParseError("graph file vertex count too large");
  std::vector<Edge> edges;
  for (const auto& e : doc["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
      throw ParseError("each edge must be a pair of non-negative integers");
    }
    const auto u = e[0].get<std::uint64_t>(), v = e[1].get<std::uint64_t>();
    if (u >= n || v >= n) throw ParseError("edge endpoint out of range");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  try {
    return Graph::from_edges(n, edges);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

Graph read_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("malformed graph file '" + path + "': " + e.what(), e.byte);
  }
  return graph_from_json(doc);
}

void write_graph(const Graph& g, const std::string& path) {
  write_file_atomic(path, graph_to_json(g).dump() + "\n");
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp =
      path + ".tmp" + std::to_string(::getpid()) + "-" +
      std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp + "'");
    out << content;
    if (!out) throw Error("write to '" + tmp + "' failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error("cannot rename '" + tmp + "' to '" + path + "'");
  }
}

}  // namespace bgp
