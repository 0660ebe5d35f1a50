#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bgp/families.hpp"

namespace bgp {

// Grammar:
//   spec    := family | product | "file:" path
//   family  := name ":" params
//   product := ("cart" | "strong" | "lex") "(" spec "," spec ")"
// kpartite params are comma separated part sizes; tree params are "u-v;u-v;...".
struct GraphSpec {
  struct FamilyNode {
    Family family;
    std::vector<std::size_t> params;
  };
  struct ProductNode {
    ProductKind kind;
    std::unique_ptr<GraphSpec> left;
    std::unique_ptr<GraphSpec> right;
  };
  struct FileNode {
    std::string path;
  };

  std::variant<FamilyNode, ProductNode, FileNode> node;
};

/// Throws ParseError (with byte offset) on syntax errors, unknown family
/// names and out-of-range parameters.
GraphSpec parse_graph_spec(std::string_view text);

std::string render(const GraphSpec& spec);

/// Materializes the graph. File nodes are read relative to the working directory.
Graph build_graph(const GraphSpec& spec);

inline Graph graph_from_spec(std::string_view text) { return build_graph(parse_graph_spec(text)); }

}  // namespace bgp
