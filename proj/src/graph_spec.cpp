#include "bgp/graph_spec.hpp"

#include <algorithm>
#include <cctype>

#include "bgp/graph_io.hpp"

namespace bgp {

namespace {

constexpr std::size_t kMaxParam = 1u << 20;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  GraphSpec parse() {
    GraphSpec spec = parse_spec();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return spec;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }
  [[noreturn]] void fail_at(const std::string& message, std::size_t at) const {
    throw ParseError(message, at);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  bool at_digit() {
    skip_space();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  std::size_t number() {
    if (!at_digit()) fail("expected a non-negative integer");
    std::size_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<std::size_t>(text_[pos_] - '0');
      if (value > kMaxParam) fail("parameter too large");
      ++pos_;
    }
    return value;
  }

  GraphSpec parse_spec() {
    skip_space();
    if (pos_ >= text_.size()) fail("empty graph spec");
    const std::size_t start = pos_;
    const std::string name = identifier();
    if (name.empty()) fail("expected a family name, product or file reference");

    if (name == "cart" || name == "strong" || name == "lex") {
      GraphSpec::ProductNode node;
      node.kind = name == "cart"     ? ProductKind::cartesian
                  : name == "strong" ? ProductKind::strong
                                     : ProductKind::lexicographic;
      expect('(');
      node.left = std::make_unique<GraphSpec>(parse_spec());
      expect(',');
      node.right = std::make_unique<GraphSpec>(parse_spec());
      expect(')');
      return GraphSpec{std::move(node)};
    }

    expect(':');
    if (name == "file") return GraphSpec{GraphSpec::FileNode{file_path()}};

    static const std::pair<const char*, Family> kNames[] = {
        {"path", Family::path},           {"cycle", Family::cycle}, {"complete", Family::complete},
        {"star", Family::star},           {"wheel", Family::wheel}, {"hypercube", Family::hypercube},
        {"kpartite", Family::kpartite},   {"tree", Family::tree},
    };
    auto it = std::find_if(std::begin(kNames), std::end(kNames),
                           [&](const auto& entry) { return name == entry.first; });
    if (it == std::end(kNames)) fail_at("unknown family name '" + name + "'", start);

    GraphSpec::FamilyNode node{it->second, {}};
    const std::size_t params_at = pos_;
    switch (node.family) {
      case Family::kpartite:
        node.params.push_back(number());
        // A comma followed by a digit continues the part list; anything else
        // belongs to an enclosing product.
        while (peek(',')) {
          const std::size_t save = pos_;
          ++pos_;
          if (!at_digit()) {
            pos_ = save;
            break;
          }
          node.params.push_back(number());
        }
        break;
      case Family::tree:
        if (at_digit()) {
          for (;;) {
            node.params.push_back(number());
            expect('-');
            node.params.push_back(number());
            if (!peek(';')) break;
            ++pos_;
          }
        }
        break;
      default:
        node.params.push_back(number());
        break;
    }
    validate(node, params_at);
    return GraphSpec{std::move(node)};
  }

  std::string file_path() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ')') ++pos_;
    std::string path(text_.substr(start, pos_ - start));
    while (!path.empty() && std::isspace(static_cast<unsigned char>(path.back()))) path.pop_back();
    if (path.empty()) fail_at("empty file path", start);
    return path;
  }

  void validate(const GraphSpec::FamilyNode& node, std::size_t at) const {
    auto bound = [&](bool ok, const std::string& message) {
      if (!ok) fail_at(message, at);
    };
    const std::size_t p = node.params.empty() ? 0 : node.params[0];
    switch (node.family) {
      case Family::path: bound(p >= 1, "path order must be >= 1"); break;
      case Family::cycle: bound(p >= 3, "cycle order must be >= 3"); break;
      case Family::complete: bound(p >= 1, "complete order must be >= 1"); break;
      case Family::star: bound(p >= 2, "star order must be >= 2"); break;
      case Family::wheel: bound(p >= 4, "wheel order must be >= 4"); break;
      case Family::hypercube: bound(p >= 1 && p <= 16, "hypercube dimension must be in [1, 16]"); break;
      case Family::kpartite:
        for (std::size_t part : node.params) bound(part >= 1, "kpartite parts must be >= 1");
        break;
      case Family::tree:
        try {
          generate_family(Family::tree, node.params);
        } catch (const Error& e) {
          fail_at(e.what(), at);
        }
        break;
    }
    std::size_t total = 0;
    if (node.family == Family::kpartite) {
      for (std::size_t part : node.params) total += part;
    } else if (node.family != Family::tree && node.family != Family::hypercube) {
      total = p;
    }
    bound(total <= kMaxVertices, "graph too large");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

GraphSpec parse_graph_spec(std::string_view text) { return Parser(text).parse(); }

std::string render(const GraphSpec& spec) {
  struct Visitor {
    std::string operator()(const GraphSpec::FamilyNode& node) const {
      std::string out = std::string(to_string(node.family)) + ":";
      if (node.family == Family::tree) {
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (std::size_t i = 0; i + 1 < node.params.size(); i += 2) {
          edges.emplace_back(std::min(node.params[i], node.params[i + 1]),
                             std::max(node.params[i], node.params[i + 1]));
        }
        std::sort(edges.begin(), edges.end());
        for (std::size_t i = 0; i < edges.size(); ++i) {
          if (i) out += ';';
          out += std::to_string(edges[i].first) + "-" + std::to_string(edges[i].second);
        }
        return out;
      }
      for (std::size_t i = 0; i < node.params.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(node.params[i]);
      }
      return out;
    }
    std::string operator()(const GraphSpec::ProductNode& node) const {
      return std::string(to_string(node.kind)) + "(" + render(*node.left) + "," + render(*node.right) + ")";
    }
    std::string operator()(const GraphSpec::FileNode& node) const { return "file:" + node.path; }
  };
  return std::visit(Visitor{}, spec.node);
}

Graph build_graph(const GraphSpec& spec) {
  struct Visitor {
    Graph operator()(const GraphSpec::FamilyNode& node) const {
      return generate_family(node.family, node.params);
    }
    Graph operator()(const GraphSpec::ProductNode& node) const {
      return product(build_graph(*node.left), build_graph(*node.right), node.kind);
    }
    Graph operator()(const GraphSpec::FileNode& node) const { return read_graph(node.path); }
  };
  return std::visit(Visitor{}, spec.node);
}

}  // namespace bgp
