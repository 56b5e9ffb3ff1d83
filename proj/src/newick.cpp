#include "fillings/newick.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <tuple>

#include "fillings/errors.hpp"

namespace fillings {
namespace {

struct ParsedNode {
  int label = 0;  // > 0 for leaves
  std::size_t position = 0;
  std::vector<std::unique_ptr<ParsedNode>> children;
};

class NewickParser {
 public:
  explicit NewickParser(std::string_view text) : text_(text) {}

  std::unique_ptr<ParsedNode> parse() {
    auto root = parse_subtree();
    skip_space();
    expect(';');
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters after ';'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

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

  void skip_branch_length() {
    if (!peek(':')) return;
    ++pos_;
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
            text_[pos_] == 'e' || text_[pos_] == 'E' || text_[pos_] == '-' ||
            text_[pos_] == '+' || text_[pos_] == '/')) {
      ++pos_;
    }
    if (pos_ == start) fail("expected branch length after ':'");
  }

  std::unique_ptr<ParsedNode> parse_subtree() {
    skip_space();
    auto node = std::make_unique<ParsedNode>();
    node->position = pos_;
    if (peek('(')) {
      ++pos_;
      node->children.push_back(parse_subtree());
      while (peek(',')) {
        ++pos_;
        node->children.push_back(parse_subtree());
      }
      expect(')');
    } else {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ == start) fail("expected leaf label or '('");
      if (pos_ - start > 6) {
        pos_ = start;
        fail("leaf label too large");
      }
      node->label = std::stoi(std::string(text_.substr(start, pos_ - start)));
      if (node->label < 1) {
        pos_ = start;
        fail("leaf labels start at 1");
      }
    }
    skip_branch_length();
    return node;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

struct Builder {
  int leaf_count;
  Vertex next_internal;
  std::vector<Edge> edges;

  // Returns the vertex standing for `node`, adding the edges below it.
  Vertex build(const ParsedNode& node) {
    if (node.label > 0) return node.label - 1;
    if (node.children.size() != 2) {
      throw ParseError("internal vertex must have exactly 2 children (binary tree)", node.position);
    }
    const Vertex self = next_internal++;
    for (const auto& child : node.children) edges.push_back({self, build(*child)});
    return self;
  }
};

void collect_labels(const ParsedNode& node, std::vector<std::pair<int, std::size_t>>& out) {
  if (node.label > 0) out.emplace_back(node.label, node.position);
  for (const auto& child : node.children) collect_labels(*child, out);
}

struct CanonicalSubtree {
  std::string shape;
  int min_label;
  std::string text;
};

bool canonical_less(const CanonicalSubtree& a, const CanonicalSubtree& b) {
  return std::tie(a.shape, a.min_label) < std::tie(b.shape, b.min_label);
}

CanonicalSubtree canonical_subtree(const Topology& t, Vertex v, Vertex parent) {
  if (t.is_leaf(v)) return {"0", t.label(v), std::to_string(t.label(v))};
  std::vector<CanonicalSubtree> children;
  for (const Incidence& inc : t.neighbors(v)) {
    if (inc.vertex != parent) children.push_back(canonical_subtree(t, inc.vertex, v));
  }
  std::sort(children.begin(), children.end(), canonical_less);
  std::vector<std::string> shapes;
  for (const auto& c : children) shapes.push_back(c.shape);
  std::sort(shapes.begin(), shapes.end());

  CanonicalSubtree result{"(", children.front().min_label, "("};
  for (const auto& s : shapes) result.shape += s;
  result.shape += ")";
  for (std::size_t i = 0; i < children.size(); ++i) {
    result.min_label = std::min(result.min_label, children[i].min_label);
    if (i) result.text += ",";
    result.text += children[i].text;
  }
  result.text += ")";
  return result;
}

}  // namespace

Topology parse_newick(std::string_view text) {
  auto root = NewickParser(text).parse();

  std::vector<std::pair<int, std::size_t>> labels;
  collect_labels(*root, labels);
  const int n = static_cast<int>(labels.size());
  if (n < 3) throw ParseError("a binary topology needs at least 3 leaves", 0);
  std::vector<bool> seen(n + 1, false);
  for (auto [label, position] : labels) {
    if (label > n) {
      throw ParseError("leaf label " + std::to_string(label) + " outside 1.." + std::to_string(n),
                       position);
    }
    if (seen[label]) throw ParseError("duplicate leaf label " + std::to_string(label), position);
    seen[label] = true;
  }

  Builder builder{n, n, {}};
  if (root->label > 0) throw ParseError("tree consists of a single leaf", root->position);
  if (root->children.size() == 2) {
    const Vertex a = builder.build(*root->children[0]);
    const Vertex b = builder.build(*root->children[1]);
    builder.edges.push_back({a, b});
  } else if (root->children.size() == 3) {
    const Vertex self = builder.next_internal++;
    for (const auto& child : root->children) builder.edges.push_back({self, builder.build(*child)});
  } else {
    throw ParseError("root must have 2 or 3 children (binary tree)", root->position);
  }
  try {
    return Topology(n, std::move(builder.edges));
  } catch (const DomainError& e) {
    throw ParseError(e.what(), 0);
  }
}

std::string emit_newick(const Topology& t) {
  auto centers = centroids(t);
  if (centers.size() == 1) return canonical_subtree(t, centers[0], -1).text + ";";
  auto a = canonical_subtree(t, centers[0], centers[1]);
  auto b = canonical_subtree(t, centers[1], centers[0]);
  if (canonical_less(b, a)) std::swap(a, b);
  return "(" + a.text + "," + b.text + ");";
}

bool is_isomorphic(const Topology& a, const Topology& b, bool respect_labels) {
  if (a.leaf_count() != b.leaf_count()) return false;
  if (respect_labels) return emit_newick(a) == emit_newick(b);
  return shape_encoding(a) == shape_encoding(b);
}

}  // namespace fillings
