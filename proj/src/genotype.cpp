#include "cellscope/genotype.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "cellscope/errors.hpp"

namespace cellscope {

namespace {

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  std::size_t pos() const { return pos_; }
  bool done() { skip_ws(); return pos_ >= text_.size(); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    return text_[pos_];
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
    ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect_word(std::string_view w) {
    skip_ws();
    if (text_.substr(pos_, w.size()) != w) {
      throw ParseError("expected '" + std::string(w) + "'", pos_);
    }
    pos_ += w.size();
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected identifier", pos_);
    return std::string(text_.substr(start, pos_ - start));
  }

  int integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start || (text_[start] == '-' && pos_ == start + 1)) {
      throw ParseError("expected integer", start);
    }
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

Primitive parse_primitive(Scanner& sc) {
  std::size_t at = sc.pos();
  std::string name = sc.identifier();
  auto p = primitive_from_label(name);
  if (!p) throw ParseError("unknown primitive '" + name + "'", at);
  return *p;
}

// One ('op', src) pair, single or double quotes.
std::pair<Primitive, int> parse_pair(Scanner& sc) {
  sc.expect('(');
  char quote = sc.peek();
  if (quote != '\'' && quote != '"') throw ParseError("expected quoted primitive", sc.pos());
  sc.expect(quote);
  Primitive op = parse_primitive(sc);
  sc.expect(quote);
  sc.expect(',');
  int src = sc.integer();
  sc.expect(')');
  return {op, src};
}

Cell parse_darts_pairs(Scanner& sc, const SpaceSpec& spec) {
  sc.expect('[');
  std::vector<std::pair<Primitive, int>> pairs;
  std::size_t list_at = sc.pos();
  if (!sc.accept(']')) {
    do {
      pairs.push_back(parse_pair(sc));
    } while (sc.accept(','));
    sc.expect(']');
  }
  int expected = spec.edges_per_cell();
  if (static_cast<int>(pairs.size()) != expected) {
    throw ParseError("wrong edge count: expected " + std::to_string(expected) + " pairs, got " +
                         std::to_string(pairs.size()),
                     list_at);
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    int node = static_cast<int>(i) / spec.in_edges_per_node;
    auto [op, src] = pairs[i];
    if (src < 0 || src >= node + 2) {
      throw ParseError("bad source index " + std::to_string(src) + " for intermediate node " +
                           std::to_string(node),
                       list_at);
    }
    if (op != Primitive::zero && !spec.allows(op)) {
      throw ParseError(std::string("unknown primitive '") + std::string(label(op)) +
                           "' for this space",
                       list_at);
    }
    edges.push_back({src, node, op});
  }
  for (int t = 0; t < spec.intermediate_nodes; ++t) {
    std::set<int> srcs;
    for (const Edge& e : edges) {
      if (e.dst == t && !srcs.insert(e.src).second) {
        throw ParseError("duplicate sources at intermediate node " + std::to_string(t), list_at);
      }
    }
  }
  return Cell(std::move(edges));
}

void parse_concat(Scanner& sc, const SpaceSpec& spec) {
  sc.expect('[');
  std::vector<int> xs;
  if (!sc.accept(']')) {
    do {
      xs.push_back(sc.integer());
    } while (sc.accept(','));
    sc.expect(']');
  }
  // The output concatenation is fixed by the space: all intermediates.
  std::vector<int> want;
  for (int t = 0; t < spec.intermediate_nodes; ++t) want.push_back(t + 2);
  if (xs != want) throw ParseError("concat list must name all intermediate nodes", sc.pos());
}

Architecture parse_darts(std::string_view text, const SpaceSpec& spec) {
  Scanner sc(text);
  sc.expect_word("Genotype");
  sc.expect('(');
  sc.expect_word("normal");
  sc.expect('=');
  Cell normal = parse_darts_pairs(sc, spec);
  sc.expect(',');
  sc.expect_word("normal_concat");
  sc.expect('=');
  parse_concat(sc, spec);
  sc.expect(',');
  sc.expect_word("reduce");
  sc.expect('=');
  Cell reduce = parse_darts_pairs(sc, spec);
  sc.expect(',');
  sc.expect_word("reduce_concat");
  sc.expect('=');
  parse_concat(sc, spec);
  sc.expect(')');
  if (!sc.done()) throw ParseError("trailing characters after genotype", sc.pos());
  return Architecture{std::move(normal), std::move(reduce)};
}

Architecture parse_nb201(std::string_view text, const SpaceSpec& spec) {
  Scanner sc(text);
  std::vector<Edge> edges;
  int n = spec.nodes();
  for (int j = 1; j < n; ++j) {
    if (j > 1) sc.expect('+');
    sc.expect('|');
    for (int i = 0; i < j; ++i) {
      std::size_t at = sc.pos();
      Primitive op = parse_primitive(sc);
      if (op != Primitive::zero && !spec.allows(op)) {
        throw ParseError(std::string("unknown primitive '") + std::string(label(op)) +
                             "' for this space",
                         at);
      }
      sc.expect('~');
      int src = sc.integer();
      if (src != i) {
        throw ParseError("bad source index " + std::to_string(src) + ", expected " +
                             std::to_string(i),
                         at);
      }
      sc.expect('|');
      edges.push_back({i, j, op});
    }
  }
  if (!sc.done()) throw ParseError("trailing characters after genotype", sc.pos());
  return Architecture{Cell(std::move(edges)), std::nullopt};
}

void serialize_darts_cell(std::ostringstream& os, const Cell& cell, const SpaceSpec& spec) {
  os << '[';
  bool first = true;
  for (int t = 0; t < spec.intermediate_nodes; ++t) {
    for (const Edge& e : cell.in_edges(t)) {
      if (!first) os << ", ";
      first = false;
      os << "('" << label(e.op) << "', " << e.src << ')';
    }
  }
  os << ']';
}

void serialize_concat(std::ostringstream& os, const SpaceSpec& spec) {
  os << '[';
  for (int t = 0; t < spec.intermediate_nodes; ++t) {
    if (t) os << ", ";
    os << t + 2;
  }
  os << ']';
}

}  // namespace

Architecture parse_genotype(std::string_view text, const SpaceSpec& spec) {
  if (spec.kind == SpaceKind::darts) {
    Architecture arch = parse_darts(text, spec);
    if (!arch.reduce) throw ParseError("missing reduce cell", 0);
    return arch;
  }
  return parse_nb201(text, spec);
}

std::string serialize_cell(const Cell& cell, const SpaceSpec& spec, CellKind kind) {
  std::ostringstream os;
  if (spec.kind == SpaceKind::darts) {
    serialize_darts_cell(os, cell, spec);
    return os.str();
  }
  (void)kind;
  int n = spec.nodes();
  std::size_t k = 0;
  for (int j = 1; j < n; ++j) {
    if (j > 1) os << '+';
    os << '|';
    for (int i = 0; i < j; ++i, ++k) {
      const Edge& e = cell.edges().at(k);
      os << label(e.op) << '~' << e.src << '|';
    }
  }
  return os.str();
}

std::string serialize_genotype(const Architecture& arch, const SpaceSpec& spec) {
  if (spec.kind == SpaceKind::nb201) {
    return serialize_cell(arch.normal, spec, CellKind::normal);
  }
  if (!arch.reduce) throw std::logic_error("DARTS architecture without reduce cell");
  std::ostringstream os;
  os << "Genotype(normal=";
  serialize_darts_cell(os, arch.normal, spec);
  os << ", normal_concat=";
  serialize_concat(os, spec);
  os << ", reduce=";
  serialize_darts_cell(os, *arch.reduce, spec);
  os << ", reduce_concat=";
  serialize_concat(os, spec);
  os << ')';
  return os.str();
}

}  // namespace cellscope
