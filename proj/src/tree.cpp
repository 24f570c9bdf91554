#include "lct/tree.hpp"

#include "lct/error.hpp"

namespace lct {

ParseTree leaf(Symbol s) { return ParseTree{std::move(s), {}}; }

ParseTree node(Symbol label, std::vector<ParseTree> children) {
  return ParseTree{std::move(label), std::move(children)};
}

std::vector<Symbol> tree_yield(const ParseTree& t) {
  std::vector<Symbol> out;
  auto walk = [&out](const ParseTree& n, auto&& self) -> void {
    if (n.is_leaf()) {
      if (!n.label.is_epsilon()) out.push_back(n.label);
      return;
    }
    for (const ParseTree& c : n.children) self(c, self);
  };
  walk(t, walk);
  return out;
}

std::vector<Production> tree_productions(const ParseTree& t) {
  std::vector<Production> out;
  auto walk = [&out](const ParseTree& n, auto&& self) -> void {
    if (n.is_leaf()) return;
    Production p;
    p.lhs = n.label;
    for (const ParseTree& c : n.children) {
      if (!c.label.is_epsilon()) p.rhs.push_back(c.label);
    }
    out.push_back(std::move(p));
    for (const ParseTree& c : n.children) self(c, self);
  };
  walk(t, walk);
  return out;
}

void check_tree(const ParseTree& t) {
  if (t.is_leaf()) {
    if (!t.label.is_terminal() && !t.label.is_epsilon()) {
      throw Error("leaf '" + t.label.render() +
                  "' is neither a terminal nor the ε marker");
    }
    return;
  }
  if (!t.label.is_nonterminal()) {
    throw Error("internal node label '" + t.label.render() +
                "' is not a nonterminal");
  }
  for (const ParseTree& c : t.children) check_tree(c);
}

namespace {

struct Lexer {
  std::string_view text;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < text.size() &&
           (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' ||
            text[pos] == '\r')) {
      ++pos;
    }
  }
  bool at_end() {
    skip_space();
    return pos >= text.size();
  }
  char peek() {
    skip_space();
    return text[pos];
  }
  // An atom may contain balanced parentheses (derived labels like LC(S;S)).
  std::string atom() {
    skip_space();
    std::size_t start = pos;
    int depth = 0;
    while (pos < text.size()) {
      char c = text[pos];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') break;
      if (c == '(') {
        if (pos == start) break;  // structural '(' only at atom start
        ++depth;
      } else if (c == ')') {
        if (depth == 0) break;  // structural ')'
        --depth;
      }
      ++pos;
    }
    return std::string(text.substr(start, pos - start));
  }
};

ParseTree parse_node(Lexer& lex) {
  std::size_t open_at = lex.pos;
  ++lex.pos;  // consume '('
  if (lex.at_end() || lex.peek() == '(' || lex.peek() == ')') {
    throw Error("empty node label at offset " + std::to_string(open_at));
  }
  std::string label_token = lex.atom();
  ParseTree t;
  t.label = parse_symbol_token(label_token, SymbolKind::nonterminal);
  while (true) {
    if (lex.at_end()) {
      throw Error("unbalanced '(' at offset " + std::to_string(open_at));
    }
    char c = lex.peek();
    if (c == ')') {
      ++lex.pos;
      break;
    }
    if (c == '(') {
      t.children.push_back(parse_node(lex));
      continue;
    }
    std::string tok = lex.atom();
    if (tok == "EPS") {
      t.children.push_back(leaf(Symbol::eps()));
      continue;
    }
    Symbol s = parse_symbol_token(tok, SymbolKind::terminal);
    if (!s.is_terminal()) {
      throw Error("derived symbol '" + tok + "' cannot be a leaf (offset " +
                  std::to_string(lex.pos) + ")");
    }
    t.children.push_back(leaf(s));
  }
  if (t.children.empty()) {
    throw Error("node '" + t.label.render() + "' at offset " +
                std::to_string(open_at) + " has no children");
  }
  return t;
}

}  // namespace

std::vector<ParseTree> read_trees(std::string_view text) {
  Lexer lex{text};
  std::vector<ParseTree> trees;
  while (!lex.at_end()) {
    char c = lex.peek();
    if (c == '(') {
      trees.push_back(parse_node(lex));
    } else if (c == ')') {
      throw Error("unbalanced ')' at offset " + std::to_string(lex.pos));
    } else {
      throw Error("expected '(' at offset " + std::to_string(lex.pos) +
                  ", found '" + lex.atom() + "'");
    }
  }
  return trees;
}

namespace {

void write_node(const ParseTree& t, std::string& out) {
  if (t.is_leaf()) {
    out += t.label.is_epsilon() ? "EPS" : t.label.render();
    return;
  }
  out += '(';
  out += t.label.render();
  for (const ParseTree& c : t.children) {
    out += ' ';
    write_node(c, out);
  }
  out += ')';
}

}  // namespace

std::string write_tree(const ParseTree& t) {
  std::string out;
  write_node(t, out);
  return out;
}

std::string write_trees(const std::vector<ParseTree>& trees) {
  std::string out;
  for (const ParseTree& t : trees) {
    write_node(t, out);
    out += '\n';
  }
  return out;
}

}  // namespace lct
