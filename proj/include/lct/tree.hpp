#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lct/grammar.hpp"
#include "lct/symbol.hpp"

namespace lct {

// Penn-style bracketed parse tree. Leaves carry terminal symbols or the ε
// marker; internal nodes carry nonterminals and at least one child.
struct ParseTree {
  Symbol label;
  std::vector<ParseTree> children;

  bool is_leaf() const { return children.empty(); }
  bool operator==(const ParseTree&) const = default;
};

ParseTree leaf(Symbol s);
ParseTree node(Symbol label, std::vector<ParseTree> children);

// Terminal leaves left to right, ε markers excluded.
std::vector<Symbol> tree_yield(const ParseTree& t);

// One production per internal node, preorder, with multiplicity. A node whose
// only child is the ε marker induces an ε-production (empty RHS).
std::vector<Production> tree_productions(const ParseTree& t);

// Raises Error when a node violates the tree invariants (leaf label that is
// not a terminal or ε, internal label that is not a nonterminal).
void check_tree(const ParseTree& t);

// Reads a sequence of bracketed trees: "(S (A a) (B b)) (S c)" → 2 trees.
// Labels with children are nonterminals; bare tokens are terminal leaves,
// except the token EPS, which is the ε marker. Errors report the byte offset.
std::vector<ParseTree> read_trees(std::string_view text);

std::string write_tree(const ParseTree& t);
// One tree per line.
std::string write_trees(const std::vector<ParseTree>& trees);

}  // namespace lct
