#include "doctest.h"
#include "lct/error.hpp"
#include "lct/tree.hpp"
#include "test_support.hpp"

using namespace lct;

TEST_CASE("read a simple tree") {
  auto trees = read_trees("(S (A a) (B b))");
  REQUIRE(trees.size() == 1);
  const ParseTree& t = trees[0];
  CHECK(t.label == Symbol::nonterminal("S"));
  REQUIRE(t.children.size() == 2);
  CHECK(t.children[0].label == Symbol::nonterminal("A"));
  CHECK(t.children[0].children[0].label == Symbol::terminal("a"));
  CHECK(write_tree(t) == "(S (A a) (B b))");
}

TEST_CASE("read two trees from one string") {
  auto trees = read_trees(" (S a)\n(S (A b) c) ");
  REQUIRE(trees.size() == 2);
  CHECK(write_tree(trees[0]) == "(S a)");
  CHECK(write_tree(trees[1]) == "(S (A b) c)");
}

TEST_CASE("left-branching tree and its productions") {
  auto trees = read_trees("(S (S (S b) a) a)");
  REQUIRE(trees.size() == 1);
  auto prods = tree_productions(trees[0]);
  std::vector<std::string> rendered;
  for (const Production& p : prods) rendered.push_back(render(p));
  CHECK(rendered == std::vector<std::string>{"S -> S a", "S -> S a", "S -> b"});
  auto y = tree_yield(trees[0]);
  REQUIRE(y.size() == 3);
  CHECK(y[0] == Symbol::terminal("b"));
  CHECK(y[1] == Symbol::terminal("a"));
}

TEST_CASE("derived labels and the EPS marker round-trip") {
  std::string text = "(S b (LC(S;S) a (LC(S;S) a (LC(S;S) EPS))))";
  auto trees = read_trees(text);
  REQUIRE(trees.size() == 1);
  CHECK(write_tree(trees[0]) == text);
  Symbol s = Symbol::nonterminal("S");
  CHECK(trees[0].children[1].label == Symbol::lc_pair(s, s));
  // The EPS leaf is excluded from yields and production right-hand sides.
  CHECK(tree_yield(trees[0]).size() == 3);
  auto prods = tree_productions(trees[0]);
  CHECK(render(prods.back()) == "LC(S;S) ->");
}

TEST_CASE("tree reading errors") {
  CHECK_THROWS_AS(read_trees("(S (A a)"), Error);       // unbalanced '('
  CHECK_THROWS_AS(read_trees("(S a))"), Error);         // unbalanced ')'
  CHECK_THROWS_AS(read_trees("(S a) x"), Error);        // stray atom
  CHECK_THROWS_AS(read_trees("()"), Error);             // empty label
  CHECK_THROWS_AS(read_trees("(S ())"), Error);         // empty child label
  CHECK_THROWS_AS(read_trees("(S)"), Error);            // no children
  CHECK_THROWS_AS(read_trees("(S LC(A;B))"), Error);    // derived leaf
  CHECK_THROWS_AS(read_trees("(LC(S;S (a))"), Error);   // malformed label
}

TEST_CASE("single-leaf tree") {
  auto trees = read_trees("(A a)");
  auto prods = tree_productions(trees[0]);
  REQUIRE(prods.size() == 1);
  CHECK(render(prods[0]) == "A -> a");
}

TEST_CASE("check_tree accepts valid and rejects invalid nodes") {
  auto trees = read_trees("(S (A a) b)");
  CHECK_NOTHROW(check_tree(trees[0]));
  ParseTree bad = node(Symbol::nonterminal("S"), {leaf(Symbol::nonterminal("A"))});
  CHECK_THROWS_AS(check_tree(bad), Error);
}

TEST_CASE("write_trees emits one tree per line") {
  auto trees = read_trees("(S a) (S b)");
  CHECK(write_trees(trees) == "(S a)\n(S b)\n");
}
