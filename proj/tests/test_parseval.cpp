#include "lct/parseval.hpp"

#include <optional>
#include <string>
#include <vector>

#include "doctest.h"
#include "lct/enumerate.hpp"
#include "lct/error.hpp"
#include "lct/transform.hpp"
#include "lct/tree.hpp"
#include "test_support.hpp"

using namespace lct;
using test::g;
using test::tokens_of;

namespace {

ParseTree tree(std::string_view text) { return read_trees(text).front(); }

const char* kGold = "(S (NP (d the) (n dog)) (VP (v runs)))";

std::vector<ParseTree> parse_corpus(const Grammar& gr, int max_len) {
  std::vector<ParseTree> out;
  for (const std::string& s : enumerate_strings(gr, max_len)) {
    for (const WeightedTree& wt : enumerate_parses(gr, tokens_of(s))) {
      out.push_back(wt.tree);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("constituents exclude the root, preterminals and empty spans") {
  CHECK(labelled_constituents(tree(kGold)) ==
        std::vector<Constituent>{{"NP", 0, 2}, {"VP", 2, 3}});
  // Multiple terminal children form a regular constituent.
  CHECK(labelled_constituents(tree("(S (NP d n) (VP v))")) ==
        std::vector<Constituent>{{"NP", 0, 2}});
  // Zero-width nodes vanish, even nested ones.
  CHECK(labelled_constituents(tree("(S (A (B EPS)) (NP (d the) (n dog)))")) ==
        std::vector<Constituent>{{"NP", 0, 2}});
}

TEST_CASE("crossed constituents match nothing") {
  ParseTree gold = tree(kGold);
  ParseTree test = tree("(S (NP (d the)) (VP (n dog) (v runs)))");
  ParsevalCounts c = parseval(gold, test);
  CHECK(c.matched == 0);
  CHECK(c.gold == 2);
  CHECK(c.test == 2);
  CHECK(c.precision() == 0.0);
  CHECK(c.recall() == 0.0);
}

TEST_CASE("identical trees score 1") {
  ParsevalCounts c = parseval(tree(kGold), tree(kGold));
  CHECK(c.matched == 2);
  CHECK(c.precision() == 1.0);
  CHECK(c.recall() == 1.0);
}

TEST_CASE("an extra unary wrap costs precision only") {
  ParseTree gold = tree(kGold);
  ParseTree test = tree("(S (NP (X (d the) (n dog))) (VP (v runs)))");
  ParsevalCounts c = parseval(gold, test);
  CHECK(c.matched == 2);
  CHECK(c.gold == 2);
  CHECK(c.test == 3);
  CHECK(c.precision() == doctest::Approx(2.0 / 3.0));
  CHECK(c.recall() == 1.0);
}

TEST_CASE("duplicate spans match as a multiset") {
  ParseTree gold = tree("(S (NP (NP (d the) (n dog))))");
  ParseTree test = tree("(S (NP (NP (NP (d the) (n dog)))))");
  ParsevalCounts c = parseval(gold, test);
  CHECK(c.matched == 2);
  CHECK(c.gold == 2);
  CHECK(c.test == 3);
}

TEST_CASE("nothing to match scores vacuously perfect") {
  ParsevalCounts c = parseval(tree("(S (n dog))"), tree("(S (v dog))"));
  CHECK(c.gold == 0);
  CHECK(c.test == 0);
  CHECK(c.precision() == 1.0);
  CHECK(c.recall() == 1.0);
}

TEST_CASE("yield mismatch is an error") {
  CHECK_THROWS_WITH_AS(
      parseval(tree(kGold), tree("(S (NP (d the) (n cat)) (VP (v runs)))")),
      "gold and test trees have different yields", Error);
}

TEST_CASE("swapping gold and test swaps precision and recall") {
  ParseTree a = tree(kGold);
  for (const char* other :
       {"(S (NP (d the)) (VP (n dog) (v runs)))",
        "(S (NP (X (d the) (n dog))) (VP (v runs)))", kGold}) {
    ParseTree b = tree(other);
    ParsevalCounts ab = parseval(a, b);
    ParsevalCounts ba = parseval(b, a);
    CHECK(ab.precision() == ba.recall());
    CHECK(ab.recall() == ba.precision());
    CHECK(ab.matched == ba.matched);
  }
}

TEST_CASE("corpus scores are micro-averaged and skip no-parses") {
  std::vector<ParseTree> gold = {tree(kGold), tree(kGold), tree(kGold)};
  std::vector<std::optional<ParseTree>> test = {
      tree("(S (NP (d the)) (VP (n dog) (v runs)))"), tree(kGold),
      std::nullopt};
  EvalReport r = score_corpus(gold, test);
  CHECK(r.scored == 2);
  CHECK(r.no_parse_count == 1);
  CHECK(r.counts.matched == 2);
  CHECK(r.counts.gold == 4);
  CHECK(r.counts.test == 4);
  CHECK(r.precision() == 0.5);
  CHECK(r.recall() == 0.5);

  CHECK_THROWS_WITH_AS(score_corpus(gold, {}),
                       "gold corpus has 3 trees but the test corpus has 0",
                       Error);
}

TEST_CASE("missing productions: identical corpora have none") {
  auto c = read_trees("(S (A a) (B b)) (S (A a) (A a))");
  CHECK(missing_productions(c, c).empty());

  Grammar npp = g("%start NP\nNP -> NP PP\nNP -> d n\nPP -> p NP\n");
  ProductionSet l = select_L(npp, LPolicy::l0).set;
  auto corpus = parse_corpus(npp, 8);
  for (FactorMode f :
       {FactorMode::none, FactorMode::td, FactorMode::lc, FactorMode::td_lc}) {
    TransformOptions o;
    o.factor = f;
    CHECK(missing_productions(corpus, corpus, npp, l, o).empty());
  }
}

TEST_CASE("missing productions: a new expansion is reported exactly once") {
  auto train = read_trees("(S (A a) (B b)) (S (A a) (A a))");
  auto test = read_trees("(S (B b) (A a)) (S (B b) (A a))");
  auto missing = missing_productions(train, test);
  REQUIRE(missing.size() == 1);
  CHECK(render(missing[0]) == "S -> B A");
}

TEST_CASE("transforming trees never shrinks the missing-production count") {
  const char* fixtures[] = {
      "%start S\nS -> S a\nS -> b\n",
      "%start NP\nNP -> NP PP\nNP -> d n\nPP -> p NP\n",
      "%start S\nS -> A\nS -> s\nA -> S d\nA -> a\n",
  };
  for (const char* fixture : fixtures) {
    Grammar gr = g(fixture);
    ProductionSet l = select_L(gr, LPolicy::l0).set;
    auto corpus = parse_corpus(gr, 8);
    REQUIRE(corpus.size() >= 3);
    std::vector<ParseTree> train, test;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      (i % 2 == 0 ? train : test).push_back(corpus[i]);
    }
    std::size_t plain = missing_productions(train, test).size();

    for (FactorMode f : {FactorMode::none, FactorMode::td, FactorMode::lc,
                         FactorMode::td_lc}) {
      for (EpsilonMode e :
           {EpsilonMode::keep, EpsilonMode::one_step, EpsilonMode::full}) {
        TransformOptions o;
        o.factor = f;
        o.epsilon = e;
        CHECK(missing_productions(train, test, gr, l, o).size() >= plain);
      }
    }
  }
}

TEST_CASE("lenient transform lets unseen test productions through") {
  Grammar gr = g("%start S\n0.4 S -> S a\n0.6 S -> b\n");
  ProductionSet l = select_L(gr, LPolicy::l0).set;
  auto train = read_trees("(S b) (S (S b) a)");
  auto test = read_trees("(S (S b) c)");
  TransformOptions o;
  auto missing = missing_productions(train, test, gr, l, o);
  CHECK(!missing.empty());
}

TEST_CASE("coverage report lists no-parse sentences, OOV included") {
  Grammar npp = g("%start NP\nNP -> NP PP\nNP -> d n\nPP -> p NP\n");
  std::vector<std::vector<std::string>> sentences = {
      tokens_of("d n"), tokens_of("d n p d n"), tokens_of("n d"),
      tokens_of("d x")};
  CoverageReport r = coverage_parse_report(npp, sentences);
  CHECK(r.total == 4);
  CHECK(r.no_parse == std::vector<std::size_t>{2, 3});
  CHECK(r.no_parse_count() == 2);
}
