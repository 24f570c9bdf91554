#include "lct/cky.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "lct/enumerate.hpp"
#include "lct/error.hpp"
#include "lct/transform.hpp"
#include "lct/tree.hpp"
#include "lct/tree_transform.hpp"
#include "test_support.hpp"

using namespace lct;
using test::g;
using test::tokens_of;

namespace {

const char* kSelfW = "%start S\n0.4 S -> S a\n0.6 S -> b\n";
const char* kNpPpW = "%start NP\n0.3 NP -> NP PP\n0.7 NP -> d n\n1 PP -> p NP\n";
const char* kMutualW =
    "%start S\n0.7 S -> A\n0.3 S -> s\n0.4 A -> S d\n0.6 A -> a\n";

std::vector<TransformOptions> all_combos() {
  std::vector<TransformOptions> out;
  for (FactorMode f :
       {FactorMode::none, FactorMode::td, FactorMode::lc, FactorMode::td_lc}) {
    for (EpsilonMode e :
         {EpsilonMode::keep, EpsilonMode::one_step, EpsilonMode::full}) {
      TransformOptions o;
      o.factor = f;
      o.epsilon = e;
      o.weighted = true;
      out.push_back(o);
    }
  }
  return out;
}

double tree_weight(const Grammar& gr, const ParseTree& t) {
  double w = 1.0;
  for (const Production& p : tree_productions(t)) {
    auto idx = gr.find(p.lhs, p.rhs);
    REQUIRE_MESSAGE(idx.has_value(), "missing production: " << render(p));
    w *= gr.productions()[*idx].weight;
  }
  return w;
}

}  // namespace

TEST_CASE("single-derivation sentence: weight and tree") {
  Grammar gr = g(kSelfW);
  auto out = cky_parse(gr, tokens_of("b a a"));
  REQUIRE(out.has_value());
  CHECK(std::exp(out->log_weight) == doctest::Approx(0.096).epsilon(1e-12));
  CHECK(write_tree(out->tree) == "(S (S (S b) a) a)");

  out = cky_parse(gr, tokens_of("b"));
  REQUIRE(out.has_value());
  CHECK(std::exp(out->log_weight) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(write_tree(out->tree) == "(S b)");
}

TEST_CASE("unparseable and malformed input") {
  Grammar gr = g(kSelfW);
  CHECK_FALSE(cky_parse(gr, tokens_of("a b")).has_value());
  CHECK_FALSE(cky_parse(gr, tokens_of("b b")).has_value());

  CHECK_THROWS_WITH_AS(cky_parse(gr, {}), "cannot parse an empty sentence",
                       Error);
  CHECK_THROWS_WITH_AS(cky_parse(gr, tokens_of("b c x")),
                       "out-of-vocabulary token(s): 'c', 'x'", Error);
}

TEST_CASE("transformed grammar: same weight, tree detransforms back") {
  Grammar gr = g(kSelfW);
  ProductionSet l = select_L(gr, LPolicy::l0).set;
  auto base = cky_parse(gr, tokens_of("b a a"));
  REQUIRE(base.has_value());

  for (const TransformOptions& o : all_combos()) {
    Grammar lcg = lc_transform(gr, l, o).grammar;
    auto out = cky_parse(lcg, tokens_of("b a a"));
    REQUIRE(out.has_value());
    CHECK(std::exp(out->log_weight) == doctest::Approx(0.096).epsilon(1e-12));
    CHECK(lc_tree_detransform(out->tree, o) == base->tree);
  }
}

TEST_CASE("ambiguity: maximum weight and pinned tie-break") {
  Grammar gr = g("%start S\n0.4 S -> S S\n0.6 S -> a\n");
  auto parses = enumerate_parses(gr, tokens_of("a a a"));
  REQUIRE(parses.size() == 2);
  double sum = 0.0;
  for (const WeightedTree& wt : parses) {
    CHECK(wt.weight == doctest::Approx(0.03456).epsilon(1e-12));
    sum += wt.weight;
  }
  CHECK(sum == doctest::Approx(0.06912).epsilon(1e-12));

  auto out = cky_parse(gr, tokens_of("a a a"));
  REQUIRE(out.has_value());
  CHECK(std::exp(out->log_weight) == doctest::Approx(0.03456).epsilon(1e-12));
  // Equal-weight candidates resolve to the leftmost split.
  CHECK(write_tree(out->tree) == "(S (S a) (S (S a) (S a)))");
}

TEST_CASE("unary chains are closed") {
  Grammar gr = g(
      "%start S\n0.5 S -> A\n0.5 S -> a\n0.9 A -> B\n0.1 A -> b\n1 B -> c\n");
  auto out = cky_parse(gr, tokens_of("c"));
  REQUIRE(out.has_value());
  CHECK(std::exp(out->log_weight) == doctest::Approx(0.45).epsilon(1e-12));
  CHECK(write_tree(out->tree) == "(S (A (B c)))");

  out = cky_parse(gr, tokens_of("b"));
  REQUIRE(out.has_value());
  CHECK(write_tree(out->tree) == "(S (A b))");
}

TEST_CASE("weight-1 unary cycles terminate with a shortest chain") {
  Grammar gr = g("%start S\nS -> T\nT -> S\nT -> S b\nS -> a\n");
  auto out = cky_parse(gr, tokens_of("a b"));
  REQUIRE(out.has_value());
  CHECK(out->log_weight == 0.0);
  CHECK(write_tree(out->tree) == "(S (T (S a) b))");

  out = cky_parse(gr, tokens_of("a"));
  REQUIRE(out.has_value());
  CHECK(write_tree(out->tree) == "(S a)");
}

TEST_CASE("n-ary productions are flattened invisibly") {
  Grammar gr = g("%start S\n1 S -> a b c d\n");
  auto out = cky_parse(gr, tokens_of("a b c d"));
  REQUIRE(out.has_value());
  CHECK(out->log_weight == 0.0);
  CHECK(write_tree(out->tree) == "(S a b c d)");
}

TEST_CASE("general epsilon grammars are rejected") {
  Grammar gr = g("%start S\nS -> A B\nA ->\nB -> b\n");
  CHECK_THROWS_WITH_AS(
      cky_parse(gr, tokens_of("b")),
      "the parser only supports epsilon productions introduced by the "
      "left-corner transform; found 'A ->'",
      Error);
}

TEST_CASE("Viterbi optimality against exhaustive enumeration") {
  for (const char* fixture : {kSelfW, kNpPpW, kMutualW}) {
    Grammar gr = g(fixture);
    ProductionSet l = select_L(gr, LPolicy::l0).set;

    std::vector<Grammar> grammars{gr};
    for (const TransformOptions& o : all_combos()) {
      grammars.push_back(lc_transform(gr, l, o).grammar);
    }

    for (const std::string& s : enumerate_strings(gr, 5)) {
      auto toks = tokens_of(s);
      for (const Grammar& cand : grammars) {
        auto parses = enumerate_parses(cand, toks);
        auto out = cky_parse(cand, toks);
        if (parses.empty()) {
          CHECK_FALSE(out.has_value());
          continue;
        }
        double best = 0.0;
        for (const WeightedTree& wt : parses) best = std::max(best, wt.weight);
        REQUIRE(out.has_value());
        CHECK(std::exp(out->log_weight) ==
              doctest::Approx(best).epsilon(1e-12));
        CHECK(std::exp(out->log_weight) ==
              doctest::Approx(tree_weight(cand, out->tree)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("parsing the transformed grammar simulates parsing the original") {
  for (const char* fixture : {kSelfW, kNpPpW, kMutualW}) {
    Grammar gr = g(fixture);
    ProductionSet l = select_L(gr, LPolicy::l0).set;
    bool chains_fold = fixture == kMutualW;  // unary production in L

    for (const std::string& s : enumerate_strings(gr, 6)) {
      auto toks = tokens_of(s);
      auto base = cky_parse(gr, toks);
      REQUIRE(base.has_value());

      for (const TransformOptions& o : all_combos()) {
        Grammar lcg = lc_transform(gr, l, o).grammar;
        auto out = cky_parse(lcg, toks);
        REQUIRE(out.has_value());
        CHECK(out->log_weight ==
              doctest::Approx(base->log_weight).epsilon(1e-12));
        if (o.epsilon == EpsilonMode::full && chains_fold) continue;
        CHECK(lc_tree_detransform(out->tree, o) == base->tree);
      }
    }
  }
}

TEST_CASE("identical input yields identical output") {
  Grammar gr = g(kNpPpW);
  auto a = cky_parse(gr, tokens_of("d n p d n p d n"));
  auto b = cky_parse(gr, tokens_of("d n p d n p d n"));
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  CHECK(a->log_weight == b->log_weight);
  CHECK(write_tree(a->tree) == write_tree(b->tree));
}
