#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lct/grammar.hpp"
#include "lct/relations.hpp"
#include "lct/transform.hpp"
#include "lct/tree.hpp"

namespace lct {

struct Constituent {
  std::string label;
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const Constituent&, const Constituent&) = default;
  friend auto operator<=>(const Constituent&, const Constituent&) = default;
};

// Labelled spans (label, start, end) over the tree's yield, in preorder,
// with multiplicity. The root node, preterminal nodes (a single terminal
// child) and zero-width nodes (empty yield) are excluded.
std::vector<Constituent> labelled_constituents(const ParseTree& t);

struct ParsevalCounts {
  std::size_t matched = 0;
  std::size_t gold = 0;
  std::size_t test = 0;

  // matched/test and matched/gold; a ratio over zero constituents is 1.0
  // (two trees with nothing to match agree vacuously).
  double precision() const;
  double recall() const;

  ParsevalCounts& operator+=(const ParsevalCounts& other);
};

// Labelled precision/recall between two trees over the same yield (error
// otherwise). Constituents are matched as multisets.
ParsevalCounts parseval(const ParseTree& gold, const ParseTree& test);

// Micro-averaged corpus evaluation: constituent counts are summed over the
// scored pairs. A test entry that is absent (no parse) is excluded from the
// counts and tallied separately.
struct EvalReport {
  ParsevalCounts counts;
  std::size_t scored = 0;
  std::size_t no_parse_count = 0;
  std::size_t missing_production_count = 0;

  double precision() const { return counts.precision(); }
  double recall() const { return counts.recall(); }
};

EvalReport score_corpus(const std::vector<ParseTree>& gold,
                        const std::vector<std::optional<ParseTree>>& test);

// Distinct productions of the test trees that never occur in the train
// trees, in test-corpus order of first occurrence.
std::vector<Production> missing_productions(
    const std::vector<ParseTree>& train, const std::vector<ParseTree>& test);

// The same count after transforming both corpora with the given settings.
// Trees are transformed leniently: a production outside g is treated as
// recognized top-down rather than rejected.
std::vector<Production> missing_productions(const std::vector<ParseTree>& train,
                                            const std::vector<ParseTree>& test,
                                            const Grammar& g,
                                            const ProductionSet& l,
                                            const TransformOptions& opts);

// Sentences that do not receive a parse under g. A sentence whose tokens are
// out of vocabulary counts as a no-parse rather than an error, so coverage
// can be measured for grammars estimated from small corpora.
struct CoverageReport {
  std::size_t total = 0;
  std::vector<std::size_t> no_parse;  // sentence indices, ascending

  std::size_t no_parse_count() const { return no_parse.size(); }
};

CoverageReport coverage_parse_report(
    const Grammar& g, const std::vector<std::vector<std::string>>& sentences);

}  // namespace lct
