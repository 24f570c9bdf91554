#include "lct/parseval.hpp"

#include <algorithm>
#include <unordered_set>

#include "lct/cky.hpp"
#include "lct/error.hpp"
#include "lct/tree_transform.hpp"

namespace lct {
namespace {

bool is_preterminal(const ParseTree& t) {
  return t.children.size() == 1 && t.children[0].is_leaf() &&
         t.children[0].label.is_terminal();
}

std::size_t walk(const ParseTree& t, std::size_t start, bool root,
                 std::vector<Constituent>& out) {
  if (t.is_leaf()) return start + (t.label.is_epsilon() ? 0 : 1);

  bool counted = !root && !is_preterminal(t);
  std::size_t slot = out.size();
  if (counted) out.push_back({t.label.render(), start, start});
  std::size_t pos = start;
  for (const ParseTree& c : t.children) pos = walk(c, pos, false, out);
  if (counted) {
    if (pos == start) {
      out.erase(out.begin() + static_cast<std::ptrdiff_t>(slot));
    } else {
      out[slot].end = pos;
    }
  }
  return pos;
}

using ShapeSet =
    std::unordered_set<Production, ProductionShapeHash, ProductionShapeEq>;

}  // namespace

std::vector<Constituent> labelled_constituents(const ParseTree& t) {
  std::vector<Constituent> out;
  walk(t, 0, true, out);
  return out;
}

double ParsevalCounts::precision() const {
  return test == 0 ? 1.0
                   : static_cast<double>(matched) / static_cast<double>(test);
}

double ParsevalCounts::recall() const {
  return gold == 0 ? 1.0
                   : static_cast<double>(matched) / static_cast<double>(gold);
}

ParsevalCounts& ParsevalCounts::operator+=(const ParsevalCounts& other) {
  matched += other.matched;
  gold += other.gold;
  test += other.test;
  return *this;
}

ParsevalCounts parseval(const ParseTree& gold, const ParseTree& test) {
  if (tree_yield(gold) != tree_yield(test)) {
    throw Error("gold and test trees have different yields");
  }
  std::vector<Constituent> a = labelled_constituents(gold);
  std::vector<Constituent> b = labelled_constituents(test);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());

  ParsevalCounts counts;
  counts.gold = a.size();
  counts.test = b.size();
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++counts.matched;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return counts;
}

EvalReport score_corpus(const std::vector<ParseTree>& gold,
                        const std::vector<std::optional<ParseTree>>& test) {
  if (gold.size() != test.size()) {
    throw Error("gold corpus has " + std::to_string(gold.size()) +
                " trees but the test corpus has " +
                std::to_string(test.size()));
  }
  EvalReport report;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (!test[i].has_value()) {
      ++report.no_parse_count;
      continue;
    }
    report.counts += parseval(gold[i], *test[i]);
    ++report.scored;
  }
  return report;
}

std::vector<Production> missing_productions(
    const std::vector<ParseTree>& train, const std::vector<ParseTree>& test) {
  ShapeSet seen;
  for (const ParseTree& t : train) {
    for (Production& p : tree_productions(t)) seen.insert(std::move(p));
  }
  std::vector<Production> out;
  ShapeSet reported;
  for (const ParseTree& t : test) {
    for (Production& p : tree_productions(t)) {
      if (!seen.count(p) && reported.insert(p).second) {
        out.push_back(std::move(p));
      }
    }
  }
  return out;
}

std::vector<Production> missing_productions(const std::vector<ParseTree>& train,
                                            const std::vector<ParseTree>& test,
                                            const Grammar& g,
                                            const ProductionSet& l,
                                            const TransformOptions& opts) {
  auto transform = [&](const std::vector<ParseTree>& corpus) {
    std::vector<ParseTree> out;
    out.reserve(corpus.size());
    for (const ParseTree& t : corpus) {
      out.push_back(lc_tree_transform(t, g, l, opts, /*strict=*/false));
    }
    return out;
  };
  return missing_productions(transform(train), transform(test));
}

CoverageReport coverage_parse_report(
    const Grammar& g, const std::vector<std::vector<std::string>>& sentences) {
  CoverageReport report;
  report.total = sentences.size();
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    bool parsed = false;
    try {
      parsed = cky_parse(g, sentences[i]).has_value();
    } catch (const Error&) {
      parsed = false;
    }
    if (!parsed) report.no_parse.push_back(i);
  }
  return report;
}

}  // namespace lct
