#include "lct/estimate.hpp"

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "lct/error.hpp"

namespace lct {

Grammar estimate_pcfg(const std::vector<ParseTree>& corpus,
                      const Symbol& start) {
  if (corpus.empty()) {
    throw Error("cannot estimate a grammar from an empty corpus");
  }
  if (!start.is_nonterminal()) {
    throw Error("the start symbol of an estimated grammar must be a "
                "nonterminal, got '" +
                start.render() + "'");
  }

  // Distinct productions in first-occurrence order, with occurrence counts,
  // plus per-LHS totals.
  std::vector<Production> inventory;
  std::vector<std::size_t> counts;
  std::unordered_map<Production, std::size_t, ProductionShapeHash,
                     ProductionShapeEq>
      index_of;
  std::unordered_map<Symbol, std::size_t, SymbolHash> lhs_total;

  for (const ParseTree& t : corpus) {
    check_tree(t);
    if (!(t.label == start)) {
      throw Error("corpus tree rooted at '" + t.label.render() +
                  "' does not match the start symbol '" + start.render() +
                  "'");
    }
    for (Production& p : tree_productions(t)) {
      ++lhs_total[p.lhs];
      auto [it, inserted] = index_of.try_emplace(p, inventory.size());
      if (inserted) {
        inventory.push_back(std::move(p));
        counts.push_back(1);
      } else {
        ++counts[it->second];
      }
    }
  }

  for (std::size_t i = 0; i < inventory.size(); ++i) {
    inventory[i].weight = static_cast<double>(counts[i]) /
                          static_cast<double>(lhs_total.at(inventory[i].lhs));
  }
  return Grammar::make(std::move(inventory), start, std::nullopt,
                       /*weighted=*/true);
}

}  // namespace lct
