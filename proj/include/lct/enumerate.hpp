#pragma once

#include <set>
#include <string>
#include <vector>

#include "lct/grammar.hpp"
#include "lct/tree.hpp"

namespace lct {

// All terminal strings of length ≤ max_len derivable from the start symbol,
// space-joined. Breadth-first leftmost derivation with minimum-yield pruning;
// terminates on left-recursive and unary-cyclic grammars. max_len ≤ 12.
std::set<std::string> enumerate_strings(const Grammar& g, int max_len);

struct WeightedTree {
  ParseTree tree;
  double weight = 1.0;
};

// Every complete parse of the token sequence, with exact weights (their sum
// is the string probability for a proper PCFG). Guards: |tokens| ≤ 8 and no
// unary (or vanishing-prefix) cycles, which would make the parse set
// infinite. Unparseable or out-of-vocabulary input yields an empty set.
std::vector<WeightedTree> enumerate_parses(const Grammar& g,
                                           const std::vector<std::string>& tokens);

}  // namespace lct
