#pragma once

#include <vector>

#include "lct/grammar.hpp"
#include "lct/tree.hpp"

namespace lct {

// Maximum-likelihood PCFG estimation from a tree corpus.
//
// Every internal node of every tree contributes one production occurrence;
// the weight of A -> alpha is count(A -> alpha) / count(A). The resulting
// grammar is weighted and proper, and its production inventory is exactly
// the set of distinct productions observed in the corpus (no smoothing:
// unseen productions are absent). Productions appear in first-occurrence
// order, so the estimate is independent of corpus order up to production
// ordering.
//
// Errors: empty corpus; a tree not rooted at `start`; a tree violating the
// tree invariants (see check_tree).
Grammar estimate_pcfg(const std::vector<ParseTree>& corpus, const Symbol& start);

}  // namespace lct
