#pragma once

#include <random>

#include "lct/grammar.hpp"
#include "lct/tree.hpp"

namespace lct {

struct RandomGrammarParams {
  int max_nonterminals = 8;
  int max_productions = 25;
  int max_rhs_len = 4;
  int terminals = 6;
};

// Seeded random ε-free grammar with no unary cycles: nonterminals X0…, start
// X0, terminals t0…. Left-recursive productions are deliberately frequent.
// The result is useless-pruned, so every symbol is reachable and productive;
// degenerate draws are resampled. Deterministic for a given generator state.
Grammar random_grammar(std::mt19937& rng, const RandomGrammarParams& params);

// Random derivation of the start symbol. Productions are drawn uniformly
// while the node budget lasts; after that every choice takes a production
// with the shallowest completion, so sampling terminates on any ε-free
// grammar, left-recursive or unary-cyclic ones included.
ParseTree random_tree(const Grammar& g, std::mt19937& rng,
                      int size_budget = 40);

}  // namespace lct
