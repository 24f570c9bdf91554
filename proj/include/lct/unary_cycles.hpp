#pragma once

#include "lct/grammar.hpp"
#include "lct/relations.hpp"

namespace lct {

// Collapses unary cycles: every nonterminal A on a unary cycle keeps only
// productions A→NAT(D) for the D on its cycle, and its former productions
// move to NAT(A) — except those whose right-hand side derives A again by a
// unary chain, which are absorbed into the cycle. On weighted grammars the
// NAT weights are the closed-form chain sums (an error if they diverge), so
// string probabilities are preserved. Grammars without unary cycles are
// returned unchanged.
Grammar remove_unary_cycles(const Grammar& g);

}  // namespace lct
