#pragma once

#include "lct/grammar.hpp"
#include "lct/relations.hpp"
#include "lct/transform.hpp"
#include "lct/tree.hpp"

namespace lct {

// Rewrites a parse tree of g into the corresponding parse tree of
// lc_transform(g, L, opts).grammar: each maximal left spine of L
// productions becomes a right-leaning LC chain, factored and stripped of
// empty categories exactly as the grammar transform prescribes. The yield
// is unchanged. With strict = false, productions absent from g are treated
// as if they were outside L (useful for trees the grammar does not fully
// cover); with strict = true they are an error.
//
// The moore_constraint, prune_links and weighted options have no effect on
// trees: a tree witnesses its own derivation, so no filtering applies.
ParseTree lc_tree_transform(const ParseTree& t, const Grammar& g,
                            const ProductionSet& l,
                            const TransformOptions& opts, bool strict = true);

// Inverse of lc_tree_transform, reading the spine structure back off the
// node labels alone; the grammar and L are not consulted. Exact for keep
// and one_step trees. A full-mode tree is rebuilt exactly when no unary
// chain of L productions was folded into a composed step: a folded chain
// that factoring recorded (a TD or PT argument naming a category other
// than the predicted one) is an error, and an unrecorded one is silently
// rebuilt as if the chain were empty. Malformed trees raise Error naming
// the offending node by its child path.
ParseTree lc_tree_detransform(const ParseTree& t, const TransformOptions& opts);

// Tree counterpart of remove_unary_cycles: each maximal unary chain of
// cyclic nonterminals within a single component collapses to the chain's
// top label over one NAT node for the label at the chain's bottom. The
// yield is preserved, and every production of the result belongs to
// remove_unary_cycles of the tree's grammar.
ParseTree break_unary_cycles_tree(const ParseTree& t,
                                  const UnaryCycleInfo& info);

}  // namespace lct
