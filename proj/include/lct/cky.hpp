#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lct/grammar.hpp"
#include "lct/tree.hpp"

namespace lct {

struct CkyParse {
  // A parse tree over the input grammar's own productions. Internal
  // binarization is erased, and productions removed by the ε adapter are
  // restored as explicit ε nodes, so the tree is directly comparable with
  // enumerated parses and remains detransformable.
  ParseTree tree;
  // Natural log of the product of the production weights in `tree`.
  double log_weight = 0.0;
};

// Exhaustive weighted CKY (Viterbi) parse: the maximum-weight parse of
// `tokens` rooted at the start symbol and spanning the whole sentence, or
// absent when no parse exists.
//
// The grammar must be ε-free, except for ε-productions whose left-hand side
// is a transform-introduced symbol (LC(D;B) or PT(C;B)); those are removed up
// front by composing them into consuming productions, and the corresponding
// ε subtrees are reinserted in the result. General ε-grammars are rejected.
//
// n-ary productions are binarized internally with dotted symbols that never
// appear in the output. Ties are broken deterministically: lowest production
// order (then lowest composed-variant order) first, then leftmost split.
// Unary productions are closed per cell by relaxation with strict
// improvement, so weight-1 unary cycles terminate with a shortest chain;
// a cycle that keeps improving its weight is reported as an error.
//
// Errors: empty sentence; tokens that are not terminals of the grammar
// (all offending tokens listed).
std::optional<CkyParse> cky_parse(const Grammar& g,
                                  const std::vector<std::string>& tokens);

}  // namespace lct
