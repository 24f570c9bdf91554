#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "lct/grammar.hpp"
#include "lct/symbol.hpp"

namespace lct {

using SymbolPair = std::pair<Symbol, Symbol>;

struct SymbolPairHash {
  std::size_t operator()(const SymbolPair& p) const {
    SymbolHash h;
    std::size_t a = h(p.first);
    return a ^ (h(p.second) + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  }
};

using PairRelation = std::unordered_set<SymbolPair, SymbolPairHash>;

// A subset of a grammar's productions, held as sorted unique indices into
// g.productions().
class ProductionSet {
 public:
  ProductionSet() = default;
  static ProductionSet from_indices(const Grammar& g,
                                    std::vector<std::size_t> indices);
  // Looks each shape up in g; unknown productions are an error.
  static ProductionSet from_shapes(const Grammar& g,
                                   const std::vector<Production>& shapes);
  static ProductionSet all(const Grammar& g);

  bool contains(std::size_t index) const {
    return index < mask_.size() && mask_[index];
  }
  const std::vector<std::size_t>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }

 private:
  std::vector<std::size_t> indices_;
  std::vector<char> mask_;
};

// Reflexive-transitive closure of the first-symbol edges {(C,B) : C→Bβ ∈ L}.
// (D,X) ∈ result iff D ⇒*_L Xγ for some γ; reflexive pairs cover every
// nonterminal, and X may be a terminal.
PairRelation left_corner_relation(const Grammar& g, const ProductionSet& L);

// (D,X) ∈ result iff D ⇒*_L Xγ with γ nonempty, i.e. some chain from D to X
// uses at least one production with two or more right-hand-side symbols.
PairRelation strict_left_corner_relation(const Grammar& g,
                                         const ProductionSet& L);

// Closure of the unary productions in L: (D,X) iff D ⇒*_L X where every step
// rewrites the whole (single-symbol) form. Reflexive pairs cover every
// nonterminal; X may be a terminal. The plus variant requires at least one
// step.
PairRelation unary_chain_relation(const Grammar& g, const ProductionSet& L);
PairRelation unary_chain_relation_plus(const Grammar& g,
                                       const ProductionSet& L);

// Proper left-corner relation over all productions: (A,X) iff A ⇒+ Xγ where
// the chain descends through first symbols, skipping nullable prefixes. The
// grammar is left-recursive iff some (A,A) is present.
PairRelation proper_left_corner_relation(const Grammar& g);
bool is_left_recursive(const Grammar& g);

// L0: the left-recursive productions {A→Bβ ∈ P : B ⇒* Aγ}. Errors out on
// unary cycles (remove_unary_cycles must run first).
ProductionSet left_recursive_set(const Grammar& g);

// Nonterminals A with A ⇒+ A via unary productions only.
std::set<Symbol> cyclic_nonterminals(const Grammar& g);

// Cyclic nonterminals together with their partition into strongly connected
// components of the unary-production graph (ids are deterministic).
struct UnaryCycleInfo {
  std::set<Symbol> cyclic;
  std::unordered_map<Symbol, int, SymbolHash> scc_id;
  bool empty() const { return cyclic.empty(); }
};
UnaryCycleInfo unary_cycle_info(const Grammar& g);

enum class LPolicy { all, non_pos_initial, l0 };

struct LSelection {
  ProductionSet set;
  std::vector<std::string> warnings;
};

LSelection select_L(const Grammar& g, LPolicy policy);
// Explicit selection; warns when the set misses part of L0 (the result may
// then still be left-recursive).
LSelection select_L_explicit(const Grammar& g,
                             const std::vector<Production>& shapes);

}  // namespace lct
