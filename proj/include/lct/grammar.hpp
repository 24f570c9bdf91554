#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "lct/symbol.hpp"

namespace lct {

struct Production {
  Symbol lhs;
  std::vector<Symbol> rhs;  // empty rhs is an epsilon production
  double weight = 1.0;
};

bool same_shape(const Production& a, const Production& b);
std::string render(const Production& p);

struct ProductionShapeHash {
  std::size_t operator()(const Production& p) const;
};
struct ProductionShapeEq {
  bool operator()(const Production& a, const Production& b) const {
    return same_shape(a, b);
  }
};

struct GrammarStats {
  std::size_t production_count = 0;
  std::size_t nonterminal_count = 0;
  std::size_t terminal_count = 0;
  std::size_t total_rhs_symbols = 0;
};

// An immutable (P)CFG. Duplicate productions are merged at construction with
// their weights summed; otherwise production order is preserved. Nonterminals
// and terminals are taken from the symbols' own kinds; a name may not be used
// with both kinds.
class Grammar {
 public:
  Grammar() = default;

  static Grammar make(
      std::vector<Production> productions, Symbol start,
      std::optional<std::set<std::string>> pos_tags = std::nullopt,
      bool weighted = false);

  const std::vector<Production>& productions() const { return productions_; }
  const Symbol& start() const { return start_; }
  const std::set<Symbol>& nonterminals() const { return nonterminals_; }
  const std::set<Symbol>& terminals() const { return terminals_; }
  // Declared part-of-speech tag names (an inventory, not symbols: whether a
  // name is a terminal or a nonterminal stays determined by the productions).
  const std::optional<std::set<std::string>>& pos_tags() const {
    return pos_tags_;
  }
  bool weighted() const { return weighted_; }

  // Set by prune_useless when the start symbol derives no terminal string.
  bool empty_language_warning() const { return empty_language_warning_; }
  void set_empty_language_warning() { empty_language_warning_ = true; }

  // Indices into productions() with the given left-hand side.
  const std::vector<std::size_t>& productions_of(const Symbol& lhs) const;
  std::optional<std::size_t> find(const Symbol& lhs,
                                  const std::vector<Symbol>& rhs) const;

  bool is_epsilon_free() const;
  // All weights in (0, inf) and per-LHS weights summing to 1 within tol.
  bool is_proper(double tol = 1e-9) const;
  GrammarStats stats() const;

 private:
  std::vector<Production> productions_;
  Symbol start_;
  std::set<Symbol> nonterminals_;
  std::set<Symbol> terminals_;
  std::optional<std::set<std::string>> pos_tags_;
  bool weighted_ = false;
  bool empty_language_warning_ = false;
  std::unordered_map<Symbol, std::vector<std::size_t>, SymbolHash> by_lhs_;
  std::unordered_map<Production, std::size_t, ProductionShapeHash,
                     ProductionShapeEq>
      by_shape_;
};

// Structural equality: same start, same production multiset (and weights,
// within tol, when compare_weights), same nonterminal/terminal sets.
bool grammars_equal(const Grammar& a, const Grammar& b,
                    bool compare_weights = true, double tol = 0.0);

// Removes productions that are unreachable from the start symbol or contain
// a symbol that derives no terminal string. If the start symbol itself is
// unproductive the result has an empty production set and carries the
// empty-language warning flag.
Grammar prune_useless(const Grammar& g);

// Variant used internally: also reports which production indices survive.
Grammar prune_useless(const Grammar& g, std::vector<std::size_t>* kept);

}  // namespace lct
