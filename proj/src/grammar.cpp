#include "lct/grammar.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_set>

#include "lct/error.hpp"

namespace lct {

bool same_shape(const Production& a, const Production& b) {
  return a.lhs == b.lhs && a.rhs == b.rhs;
}

std::string render(const Production& p) {
  std::string out = p.lhs.render();
  out += " ->";
  for (const Symbol& s : p.rhs) {
    out += ' ';
    out += s.render();
  }
  return out;
}

std::size_t ProductionShapeHash::operator()(const Production& p) const {
  SymbolHash h;
  std::size_t seed = h(p.lhs);
  for (const Symbol& s : p.rhs) {
    seed ^= h(s) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  }
  return seed;
}

Grammar Grammar::make(std::vector<Production> productions, Symbol start,
                      std::optional<std::set<std::string>> pos_tags,
                      bool weighted) {
  if (!start.is_nonterminal()) {
    throw Error("start symbol '" + start.render() + "' is not a nonterminal");
  }
  Grammar g;
  g.start_ = start;
  g.weighted_ = weighted;
  g.nonterminals_.insert(start);

  auto note_symbol = [&g](const Symbol& s) {
    if (s.is_terminal()) {
      g.terminals_.insert(s);
    } else {
      g.nonterminals_.insert(s);
    }
  };

  for (Production& p : productions) {
    if (!p.lhs.is_nonterminal()) {
      throw Error("production '" + render(p) +
                  "' has a non-nonterminal left-hand side");
    }
    if (!(p.weight > 0.0) || !std::isfinite(p.weight)) {
      throw Error("production '" + render(p) + "' has non-positive weight");
    }
    for (const Symbol& s : p.rhs) {
      if (s.is_epsilon()) {
        throw Error("production '" + render(p) +
                    "' contains the epsilon marker; use an empty "
                    "right-hand side instead");
      }
    }
    auto it = g.by_shape_.find(p);
    if (it != g.by_shape_.end()) {
      g.productions_[it->second].weight += p.weight;
      continue;
    }
    note_symbol(p.lhs);
    for (const Symbol& s : p.rhs) note_symbol(s);
    std::size_t idx = g.productions_.size();
    g.productions_.push_back(std::move(p));
    g.by_shape_.emplace(g.productions_.back(), idx);
    g.by_lhs_[g.productions_.back().lhs].push_back(idx);
  }

  for (const Symbol& t : g.terminals_) {
    Symbol as_nt = Symbol::nonterminal(t.head());
    if (g.nonterminals_.count(as_nt) > 0) {
      throw Error("name '" + t.head() +
                  "' is used both as a terminal and as a nonterminal");
    }
  }
  for (const Production& p : g.productions_) {
    if (g.weighted_) break;
    if (p.weight != 1.0) g.weighted_ = true;
  }

  g.pos_tags_ = std::move(pos_tags);
  return g;
}

const std::vector<std::size_t>& Grammar::productions_of(
    const Symbol& lhs) const {
  static const std::vector<std::size_t> kEmpty;
  auto it = by_lhs_.find(lhs);
  return it == by_lhs_.end() ? kEmpty : it->second;
}

std::optional<std::size_t> Grammar::find(const Symbol& lhs,
                                         const std::vector<Symbol>& rhs) const {
  Production probe{lhs, rhs, 1.0};
  auto it = by_shape_.find(probe);
  if (it == by_shape_.end()) return std::nullopt;
  return it->second;
}

bool Grammar::is_epsilon_free() const {
  return std::none_of(productions_.begin(), productions_.end(),
                      [](const Production& p) { return p.rhs.empty(); });
}

bool Grammar::is_proper(double tol) const {
  for (const auto& [lhs, indices] : by_lhs_) {
    double total = 0.0;
    for (std::size_t i : indices) total += productions_[i].weight;
    if (std::abs(total - 1.0) > tol) return false;
  }
  return true;
}

GrammarStats Grammar::stats() const {
  GrammarStats s;
  s.production_count = productions_.size();
  s.nonterminal_count = nonterminals_.size();
  s.terminal_count = terminals_.size();
  for (const Production& p : productions_) s.total_rhs_symbols += p.rhs.size();
  return s;
}

bool grammars_equal(const Grammar& a, const Grammar& b, bool compare_weights,
                    double tol) {
  if (a.start() != b.start()) return false;
  if (a.productions().size() != b.productions().size()) return false;
  if (a.nonterminals() != b.nonterminals()) return false;
  if (a.terminals() != b.terminals()) return false;
  for (const Production& p : a.productions()) {
    auto j = b.find(p.lhs, p.rhs);
    if (!j) return false;
    if (compare_weights &&
        std::abs(b.productions()[*j].weight - p.weight) > tol) {
      return false;
    }
  }
  return true;
}

Grammar prune_useless(const Grammar& g) {
  return prune_useless(g, nullptr);
}

Grammar prune_useless(const Grammar& g, std::vector<std::size_t>* kept_out) {
  const auto& prods = g.productions();

  // Productive nonterminals: fixpoint over productions whose right-hand-side
  // nonterminals are all already productive.
  std::unordered_set<Symbol, SymbolHash> productive;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Production& p : prods) {
      if (productive.count(p.lhs) > 0) continue;
      bool ok = true;
      for (const Symbol& s : p.rhs) {
        if (!s.is_terminal() && productive.count(s) == 0) {
          ok = false;
          break;
        }
      }
      if (ok) {
        productive.insert(p.lhs);
        changed = true;
      }
    }
  }

  auto production_ok = [&productive](const Production& p) {
    if (productive.count(p.lhs) == 0) return false;
    for (const Symbol& s : p.rhs) {
      if (!s.is_terminal() && productive.count(s) == 0) return false;
    }
    return true;
  };

  // Reachability from the start symbol over the productive productions.
  std::unordered_set<Symbol, SymbolHash> reachable{g.start()};
  std::deque<Symbol> queue{g.start()};
  while (!queue.empty()) {
    Symbol cur = queue.front();
    queue.pop_front();
    for (std::size_t i : g.productions_of(cur)) {
      if (!production_ok(prods[i])) continue;
      for (const Symbol& s : prods[i].rhs) {
        if (!s.is_terminal() && reachable.insert(s).second) {
          queue.push_back(s);
        }
      }
    }
  }

  std::vector<Production> kept;
  if (kept_out) kept_out->clear();
  for (std::size_t i = 0; i < prods.size(); ++i) {
    if (production_ok(prods[i]) && reachable.count(prods[i].lhs) > 0) {
      kept.push_back(prods[i]);
      if (kept_out) kept_out->push_back(i);
    }
  }

  Grammar result =
      Grammar::make(std::move(kept), g.start(), g.pos_tags(), g.weighted());
  if (productive.count(g.start()) == 0) result.set_empty_language_warning();
  return result;
}

}  // namespace lct
