#include "lct/relations.hpp"

#include <algorithm>
#include <deque>

#include "lct/error.hpp"

namespace lct {
namespace {

using Firsts = std::unordered_map<Symbol, std::vector<std::pair<Symbol, bool>>,
                                  SymbolHash>;

// First-symbol edges of the productions in L; the flag records whether the
// production has two or more right-hand-side symbols.
Firsts first_symbol_edges(const Grammar& g, const ProductionSet& L) {
  Firsts firsts;
  for (std::size_t i : L.indices()) {
    const Production& p = g.productions()[i];
    if (p.rhs.empty()) continue;
    firsts[p.lhs].emplace_back(p.rhs[0], p.rhs.size() >= 2);
  }
  return firsts;
}

}  // namespace

ProductionSet ProductionSet::from_indices(const Grammar& g,
                                          std::vector<std::size_t> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  if (!indices.empty() && indices.back() >= g.productions().size()) {
    throw Error("production index out of range");
  }
  ProductionSet s;
  s.mask_.assign(g.productions().size(), 0);
  for (std::size_t i : indices) s.mask_[i] = 1;
  s.indices_ = std::move(indices);
  return s;
}

ProductionSet ProductionSet::from_shapes(
    const Grammar& g, const std::vector<Production>& shapes) {
  std::vector<std::size_t> indices;
  indices.reserve(shapes.size());
  for (const Production& p : shapes) {
    auto idx = g.find(p.lhs, p.rhs);
    if (!idx) {
      throw Error("production '" + render(p) + "' is not in the grammar");
    }
    indices.push_back(*idx);
  }
  return from_indices(g, std::move(indices));
}

ProductionSet ProductionSet::all(const Grammar& g) {
  std::vector<std::size_t> indices(g.productions().size());
  for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
  return from_indices(g, std::move(indices));
}

PairRelation left_corner_relation(const Grammar& g, const ProductionSet& L) {
  Firsts firsts = first_symbol_edges(g, L);
  PairRelation rel;
  for (const Symbol& d : g.nonterminals()) {
    std::unordered_set<Symbol, SymbolHash> seen{d};
    std::deque<Symbol> queue{d};
    rel.emplace(d, d);
    while (!queue.empty()) {
      Symbol cur = queue.front();
      queue.pop_front();
      auto it = firsts.find(cur);
      if (it == firsts.end()) continue;
      for (const auto& [next, wide] : it->second) {
        (void)wide;
        if (!seen.insert(next).second) continue;
        rel.emplace(d, next);
        if (!next.is_terminal()) queue.push_back(next);
      }
    }
  }
  return rel;
}

PairRelation strict_left_corner_relation(const Grammar& g,
                                         const ProductionSet& L) {
  Firsts firsts = first_symbol_edges(g, L);
  PairRelation rel;
  for (const Symbol& d : g.nonterminals()) {
    // State: (symbol, whether some production so far had |RHS| >= 2).
    std::unordered_map<Symbol, std::array<bool, 2>, SymbolHash> seen;
    seen[d][0] = true;
    std::deque<std::pair<Symbol, bool>> queue{{d, false}};
    while (!queue.empty()) {
      auto [cur, wide] = queue.front();
      queue.pop_front();
      auto it = firsts.find(cur);
      if (it == firsts.end()) continue;
      for (const auto& [next, prod_wide] : it->second) {
        bool next_wide = wide || prod_wide;
        auto& flags = seen[next];
        if (flags[next_wide ? 1 : 0]) continue;
        flags[next_wide ? 1 : 0] = true;
        if (next_wide) rel.emplace(d, next);
        if (!next.is_terminal()) queue.emplace_back(next, next_wide);
      }
    }
  }
  return rel;
}

namespace {

PairRelation unary_closure(const Grammar& g, const ProductionSet& L,
                           bool reflexive) {
  std::unordered_map<Symbol, std::vector<Symbol>, SymbolHash> edges;
  for (std::size_t i : L.indices()) {
    const Production& p = g.productions()[i];
    if (p.rhs.size() == 1) edges[p.lhs].push_back(p.rhs[0]);
  }
  PairRelation rel;
  for (const Symbol& d : g.nonterminals()) {
    if (reflexive) rel.emplace(d, d);
    std::unordered_set<Symbol, SymbolHash> seen;
    std::deque<Symbol> queue{d};
    while (!queue.empty()) {
      Symbol cur = queue.front();
      queue.pop_front();
      auto it = edges.find(cur);
      if (it == edges.end()) continue;
      for (const Symbol& next : it->second) {
        if (!seen.insert(next).second) continue;
        rel.emplace(d, next);
        if (!next.is_terminal()) queue.push_back(next);
      }
    }
  }
  return rel;
}

}  // namespace

PairRelation unary_chain_relation(const Grammar& g, const ProductionSet& L) {
  return unary_closure(g, L, /*reflexive=*/true);
}

PairRelation unary_chain_relation_plus(const Grammar& g,
                                       const ProductionSet& L) {
  return unary_closure(g, L, /*reflexive=*/false);
}

PairRelation proper_left_corner_relation(const Grammar& g) {
  // Nullable nonterminals (X ⇒* ε), so corners hidden behind vanishing
  // prefixes still count.
  std::unordered_set<Symbol, SymbolHash> nullable;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Production& p : g.productions()) {
      if (nullable.count(p.lhs) > 0) continue;
      bool all = true;
      for (const Symbol& s : p.rhs) {
        if (s.is_terminal() || nullable.count(s) == 0) {
          all = false;
          break;
        }
      }
      if (all) {
        nullable.insert(p.lhs);
        changed = true;
      }
    }
  }

  std::unordered_map<Symbol, std::vector<Symbol>, SymbolHash> edges;
  for (const Production& p : g.productions()) {
    for (const Symbol& s : p.rhs) {
      edges[p.lhs].push_back(s);
      if (s.is_terminal() || nullable.count(s) == 0) break;
    }
  }

  PairRelation rel;
  for (const Symbol& d : g.nonterminals()) {
    std::unordered_set<Symbol, SymbolHash> seen;
    std::deque<Symbol> queue{d};
    while (!queue.empty()) {
      Symbol cur = queue.front();
      queue.pop_front();
      auto it = edges.find(cur);
      if (it == edges.end()) continue;
      for (const Symbol& next : it->second) {
        if (!seen.insert(next).second) continue;
        rel.emplace(d, next);
        if (!next.is_terminal()) queue.push_back(next);
      }
    }
  }
  return rel;
}

bool is_left_recursive(const Grammar& g) {
  PairRelation rel = proper_left_corner_relation(g);
  for (const Symbol& a : g.nonterminals()) {
    if (rel.count({a, a}) > 0) return true;
  }
  return false;
}

ProductionSet left_recursive_set(const Grammar& g) {
  if (!cyclic_nonterminals(g).empty()) {
    throw Error(
        "grammar contains unary cycles; apply remove_unary_cycles before "
        "computing the left-recursive production set");
  }
  PairRelation rel = left_corner_relation(g, ProductionSet::all(g));
  std::vector<std::size_t> indices;
  for (std::size_t i = 0; i < g.productions().size(); ++i) {
    const Production& p = g.productions()[i];
    if (p.rhs.empty() || p.rhs[0].is_terminal()) continue;
    if (rel.count({p.rhs[0], p.lhs}) > 0) indices.push_back(i);
  }
  return ProductionSet::from_indices(g, std::move(indices));
}

UnaryCycleInfo unary_cycle_info(const Grammar& g) {
  // Tarjan over the unary-production edges between nonterminals; node order
  // is the sorted nonterminal order, making component ids deterministic.
  std::vector<Symbol> nodes(g.nonterminals().begin(), g.nonterminals().end());
  std::unordered_map<Symbol, int, SymbolHash> node_id;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    node_id.emplace(nodes[i], static_cast<int>(i));
  }
  std::vector<std::vector<int>> adj(nodes.size());
  std::vector<bool> self_loop(nodes.size(), false);
  for (const Production& p : g.productions()) {
    if (p.rhs.size() != 1 || p.rhs[0].is_terminal()) continue;
    int from = node_id.at(p.lhs);
    int to = node_id.at(p.rhs[0]);
    adj[from].push_back(to);
    if (from == to) self_loop[from] = true;
  }

  const int n = static_cast<int>(nodes.size());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  std::vector<int> comp_size;
  int next_index = 0;

  struct Frame {
    int node;
    std::size_t edge;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.edge < adj[f.node].size()) {
        int to = adj[f.node][f.edge++];
        if (index[to] == -1) {
          index[to] = low[to] = next_index++;
          stack.push_back(to);
          on_stack[to] = true;
          frames.push_back({to, 0});
        } else if (on_stack[to]) {
          low[f.node] = std::min(low[f.node], index[to]);
        }
      } else {
        int v = f.node;
        frames.pop_back();
        if (!frames.empty()) {
          low[frames.back().node] = std::min(low[frames.back().node], low[v]);
        }
        if (low[v] == index[v]) {
          int id = static_cast<int>(comp_size.size());
          comp_size.push_back(0);
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = id;
            ++comp_size[id];
            if (w == v) break;
          }
        }
      }
    }
  }

  UnaryCycleInfo info;
  for (int i = 0; i < n; ++i) {
    if (comp_size[comp[i]] >= 2 || self_loop[i]) {
      info.cyclic.insert(nodes[i]);
      info.scc_id.emplace(nodes[i], comp[i]);
    }
  }
  return info;
}

std::set<Symbol> cyclic_nonterminals(const Grammar& g) {
  return unary_cycle_info(g).cyclic;
}

LSelection select_L(const Grammar& g, LPolicy policy) {
  LSelection sel;
  switch (policy) {
    case LPolicy::all:
      sel.set = ProductionSet::all(g);
      break;
    case LPolicy::non_pos_initial: {
      if (!g.pos_tags()) {
        throw Error(
            "selection policy non_pos_initial requires declared "
            "part-of-speech tags (%pos or --pos)");
      }
      std::vector<std::size_t> indices;
      for (std::size_t i = 0; i < g.productions().size(); ++i) {
        const Production& p = g.productions()[i];
        if (p.rhs.empty() || p.rhs[0].is_terminal()) continue;
        if (p.rhs[0].is_base() && g.pos_tags()->count(p.rhs[0].head()) > 0) {
          continue;
        }
        indices.push_back(i);
      }
      sel.set = ProductionSet::from_indices(g, std::move(indices));
      break;
    }
    case LPolicy::l0:
      sel.set = left_recursive_set(g);
      break;
  }
  return sel;
}

LSelection select_L_explicit(const Grammar& g,
                             const std::vector<Production>& shapes) {
  LSelection sel;
  sel.set = ProductionSet::from_shapes(g, shapes);
  if (!cyclic_nonterminals(g).empty()) {
    sel.warnings.push_back(
        "grammar contains unary cycles; left-recursion coverage of the "
        "selection was not checked");
    return sel;
  }
  ProductionSet l0 = left_recursive_set(g);
  for (std::size_t i : l0.indices()) {
    if (!sel.set.contains(i)) {
      sel.warnings.push_back(
          "selection omits left-recursive production '" +
          render(g.productions()[i]) + "'; the output may be left-recursive");
    }
  }
  return sel;
}

}  // namespace lct
