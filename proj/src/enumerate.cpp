#include "lct/enumerate.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "lct/error.hpp"

namespace lct {
namespace {

constexpr int kInfinity = std::numeric_limits<int>::max() / 4;

// Length of the shortest terminal string each nonterminal derives (kInfinity
// when it derives none).
std::unordered_map<Symbol, int, SymbolHash> min_yields(const Grammar& g) {
  std::unordered_map<Symbol, int, SymbolHash> my;
  for (const Symbol& a : g.nonterminals()) my.emplace(a, kInfinity);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Production& p : g.productions()) {
      int total = 0;
      for (const Symbol& s : p.rhs) {
        total += s.is_terminal() ? 1 : my.at(s);
        if (total >= kInfinity) {
          total = kInfinity;
          break;
        }
      }
      if (total < my.at(p.lhs)) {
        my[p.lhs] = total;
        changed = true;
      }
    }
  }
  return my;
}

}  // namespace

std::set<std::string> enumerate_strings(const Grammar& g, int max_len) {
  if (max_len < 0 || max_len > 12) {
    throw Error("enumerate_strings supports lengths 0..12, got " +
                std::to_string(max_len));
  }
  auto my = min_yields(g);
  auto form_min = [&my](const std::vector<Symbol>& form) {
    long total = 0;
    for (const Symbol& s : form) {
      total += s.is_terminal() ? 1 : my.at(s);
      if (total >= kInfinity) return static_cast<long>(kInfinity);
    }
    return total;
  };

  std::set<std::string> out;
  std::set<std::vector<Symbol>> visited;
  std::deque<std::vector<Symbol>> queue;
  std::vector<Symbol> start{g.start()};
  if (form_min(start) <= max_len) {
    visited.insert(start);
    queue.push_back(std::move(start));
  }

  std::size_t expanded = 0;
  while (!queue.empty()) {
    if (++expanded > 5'000'000) {
      throw Error("string enumeration exceeded the safety limit");
    }
    std::vector<Symbol> form = std::move(queue.front());
    queue.pop_front();

    std::size_t leftmost = form.size();
    for (std::size_t i = 0; i < form.size(); ++i) {
      if (!form[i].is_terminal()) {
        leftmost = i;
        break;
      }
    }
    if (leftmost == form.size()) {
      std::string s;
      for (const Symbol& t : form) {
        if (!s.empty()) s += ' ';
        s += t.render();
      }
      out.insert(std::move(s));
      continue;
    }
    for (std::size_t pi : g.productions_of(form[leftmost])) {
      const Production& p = g.productions()[pi];
      std::vector<Symbol> next;
      next.reserve(form.size() + p.rhs.size() - 1);
      next.insert(next.end(), form.begin(), form.begin() + leftmost);
      next.insert(next.end(), p.rhs.begin(), p.rhs.end());
      next.insert(next.end(), form.begin() + leftmost + 1, form.end());
      if (form_min(next) > max_len) continue;
      if (visited.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return out;
}

namespace {

// Detects cycles X ⇒+ X over the same span: edges X → Y for productions
// X → …Y… whose other right-hand-side symbols can all vanish. Such a cycle
// makes the parse set of some span infinite.
void check_same_span_cycles(const Grammar& g) {
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
    for (std::size_t t = 0; t < p.rhs.size(); ++t) {
      if (p.rhs[t].is_terminal()) continue;
      bool others_vanish = true;
      for (std::size_t s = 0; s < p.rhs.size(); ++s) {
        if (s == t) continue;
        if (p.rhs[s].is_terminal() || nullable.count(p.rhs[s]) == 0) {
          others_vanish = false;
          break;
        }
      }
      if (others_vanish) edges[p.lhs].push_back(p.rhs[t]);
    }
  }

  // Colored DFS for a cycle.
  std::unordered_map<Symbol, int, SymbolHash> color;  // 0 new, 1 open, 2 done
  for (const Symbol& root : g.nonterminals()) {
    if (color[root] != 0) continue;
    std::vector<std::pair<Symbol, std::size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [cur, idx] = stack.back();
      auto it = edges.find(cur);
      if (it == edges.end() || idx >= it->second.size()) {
        color[cur] = 2;
        stack.pop_back();
        continue;
      }
      Symbol next = it->second[idx++];
      int c = color[next];
      if (c == 1) {
        throw Error("grammar has a unary (or vanishing-prefix) cycle through "
                    "'" +
                    next.render() + "'; the parse set is infinite");
      }
      if (c == 0) {
        color[next] = 1;
        stack.emplace_back(next, 0);
      }
    }
  }
}

struct ParseMemo {
  const Grammar& g;
  std::vector<Symbol> tokens;
  std::unordered_map<Symbol, int, SymbolHash> min_yield;
  // (symbol, start, end) → parse list
  std::map<std::tuple<Symbol, int, int>, std::vector<WeightedTree>> memo;
  std::set<std::tuple<Symbol, int, int>> active;

  static const std::vector<WeightedTree>& none() {
    static const std::vector<WeightedTree> kNone;
    return kNone;
  }

  const std::vector<WeightedTree>& parses(const Symbol& x, int i, int j) {
    if (j - i < min_yield.at(x)) return none();
    auto key = std::make_tuple(x, i, j);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    // The span-length pruning above plus the upfront cycle check make
    // recursion into the same subproblem impossible; guard regardless.
    if (!active.insert(key).second) {
      throw Error("cycle over one span while enumerating parses of '" +
                  x.render() + "'");
    }
    std::vector<WeightedTree> result;
    for (std::size_t pi : g.productions_of(x)) {
      const Production& p = g.productions()[pi];
      std::vector<ParseTree> prefix;
      extend(p, 0, i, j, prefix, p.weight, result);
    }
    active.erase(key);
    return memo.emplace(std::move(key), std::move(result)).first->second;
  }

  void extend(const Production& p, std::size_t t, int pos, int end,
              std::vector<ParseTree>& prefix, double weight,
              std::vector<WeightedTree>& result) {
    if (t == p.rhs.size()) {
      if (pos != end) return;
      ParseTree n;
      n.label = p.lhs;
      n.children = prefix;
      if (n.children.empty()) n.children.push_back(leaf(Symbol::eps()));
      result.push_back({std::move(n), weight});
      return;
    }
    const Symbol& y = p.rhs[t];
    if (y.is_terminal()) {
      if (pos < end && tokens[static_cast<std::size_t>(pos)] == y) {
        prefix.push_back(leaf(y));
        extend(p, t + 1, pos + 1, end, prefix, weight, result);
        prefix.pop_back();
      }
      return;
    }
    // Leave room for what the remaining sibling symbols must still consume;
    // this also keeps recursion off the full (symbol, span) subproblem.
    long suffix_min = 0;
    for (std::size_t s = t + 1; s < p.rhs.size(); ++s) {
      suffix_min += p.rhs[s].is_terminal() ? 1 : min_yield.at(p.rhs[s]);
    }
    int max_split = end - static_cast<int>(std::min<long>(suffix_min, 1000));
    for (int split = pos; split <= max_split; ++split) {
      // Copy: recursion below may invalidate memo references.
      std::vector<WeightedTree> subs = parses(y, pos, split);
      for (const WeightedTree& sub : subs) {
        prefix.push_back(sub.tree);
        extend(p, t + 1, split, end, prefix, weight * sub.weight, result);
        prefix.pop_back();
      }
    }
  }
};

}  // namespace

std::vector<WeightedTree> enumerate_parses(
    const Grammar& g, const std::vector<std::string>& tokens) {
  if (tokens.size() > 8) {
    throw Error("enumerate_parses supports sentences of length <= 8, got " +
                std::to_string(tokens.size()));
  }
  check_same_span_cycles(g);

  ParseMemo memo{g, {}, min_yields(g), {}, {}};
  for (const std::string& t : tokens) {
    Symbol s = parse_symbol_token(t, SymbolKind::terminal);
    if (!s.is_terminal() || g.terminals().count(s) == 0) return {};
    memo.tokens.push_back(std::move(s));
  }
  return memo.parses(g.start(), 0, static_cast<int>(tokens.size()));
}

}  // namespace lct
