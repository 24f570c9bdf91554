#include "lct/random.hpp"

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "lct/error.hpp"
#include "lct/relations.hpp"

namespace lct {
namespace {

constexpr int kUnset = 1 << 20;

// Uniform in [lo, hi] via the standardized mt19937 output stream, so draws
// are reproducible across standard libraries (std::uniform_int_distribution
// is not).
int pick(std::mt19937& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() %
                               static_cast<std::uint32_t>(hi - lo + 1));
}

// Least derivation height per symbol: 0 for terminals, 1 + the best
// production's deepest child otherwise.
std::unordered_map<Symbol, int, SymbolHash> completion_depth(
    const Grammar& g) {
  std::unordered_map<Symbol, int, SymbolHash> depth;
  for (const Symbol& t : g.terminals()) depth[t] = 0;
  for (const Symbol& nt : g.nonterminals()) depth[nt] = kUnset;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Production& p : g.productions()) {
      int worst = 0;
      for (const Symbol& s : p.rhs) worst = std::max(worst, depth.at(s));
      if (worst >= kUnset) continue;
      int& d = depth.at(p.lhs);
      if (worst + 1 < d) {
        d = worst + 1;
        changed = true;
      }
    }
  }
  return depth;
}

class TreeSampler {
 public:
  TreeSampler(const Grammar& g, std::mt19937& rng, int budget)
      : g_(g), rng_(rng), budget_(budget), depth_(completion_depth(g)) {
    if (depth_.at(g.start()) >= kUnset) {
      throw Error("cannot sample trees: the start symbol derives no "
                  "terminal string");
    }
  }

  ParseTree expand(const Symbol& s) {
    if (s.is_terminal()) return leaf(s);
    const std::vector<std::size_t>& options = g_.productions_of(s);
    if (options.empty()) {
      throw Error("cannot sample trees: '" + s.render() +
                  "' has no production");
    }
    std::size_t chosen;
    if (budget_ > 0) {
      chosen = options[static_cast<std::size_t>(
          pick(rng_, 0, static_cast<int>(options.size()) - 1))];
    } else {
      chosen = options.front();
      int best = height(chosen);
      for (std::size_t idx : options) {
        if (height(idx) < best) {
          best = height(idx);
          chosen = idx;
        }
      }
    }
    --budget_;
    const Production& p = g_.productions()[chosen];
    std::vector<ParseTree> children;
    if (p.rhs.empty()) {
      children.push_back(leaf(Symbol::eps()));
    } else {
      children.reserve(p.rhs.size());
      for (const Symbol& child : p.rhs) children.push_back(expand(child));
    }
    return node(p.lhs, std::move(children));
  }

 private:
  int height(std::size_t prod) const {
    int worst = 0;
    for (const Symbol& s : g_.productions()[prod].rhs) {
      worst = std::max(worst, depth_.at(s));
    }
    return worst;
  }

  const Grammar& g_;
  std::mt19937& rng_;
  int budget_;
  std::unordered_map<Symbol, int, SymbolHash> depth_;
};

}  // namespace

Grammar random_grammar(std::mt19937& rng, const RandomGrammarParams& params) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    int n = pick(rng, 2, params.max_nonterminals);
    int t = pick(rng, 2, params.terminals);
    std::vector<Symbol> nts, terms;
    for (int i = 0; i < n; ++i) {
      nts.push_back(Symbol::nonterminal("X" + std::to_string(i)));
    }
    for (int i = 0; i < t; ++i) {
      terms.push_back(Symbol::terminal("t" + std::to_string(i)));
    }

    int count = pick(rng, n, params.max_productions);
    std::vector<Production> prods;
    for (int k = 0; k < count; ++k) {
      Production p;
      p.lhs = k < n ? nts[static_cast<std::size_t>(k)]
                    : nts[static_cast<std::size_t>(pick(rng, 0, n - 1))];
      int len = pick(rng, 1, params.max_rhs_len);
      for (int i = 0; i < len; ++i) {
        bool nonterminal = pick(rng, 0, 99) < 40;
        p.rhs.push_back(
            nonterminal
                ? nts[static_cast<std::size_t>(pick(rng, 0, n - 1))]
                : terms[static_cast<std::size_t>(pick(rng, 0, t - 1))]);
      }
      // Make direct left recursion common; never as a unary self-loop.
      if (len >= 2 && pick(rng, 0, 99) < 25) p.rhs[0] = p.lhs;
      prods.push_back(std::move(p));
    }

    Grammar g = prune_useless(Grammar::make(std::move(prods), nts[0]));
    if (g.productions().size() < 2) continue;
    if (!unary_cycle_info(g).empty()) continue;
    return g;
  }
  throw Error("random grammar sampling failed to produce a usable grammar");
}

ParseTree random_tree(const Grammar& g, std::mt19937& rng, int size_budget) {
  TreeSampler sampler(g, rng, size_budget);
  return sampler.expand(g.start());
}

}  // namespace lct
