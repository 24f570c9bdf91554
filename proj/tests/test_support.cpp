#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <sstream>
#include <tuple>

#include "test_support.hpp"

namespace lct::test {

std::vector<std::string> tokens_of(const std::string& sentence) {
  std::istringstream in(sentence);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

double string_probability(const Grammar& g,
                          const std::vector<std::string>& tokens, int rounds) {
  const int n = static_cast<int>(tokens.size());
  std::vector<Symbol> terms;
  for (const std::string& t : tokens) {
    terms.push_back(parse_symbol_token(t, SymbolKind::terminal));
  }

  // inside[(X, i, j)] over nonterminals X and spans, iterated to a fixpoint.
  std::map<std::tuple<Symbol, int, int>, double> inside;
  auto get = [&inside](const Symbol& x, int i, int j) {
    auto it = inside.find({x, i, j});
    return it == inside.end() ? 0.0 : it->second;
  };

  for (int round = 0; round < rounds; ++round) {
    for (int len = 0; len <= n; ++len) {
      for (int i = 0; i + len <= n; ++i) {
        int j = i + len;
        for (const Symbol& x : g.nonterminals()) {
          double total = 0.0;
          for (std::size_t pi : g.productions_of(x)) {
            const Production& p = g.productions()[pi];
            // Sum over split vectors via a small DP across the RHS.
            std::vector<std::vector<double>> at(p.rhs.size() + 1,
                                                std::vector<double>(n + 2, 0));
            at[0][i] = 1.0;
            for (std::size_t t = 0; t < p.rhs.size(); ++t) {
              for (int pos = i; pos <= j; ++pos) {
                if (at[t][pos] == 0.0) continue;
                if (p.rhs[t].is_terminal()) {
                  if (pos < j && terms[pos] == p.rhs[t]) {
                    at[t + 1][pos + 1] += at[t][pos];
                  }
                } else {
                  for (int end = pos; end <= j; ++end) {
                    double sub = get(p.rhs[t], pos, end);
                    if (sub > 0.0) at[t + 1][end] += at[t][pos] * sub;
                  }
                }
              }
            }
            total += p.weight * at[p.rhs.size()][j];
          }
          if (total > 0.0) inside[{x, i, j}] = total;
        }
      }
    }
  }
  return get(g.start(), 0, n);
}

}  // namespace lct::test
