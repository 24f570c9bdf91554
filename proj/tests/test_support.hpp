#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "lct/grammar.hpp"
#include "lct/grammar_io.hpp"

namespace lct::test {

// Total probability that the grammar derives exactly `tokens`, computed by
// fixpoint iteration of the inside probabilities. Handles unary-cyclic
// grammars (where parse enumeration would not terminate); converges
// geometrically for subcritical cycle weights.
double string_probability(const Grammar& g,
                          const std::vector<std::string>& tokens,
                          int rounds = 80);

// Splits on whitespace.
std::vector<std::string> tokens_of(const std::string& sentence);

inline Grammar g(std::string_view text) { return parse_grammar(text); }

// Sorted human-readable production list, without weights.
inline std::vector<std::string> shapes(const Grammar& gr) {
  std::vector<std::string> out;
  for (const Production& p : gr.productions()) out.push_back(render(p));
  std::sort(out.begin(), out.end());
  return out;
}

// Sorted production list with weights, via the serializer's formatting.
inline std::vector<std::string> weighted_shapes(const Grammar& gr) {
  std::vector<std::string> out;
  for (const Production& p : gr.productions()) {
    out.push_back(format_weight(p.weight) + " " + render(p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace lct::test
