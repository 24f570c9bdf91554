#pragma once

#include <string>
#include <string_view>

#include "lct/grammar.hpp"

namespace lct {

// Text format, one production per line:
//
//   [weight] LHS -> RHS-SYMBOL ...
//
// The weight is optional (defaults to 1). An empty right-hand side denotes an
// epsilon production. '#' starts a comment; '%start NAME' and
// '%pos NAME ...' are directives. A name is a nonterminal iff it occurs as a
// left-hand side or in a directive; LC(..), TD(..), PT(..) and NAT(..) tokens
// are always nonterminals. Without '%start', the first production's
// left-hand side is the start symbol.
Grammar parse_grammar(std::string_view text);

// Deterministic serialization: '%start', then '%pos' if tags are declared,
// then productions sorted by rendered form. Weights are written only for
// weighted grammars, in shortest round-trip decimal form.
std::string write_grammar(const Grammar& g);

Grammar read_grammar_file(const std::string& path);
void write_grammar_file(const Grammar& g, const std::string& path);

// Reads a whole file or throws Error with the path in the message.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

// Shortest decimal representation that round-trips to the same double.
std::string format_weight(double w);

}  // namespace lct
