#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace lct {

enum class SymbolKind : std::uint8_t {
  terminal,
  nonterminal,
  lc_pair,   // LC(D;X): D predicted top-down, X recognized as its left corner
  td_prime,  // TD(A): shared expansion site for a top-down nonterminal A
  lc_fact,   // PT(C;B): factored body of a left-corner production C -> B beta
  natural,   // NAT(A): exit category replacing a unary-cyclic nonterminal A
  epsilon,   // empty-leaf marker in trees, rendered EPS; never a grammar symbol
};

// A grammar symbol. Base symbols (terminal, nonterminal) are plain names.
// Derived symbols wrap one or two arguments and render as LC(D;X), TD(A),
// PT(C;B) or NAT(A). LC/TD/PT arguments are base symbols or NAT(A) symbols
// (exit categories take part in further transforms); NAT itself takes a
// plain name, so nesting stops at one level. Rendering is injective and
// re-parses to the same symbol; to keep it so, base argument names may not
// contain '(', ')' or ';'.
class Symbol {
 public:
  Symbol() : kind_(SymbolKind::nonterminal) {}

  static Symbol terminal(std::string name);
  static Symbol nonterminal(std::string name);
  static Symbol lc_pair(const Symbol& predicted, const Symbol& corner);
  static Symbol td_prime(const Symbol& base);
  static Symbol lc_fact(const Symbol& parent, const Symbol& corner);
  static Symbol natural(const Symbol& base);
  static Symbol eps();

  SymbolKind kind() const { return kind_; }
  bool is_terminal() const { return kind_ == SymbolKind::terminal; }
  bool is_epsilon() const { return kind_ == SymbolKind::epsilon; }
  bool is_base() const {
    return kind_ == SymbolKind::terminal || kind_ == SymbolKind::nonterminal;
  }
  // True for anything that may stand on a left-hand side or label an
  // internal tree node (plain nonterminals and all derived kinds).
  bool is_nonterminal() const {
    return !is_terminal() && !is_epsilon();
  }

  // Base name, or the first argument of a derived symbol as rendered text
  // (a plain name or "NAT(A)").
  const std::string& head() const { return head_; }
  // Second argument as rendered text (lc_pair, lc_fact only; else empty).
  const std::string& tail() const { return tail_; }

  std::string render() const;

  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend std::strong_ordering operator<=>(const Symbol&,
                                          const Symbol&) = default;

 private:
  Symbol(SymbolKind k, std::string h, std::string t);

  SymbolKind kind_;
  std::string head_;
  std::string tail_;
};

// Parses one whitespace-free token as it appears in grammar and tree files.
// Tokens of the form LC(D;X), TD(A), PT(C;B), NAT(A) yield derived symbols;
// any other token is a base symbol of kind `base_kind`. A token that starts
// like a derived form but is malformed (unbalanced, bad argument count,
// nested parentheses) is rejected.
Symbol parse_symbol_token(std::string_view token, SymbolKind base_kind);

struct SymbolHash {
  std::size_t operator()(const Symbol& s) const;
};

}  // namespace lct
