#include "lct/symbol.hpp"

#include <array>

#include "lct/error.hpp"

namespace lct {

namespace {

void check_arg_name(const std::string& name, const char* role) {
  if (name.empty())
    throw Error(std::string("empty name in derived symbol ") + role);
  if (name.find_first_of("();") != std::string::npos)
    throw Error("base symbol '" + name + "' may not contain '(', ')' or ';' " +
                "when used as a " + role + " of a derived symbol");
}

void require_base(const Symbol& s, const char* role) {
  if (!s.is_base())
    throw Error("derived symbol '" + s.render() +
                "' may not be nested as a " + role);
  check_arg_name(s.head(), role);
}

// Arguments of LC/TD/PT may be plain names or NAT(name) symbols (natural
// exit categories take part in further transforms); anything deeper nested
// is rejected. Returns the argument as it should be stored and rendered.
std::string argument_name(const Symbol& s, const char* role) {
  if (s.is_base()) {
    check_arg_name(s.head(), role);
    return s.head();
  }
  if (s.kind() == SymbolKind::natural) return s.render();
  throw Error("derived symbol '" + s.render() + "' may not be nested as a " +
              role);
}

}  // namespace

Symbol::Symbol(SymbolKind k, std::string h, std::string t)
    : kind_(k), head_(std::move(h)), tail_(std::move(t)) {}

Symbol Symbol::terminal(std::string name) {
  if (name.empty()) throw Error("empty terminal name");
  return Symbol(SymbolKind::terminal, std::move(name), {});
}

Symbol Symbol::nonterminal(std::string name) {
  if (name.empty()) throw Error("empty nonterminal name");
  return Symbol(SymbolKind::nonterminal, std::move(name), {});
}

Symbol Symbol::lc_pair(const Symbol& predicted, const Symbol& corner) {
  if (predicted.is_terminal())
    throw Error("predicted category of LC(D;X) must be a nonterminal, got '" +
                predicted.render() + "'");
  return Symbol(SymbolKind::lc_pair, argument_name(predicted, "predicted category"),
                argument_name(corner, "left corner"));
}

Symbol Symbol::td_prime(const Symbol& base) {
  if (base.is_terminal())
    throw Error("TD argument must be a nonterminal, got '" + base.render() +
                "'");
  return Symbol(SymbolKind::td_prime, argument_name(base, "TD argument"), {});
}

Symbol Symbol::lc_fact(const Symbol& parent, const Symbol& corner) {
  if (parent.is_terminal())
    throw Error("PT parent must be a nonterminal, got '" + parent.render() +
                "'");
  return Symbol(SymbolKind::lc_fact, argument_name(parent, "PT parent"),
                argument_name(corner, "PT left corner"));
}

Symbol Symbol::natural(const Symbol& base) {
  require_base(base, "NAT argument");
  return Symbol(SymbolKind::natural, base.head(), {});
}

Symbol Symbol::eps() { return Symbol(SymbolKind::epsilon, "EPS", {}); }

std::string Symbol::render() const {
  switch (kind_) {
    case SymbolKind::terminal:
    case SymbolKind::nonterminal:
    case SymbolKind::epsilon:
      return head_;
    case SymbolKind::lc_pair:
      return "LC(" + head_ + ";" + tail_ + ")";
    case SymbolKind::td_prime:
      return "TD(" + head_ + ")";
    case SymbolKind::lc_fact:
      return "PT(" + head_ + ";" + tail_ + ")";
    case SymbolKind::natural:
      return "NAT(" + head_ + ")";
  }
  return head_;
}

namespace {

struct DerivedForm {
  const char* prefix;
  SymbolKind kind;
  int arity;
};

constexpr std::array<DerivedForm, 4> kForms = {{
    {"LC(", SymbolKind::lc_pair, 2},
    {"TD(", SymbolKind::td_prime, 1},
    {"PT(", SymbolKind::lc_fact, 2},
    {"NAT(", SymbolKind::natural, 1},
}};

[[noreturn]] void malformed(std::string_view token, const char* why) {
  throw Error("malformed derived symbol token '" + std::string(token) +
              "': " + why);
}

// An argument of LC/TD/PT: a plain name, or a NAT(name) exit category.
Symbol parse_argument(std::string_view arg, std::string_view whole) {
  if (arg.empty()) malformed(whole, "empty argument");
  if (arg.find_first_of("()") == std::string_view::npos) {
    if (arg.find(';') != std::string_view::npos)
      malformed(whole, "stray ';'");
    return Symbol::nonterminal(std::string(arg));
  }
  if (arg.substr(0, 4) == "NAT(" && arg.back() == ')') {
    std::string_view inner = arg.substr(4, arg.size() - 5);
    if (inner.empty() ||
        inner.find_first_of("();") != std::string_view::npos)
      malformed(whole, "bad NAT argument");
    return Symbol::natural(Symbol::nonterminal(std::string(inner)));
  }
  malformed(whole, "nested parentheses");
}

Symbol make_derived(SymbolKind kind, std::string_view a, std::string_view b,
                    std::string_view whole) {
  switch (kind) {
    case SymbolKind::lc_pair:
      return Symbol::lc_pair(parse_argument(a, whole),
                             parse_argument(b, whole));
    case SymbolKind::td_prime:
      return Symbol::td_prime(parse_argument(a, whole));
    case SymbolKind::lc_fact:
      return Symbol::lc_fact(parse_argument(a, whole),
                             parse_argument(b, whole));
    case SymbolKind::natural:
      // NAT takes a plain name only; no nesting.
      if (a.empty() || a.find_first_of("();") != std::string_view::npos)
        malformed(whole, "bad NAT argument");
      return Symbol::natural(Symbol::nonterminal(std::string(a)));
    default:
      throw Error("internal: not a derived kind");
  }
}

}  // namespace

Symbol parse_symbol_token(std::string_view token, SymbolKind base_kind) {
  if (token.empty()) throw Error("empty symbol token");
  for (const auto& form : kForms) {
    std::string_view prefix(form.prefix);
    if (token.substr(0, prefix.size()) != prefix) continue;
    if (token.back() != ')') malformed(token, "missing ')'");
    std::string_view inner =
        token.substr(prefix.size(), token.size() - prefix.size() - 1);
    // Split on the ';' at nesting depth zero (arguments may be NAT(...)).
    std::size_t split = std::string_view::npos;
    int depth = 0;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      char c = inner[i];
      if (c == '(') ++depth;
      if (c == ')' && --depth < 0) malformed(token, "unbalanced parentheses");
      if (c == ';' && depth == 0) {
        if (split != std::string_view::npos)
          malformed(token, "too many arguments");
        split = i;
      }
    }
    if (depth != 0) malformed(token, "unbalanced parentheses");
    if (form.arity == 1) {
      if (split != std::string_view::npos)
        malformed(token, "expected one argument");
      return make_derived(form.kind, inner, {}, token);
    }
    if (split == std::string_view::npos)
      malformed(token, "expected two arguments");
    return make_derived(form.kind, inner.substr(0, split),
                        inner.substr(split + 1), token);
  }
  if (base_kind == SymbolKind::terminal)
    return Symbol::terminal(std::string(token));
  return Symbol::nonterminal(std::string(token));
}

std::size_t SymbolHash::operator()(const Symbol& s) const {
  std::size_t h = std::hash<std::string>()(s.head());
  h ^= std::hash<std::string>()(s.tail()) + 0x9e3779b97f4a7c15ull + (h << 6) +
       (h >> 2);
  h ^= static_cast<std::size_t>(s.kind()) * 0x100000001b3ull;
  return h;
}

}  // namespace lct
