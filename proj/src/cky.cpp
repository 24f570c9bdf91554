#include "lct/cky.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "lct/error.hpp"
#include "lct/symbol.hpp"

namespace lct {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kNoProd = static_cast<std::size_t>(-1);

// Maximum-weight ε derivation of a nullable symbol, reinserted into the
// output tree wherever a composed rule dropped the symbol.
struct EpsDerivation {
  double weight = 0.0;  // linear scale
  ParseTree tree;
};

// Internal ε-free rule over dense symbol ids. Real rules carry the index of
// the grammar production they reconstruct plus a recipe mapping each original
// RHS position to the next chart child (-1) or to the ε derivation dropped at
// that position; dotted rules (prod == kNoProd) are binarization links.
struct Rule {
  int lhs = 0;
  std::vector<int> rhs;
  double log_w = 0.0;
  std::size_t prod = kNoProd;
  std::vector<int> recipe;
};

enum class BackKind : std::uint8_t { unset, token, unary, binary };

struct Entry {
  double w = kNegInf;
  BackKind kind = BackKind::unset;
  int rule = -1;
  int split = -1;

  bool set() const { return kind != BackKind::unset; }
};

class Parser {
 public:
  explicit Parser(const Grammar& g) : g_(g) {
    intern_symbols();
    remove_epsilons();
    binarize();
  }

  std::optional<CkyParse> parse(const std::vector<std::string>& tokens) {
    if (tokens.empty()) throw Error("cannot parse an empty sentence");
    std::vector<int> ids = token_ids(tokens);

    n_ = tokens.size();
    chart_.assign((n_ + 1) * (n_ + 1), {});
    for (std::size_t i = 0; i < n_; ++i) {
      cell(i, i + 1).assign(total_ids_, Entry{});
      Entry& e = cell(i, i + 1)[ids[i]];
      e.w = 0.0;
      e.kind = BackKind::token;
      close_unary(i, i + 1);
    }
    for (std::size_t len = 2; len <= n_; ++len) {
      for (std::size_t i = 0; i + len <= n_; ++i) {
        std::size_t j = i + len;
        cell(i, j).assign(total_ids_, Entry{});
        combine(i, j);
        close_unary(i, j);
      }
    }

    const Entry& goal = cell(0, n_)[start_id_];
    if (!goal.set()) return std::nullopt;
    CkyParse out;
    out.log_weight = goal.w;
    out.tree = reconstruct(start_id_, 0, n_);
    return out;
  }

 private:
  void intern_symbols() {
    for (const Symbol& t : g_.terminals()) intern(t);
    for (const Symbol& nt : g_.nonterminals()) intern(nt);
    start_id_ = intern(g_.start());
  }

  int intern(const Symbol& s) {
    auto [it, inserted] = ids_.try_emplace(s, static_cast<int>(symbols_.size()));
    if (inserted) symbols_.push_back(s);
    return it->second;
  }

  // Removes ε-productions by composing them into every production that uses
  // a nullable symbol, recording the dropped positions for reconstruction.
  // Only transform-introduced LC/PT symbols may be nullable.
  void remove_epsilons() {
    const auto& prods = g_.productions();

    std::vector<int> eps_of(symbols_.size(), -1);  // symbol id → eps_ index
    bool any = false;
    for (const Production& p : prods) {
      if (!p.rhs.empty()) continue;
      any = true;
      if (p.lhs.kind() != SymbolKind::lc_pair &&
          p.lhs.kind() != SymbolKind::lc_fact) {
        throw Error(
            "the parser only supports epsilon productions introduced by the "
            "left-corner transform; found '" +
            render(p) + "'");
      }
      int id = intern(p.lhs);
      if (static_cast<std::size_t>(id) >= eps_of.size()) {
        eps_of.resize(symbols_.size(), -1);
      }
      eps_of[id] = static_cast<int>(eps_.size());
      eps_.push_back(
          {p.weight, node(p.lhs, {leaf(Symbol::eps())})});
    }

    if (any) {
      // Close nullability over productions whose whole RHS is nullable,
      // keeping the maximum-weight ε derivation per symbol. Strict
      // improvement only, with a round cap; the transform-generated forms
      // stabilize in two rounds.
      std::size_t cap = symbols_.size() + 2;
      bool changed = true;
      while (changed) {
        if (cap-- == 0) {
          throw Error("epsilon derivations do not stabilize; the grammar is "
                      "outside the supported transform output forms");
        }
        changed = false;
        for (const Production& p : prods) {
          if (p.rhs.empty()) continue;
          double w = p.weight;
          std::vector<ParseTree> kids;
          bool all_null = true;
          for (const Symbol& s : p.rhs) {
            auto it = ids_.find(s);
            int e = it == ids_.end() ? -1 : eps_of[it->second];
            if (e < 0) {
              all_null = false;
              break;
            }
            w *= eps_[e].weight;
            kids.push_back(eps_[e].tree);
          }
          if (!all_null) continue;
          if (p.lhs.kind() != SymbolKind::lc_pair &&
              p.lhs.kind() != SymbolKind::lc_fact) {
            throw Error(
                "the parser only supports epsilon productions introduced by "
                "the left-corner transform; '" +
                p.lhs.render() + "' derives the empty string");
          }
          int id = intern(p.lhs);
          if (static_cast<std::size_t>(id) >= eps_of.size()) {
            eps_of.resize(symbols_.size(), -1);
          }
          int& slot = eps_of[id];
          if (slot < 0) {
            slot = static_cast<int>(eps_.size());
            eps_.push_back({w, node(p.lhs, std::move(kids))});
            changed = true;
          } else if (w > eps_[slot].weight) {
            eps_[slot] = {w, node(p.lhs, std::move(kids))};
            changed = true;
          }
        }
      }
    }

    // Emit composed variants: for every subset of nullable RHS positions,
    // the production with those symbols dropped and their ε weights folded
    // in. Variant order (fewest drops first, earlier positions kept first)
    // extends production order for tie-breaking.
    for (std::size_t pi = 0; pi < prods.size(); ++pi) {
      const Production& p = prods[pi];
      if (p.rhs.empty()) continue;
      std::vector<std::size_t> nullable_pos;
      for (std::size_t k = 0; k < p.rhs.size(); ++k) {
        auto it = ids_.find(p.rhs[k]);
        if (it != ids_.end() && eps_of[it->second] >= 0) {
          nullable_pos.push_back(k);
        }
      }
      if (nullable_pos.size() > 16) {
        throw Error("production '" + render(p) +
                    "' has too many nullable symbols to compose");
      }
      for (std::uint32_t mask = 0; mask < (1u << nullable_pos.size());
           ++mask) {
        Rule r;
        r.lhs = intern(p.lhs);
        r.prod = pi;
        double w = p.weight;
        r.recipe.assign(p.rhs.size(), -1);
        for (std::size_t b = 0; b < nullable_pos.size(); ++b) {
          if (!(mask & (1u << b))) continue;
          std::size_t pos = nullable_pos[b];
          int e = eps_of[ids_.at(p.rhs[pos])];
          r.recipe[pos] = e;
          w *= eps_[e].weight;
        }
        for (std::size_t k = 0; k < p.rhs.size(); ++k) {
          if (r.recipe[k] < 0) r.rhs.push_back(intern(p.rhs[k]));
        }
        if (r.rhs.empty()) continue;  // folded into ε derivations above
        r.log_w = std::log(w);
        rules_.push_back(std::move(r));
      }
    }
  }

  // Right-nested binarization of rules with three or more RHS symbols. The
  // dotted continuation symbols are plain ids past the real-symbol range;
  // their rules carry weight 0 and are flattened away on reconstruction.
  void binarize() {
    first_dotted_ = static_cast<int>(symbols_.size());
    int next_id = first_dotted_;
    std::size_t fixed = rules_.size();
    for (std::size_t ri = 0; ri < fixed; ++ri) {
      if (rules_[ri].rhs.size() <= 2) continue;
      std::vector<int> tail(rules_[ri].rhs.begin() + 1, rules_[ri].rhs.end());
      int prev = next_id++;
      rules_[ri].rhs = {rules_[ri].rhs.front(), prev};
      while (tail.size() > 2) {
        Rule link;
        link.lhs = prev;
        prev = next_id++;
        link.rhs = {tail.front(), prev};
        rules_.push_back(std::move(link));
        tail.erase(tail.begin());
      }
      Rule last;
      last.lhs = prev;
      last.rhs = tail;
      rules_.push_back(std::move(last));
    }
    total_ids_ = next_id;

    for (std::size_t ri = 0; ri < rules_.size(); ++ri) {
      (rules_[ri].rhs.size() == 1 ? unary_rules_ : binary_rules_)
          .push_back(static_cast<int>(ri));
    }
  }

  std::vector<int> token_ids(const std::vector<std::string>& tokens) const {
    std::vector<int> ids;
    std::string oov;
    for (const std::string& t : tokens) {
      auto it = ids_.find(Symbol::terminal(t));
      if (it == ids_.end() || !g_.terminals().count(Symbol::terminal(t))) {
        if (!oov.empty()) oov += ", ";
        oov += "'" + t + "'";
        ids.push_back(-1);
      } else {
        ids.push_back(it->second);
      }
    }
    if (!oov.empty()) {
      throw Error("out-of-vocabulary token(s): " + oov);
    }
    return ids;
  }

  std::vector<Entry>& cell(std::size_t i, std::size_t j) {
    return chart_[i * (n_ + 1) + j];
  }

  // Binary combination for cell (i, j): rules in order, splits left to
  // right, strict improvement only — so ties keep the lowest rule order and
  // then the leftmost split.
  void combine(std::size_t i, std::size_t j) {
    std::vector<Entry>& target = cell(i, j);
    for (int ri : binary_rules_) {
      const Rule& r = rules_[ri];
      for (std::size_t s = i + 1; s < j; ++s) {
        const Entry& left = cell(i, s)[r.rhs[0]];
        if (!left.set()) continue;
        const Entry& right = cell(s, j)[r.rhs[1]];
        if (!right.set()) continue;
        double w = r.log_w + left.w + right.w;
        Entry& e = target[r.lhs];
        if (!e.set() || w > e.w) {
          e = {w, BackKind::binary, ri, static_cast<int>(s)};
        }
      }
    }
  }

  // Unary closure by relaxation with strict improvement. Weight-1 cycles
  // stop improving once every best chain is simple, so the round cap is only
  // reached when some unary cycle multiplies weights above 1.
  void close_unary(std::size_t i, std::size_t j) {
    std::vector<Entry>& target = cell(i, j);
    std::size_t cap = symbols_.size() + 1;
    bool changed = true;
    while (changed) {
      if (cap-- == 0) {
        throw Error(
            "unary productions keep improving the parse weight; a unary "
            "cycle with weight above 1 has no maximum-weight parse");
      }
      changed = false;
      for (int ri : unary_rules_) {
        const Rule& r = rules_[ri];
        const Entry& child = target[r.rhs[0]];
        if (!child.set()) continue;
        double w = r.log_w + child.w;
        Entry& e = target[r.lhs];
        if (!e.set() || w > e.w) {
          e = {w, BackKind::unary, ri, -1};
          changed = true;
        }
      }
    }
  }

  // Children of a binarized rule chain, flattened left to right.
  void collect(const Rule& r, std::size_t i, std::size_t j, int split,
               std::vector<ParseTree>& out) {
    out.push_back(reconstruct(r.rhs[0], i, split));
    int right = r.rhs[1];
    if (right >= first_dotted_) {
      const Entry& e = cell(split, j)[right];
      collect(rules_[e.rule], split, j, e.split, out);
    } else {
      out.push_back(reconstruct(right, split, j));
    }
  }

  ParseTree reconstruct(int id, std::size_t i, std::size_t j) {
    const Entry& e = cell(i, j)[id];
    if (e.kind == BackKind::token) return leaf(symbols_[id]);

    const Rule& r = rules_[e.rule];
    std::vector<ParseTree> flat;
    if (e.kind == BackKind::unary) {
      flat.push_back(reconstruct(r.rhs[0], i, j));
    } else if (r.rhs[1] >= first_dotted_) {
      collect(r, i, j, e.split, flat);
    } else {
      flat.push_back(reconstruct(r.rhs[0], i, e.split));
      flat.push_back(reconstruct(r.rhs[1], e.split, j));
    }

    const Production& p = g_.productions()[r.prod];
    std::vector<ParseTree> kids;
    kids.reserve(p.rhs.size());
    std::size_t next = 0;
    for (int slot : r.recipe) {
      kids.push_back(slot < 0 ? std::move(flat[next++]) : eps_[slot].tree);
    }
    return node(p.lhs, std::move(kids));
  }

  const Grammar& g_;
  std::unordered_map<Symbol, int, SymbolHash> ids_;
  std::vector<Symbol> symbols_;
  std::vector<Rule> rules_;
  std::vector<int> unary_rules_;
  std::vector<int> binary_rules_;
  std::vector<EpsDerivation> eps_;
  int first_dotted_ = 0;
  int total_ids_ = 0;
  int start_id_ = -1;

  std::size_t n_ = 0;
  std::vector<std::vector<Entry>> chart_;
};

}  // namespace

std::optional<CkyParse> cky_parse(const Grammar& g,
                                  const std::vector<std::string>& tokens) {
  Parser parser(g);
  return parser.parse(tokens);
}

}  // namespace lct
