#include "lct/tree_transform.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lct/error.hpp"

namespace lct {
namespace {

std::string path_str(const std::vector<std::size_t>& path) {
  if (path.empty()) return "the root";
  std::string s = "child path ";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) s += '.';
    s += std::to_string(path[i]);
  }
  return s;
}

[[noreturn]] void fail_at(const ParseTree& n,
                          const std::vector<std::size_t>& path,
                          const std::string& what) {
  throw Error("node '" + n.label.render() + "' at " + path_str(path) + ": " +
              what);
}

bool is_transform_internal(const Symbol& s) {
  return s.kind() == SymbolKind::lc_pair || s.kind() == SymbolKind::td_prime ||
         s.kind() == SymbolKind::lc_fact;
}

bool uses_td(const TransformOptions& o) {
  return o.factor == FactorMode::td || o.factor == FactorMode::td_lc;
}

bool uses_lc(const TransformOptions& o) {
  return o.factor == FactorMode::lc || o.factor == FactorMode::td_lc;
}

// ---------------------------------------------------------------------------
// Forward transform.

struct TreeTransformer {
  const Grammar& g;
  const ProductionSet& l;
  const TransformOptions& opts;
  bool strict;

  bool in_l(const ParseTree& n, const std::vector<std::size_t>& path) const {
    Production p;
    p.lhs = n.label;
    for (const ParseTree& c : n.children) {
      if (c.label.is_epsilon())
        fail_at(n, path, "the transform requires epsilon-free trees");
      p.rhs.push_back(c.label);
    }
    std::optional<std::size_t> idx = g.find(p.lhs, p.rhs);
    if (!idx) {
      if (strict)
        fail_at(n, path, "production '" + render(p) + "' is not in the grammar");
      return false;
    }
    return l.contains(*idx);
  }

  ParseTree transform_child(const ParseTree& c,
                            std::vector<std::size_t>& path) {
    if (c.is_leaf()) {
      if (c.label.is_epsilon())
        fail_at(c, path, "the transform requires epsilon-free trees");
      if (!c.label.is_terminal())
        fail_at(c, path, "leaf label is not a terminal");
      return c;
    }
    return transform_node(c, path);
  }

  // One recognition step of the spine: the production C -> B beta, with the
  // non-corner part of its right-hand side already transformed.
  struct Step {
    Symbol c;
    Symbol b;
    std::vector<ParseTree> beta;
  };

  ParseTree transform_node(const ParseTree& n,
                           std::vector<std::size_t>& path) {
    if (!n.label.is_nonterminal())
      fail_at(n, path, "internal node label is not a nonterminal");
    const Symbol d = n.label;
    const std::size_t depth0 = path.size();

    // Descend first children while the production belongs to L; the nodes
    // passed make up the spine, the node (or terminal leaf) reached is the
    // corner.
    std::vector<Step> steps;
    const ParseTree* corner = &n;
    while (!corner->is_leaf() && in_l(*corner, path)) {
      Step st;
      st.c = corner->label;
      st.b = corner->children.front().label;
      for (std::size_t i = 1; i < corner->children.size(); ++i) {
        path.push_back(i);
        st.beta.push_back(transform_child(corner->children[i], path));
        path.pop_back();
      }
      steps.push_back(std::move(st));
      corner = &corner->children.front();
      path.push_back(0);
    }

    std::vector<ParseTree> out_children;
    if (corner->is_leaf()) {
      if (!corner->label.is_terminal())
        fail_at(*corner, path, "leaf label is not a terminal");
      out_children.push_back(*corner);
    } else {
      std::vector<ParseTree> alpha;
      for (std::size_t i = 0; i < corner->children.size(); ++i) {
        path.push_back(i);
        alpha.push_back(transform_child(corner->children[i], path));
        path.pop_back();
      }
      if (uses_td(opts)) {
        out_children.push_back(
            node(Symbol::td_prime(corner->label), std::move(alpha)));
      } else {
        out_children = std::move(alpha);
      }
    }
    path.resize(depth0);

    // The LC chain, built by wrapping the spine productions outermost first,
    // so the chain node nearest the corner carries the bottom production.
    ParseTree tail = node(Symbol::lc_pair(d, d), {leaf(Symbol::eps())});
    for (Step& st : steps) {
      std::vector<ParseTree> kids;
      if (uses_lc(opts)) {
        if (st.beta.empty() && opts.epsilon == EpsilonMode::full) {
          // Factoring an empty body would reintroduce an empty category
          // into an otherwise epsilon-free grammar; leave the step unary.
          kids.push_back(std::move(tail));
        } else {
          std::vector<ParseTree> body = std::move(st.beta);
          if (body.empty()) body.push_back(leaf(Symbol::eps()));
          kids.push_back(node(Symbol::lc_fact(st.c, st.b), std::move(body)));
          kids.push_back(std::move(tail));
        }
      } else {
        kids = std::move(st.beta);
        kids.push_back(std::move(tail));
      }
      tail = node(Symbol::lc_pair(d, st.b), std::move(kids));
    }
    out_children.push_back(std::move(tail));
    return node(d, std::move(out_children));
  }
};

// A node of the form [LC(X;X) EPS], the end marker of a finished chain.
bool is_dd_eps(const ParseTree& t) {
  return t.label.kind() == SymbolKind::lc_pair &&
         t.label.head() == t.label.tail() && t.children.size() == 1 &&
         t.children.front().is_leaf() &&
         t.children.front().label.is_epsilon();
}

// one_step: delete exactly the [LC(X;X) EPS] nodes; a node left childless
// becomes an empty category itself.
ParseTree strip_one_step(ParseTree t) {
  if (t.is_leaf()) return t;
  std::vector<ParseTree> kept;
  kept.reserve(t.children.size());
  for (ParseTree& c : t.children) {
    if (is_dd_eps(c)) continue;
    kept.push_back(strip_one_step(std::move(c)));
  }
  if (kept.empty()) kept.push_back(leaf(Symbol::eps()));
  t.children = std::move(kept);
  return t;
}

bool empty_yield(const ParseTree& t) {
  if (t.is_leaf()) return t.label.is_epsilon();
  for (const ParseTree& c : t.children) {
    if (!empty_yield(c)) return false;
  }
  return true;
}

// full: delete every subtree with an empty yield (trailing chain segments
// whose steps all have empty bodies, ending in the chain's end marker).
ParseTree strip_full(ParseTree t) {
  if (t.is_leaf()) return t;
  std::vector<ParseTree> kept;
  kept.reserve(t.children.size());
  for (ParseTree& c : t.children) {
    if (empty_yield(c)) continue;
    kept.push_back(strip_full(std::move(c)));
  }
  t.children = std::move(kept);
  return t;
}

}  // namespace

ParseTree lc_tree_transform(const ParseTree& t, const Grammar& g,
                            const ProductionSet& l,
                            const TransformOptions& opts, bool strict) {
  std::vector<std::size_t> path;
  if (t.is_leaf()) fail_at(t, path, "cannot transform a bare leaf");
  if (empty_yield(t)) fail_at(t, path, "the transform requires epsilon-free trees");
  TreeTransformer tt{g, l, opts, strict};
  ParseTree out = tt.transform_node(t, path);
  switch (opts.epsilon) {
    case EpsilonMode::keep:
      return out;
    case EpsilonMode::one_step:
      return strip_one_step(std::move(out));
    case EpsilonMode::full:
      return strip_full(std::move(out));
  }
  return out;
}

namespace {

// ---------------------------------------------------------------------------
// Detransform.

struct Detransformer {
  bool factor_td;
  bool factor_lc;
  EpsilonMode eps;

  ParseTree rebuild_child(const ParseTree& c, std::vector<std::size_t>& path) {
    if (c.is_leaf()) {
      if (c.label.is_epsilon()) fail_at(c, path, "unexpected empty leaf");
      if (!c.label.is_terminal())
        fail_at(c, path, "leaf label is not a terminal");
      return c;
    }
    if (is_transform_internal(c.label))
      fail_at(c, path, "misplaced transform-internal node");
    return rebuild(c, path);
  }

  Symbol parse_name(const std::string& name) const {
    return parse_symbol_token(name, SymbolKind::nonterminal);
  }

  // n: an internal node labeled with an original category.
  ParseTree rebuild(const ParseTree& n, std::vector<std::size_t>& path) {
    const Symbol d = n.label;
    const std::string d_name = d.render();

    // Split off the trailing LC chain, if any.
    const ParseTree* chain = nullptr;
    std::size_t base_count = n.children.size();
    if (base_count > 0 && !n.children.back().is_leaf() &&
        n.children.back().label.kind() == SymbolKind::lc_pair) {
      chain = &n.children.back();
      --base_count;
      if (chain->label.head() != d_name) {
        path.push_back(base_count);
        fail_at(*chain, path,
                "chain is predicted for '" + chain->label.head() +
                    "', not for '" + d_name + "'");
      }
    }
    if (chain == nullptr && eps == EpsilonMode::keep)
      fail_at(n, path, "missing trailing LC chain in a keep-mode tree");
    if (base_count == 0) fail_at(n, path, "node has no corner");

    // Rebuild the corner.
    ParseTree current;
    const ParseTree& first = n.children.front();
    if (base_count == 1 && !first.is_leaf() &&
        first.label.kind() == SymbolKind::td_prime) {
      if (!factor_td) {
        path.push_back(0);
        fail_at(first, path, "TD node in an unfactored tree");
      }
      Symbol a = parse_name(first.label.head());
      std::vector<ParseTree> alpha;
      alpha.reserve(first.children.size());
      path.push_back(0);
      for (std::size_t i = 0; i < first.children.size(); ++i) {
        path.push_back(i);
        alpha.push_back(rebuild_child(first.children[i], path));
        path.pop_back();
      }
      path.pop_back();
      if (chain != nullptr && chain->label.tail() != a.render()) {
        fail_at(n, path,
                "chain expects corner '" + chain->label.tail() +
                    "' but the TD node names '" + a.render() + "'");
      }
      current = node(std::move(a), std::move(alpha));
    } else if (base_count == 1 && first.is_leaf() && chain != nullptr &&
               chain->label.tail() == first.label.render()) {
      // Terminal corner: the chain climbs from the word itself.
      if (!first.label.is_terminal())
        fail_at(first, path, "leaf label is not a terminal");
      current = first;
    } else {
      // Unfactored corner production; its category is named by the chain
      // head, and is the node's own category when the chain was composed
      // away.
      if (factor_td && !(base_count == 1 && first.is_leaf())) {
        fail_at(n, path, "expected a TD corner in a factored tree");
      }
      Symbol a = chain != nullptr ? parse_name(chain->label.tail()) : d;
      std::vector<ParseTree> alpha;
      alpha.reserve(base_count);
      for (std::size_t i = 0; i < base_count; ++i) {
        path.push_back(i);
        alpha.push_back(rebuild_child(n.children[i], path));
        path.pop_back();
      }
      current = node(std::move(a), std::move(alpha));
    }

    // Walk the chain, wrapping one production per chain node.
    if (chain != nullptr) {
      path.push_back(base_count);
      current = walk_chain(*chain, d, d_name, std::move(current), path);
      path.pop_back();
    }

    if (current.label != d) {
      fail_at(n, path,
              "rebuilt category '" + current.label.render() +
                  "' does not match '" + d_name +
                  "'; a folded chain cannot be restored");
    }
    return current;
  }

  ParseTree walk_chain(const ParseTree& head, const Symbol& d,
                       const std::string& d_name, ParseTree current,
                       std::vector<std::size_t>& path) {
    const std::size_t depth0 = path.size();
    const ParseTree* walk = &head;
    while (true) {
      const std::vector<ParseTree>& kids = walk->children;
      if (kids.size() == 1 && kids.front().is_leaf() &&
          kids.front().label.is_epsilon()) {
        if (walk->label.head() == walk->label.tail()) break;  // end marker
        // A residual empty category: a composed step whose body was empty.
        current = node(d, {std::move(current)});
        break;
      }

      const ParseTree* next = nullptr;
      if (!kids.empty() && !kids.back().is_leaf() &&
          kids.back().label.kind() == SymbolKind::lc_pair) {
        next = &kids.back();
        if (next->label.head() != d_name) {
          path.push_back(kids.size() - 1);
          fail_at(*next, path,
                  "chain is predicted for '" + next->label.head() +
                      "', not for '" + d_name + "'");
        }
      }
      const std::size_t body_count = kids.size() - (next != nullptr ? 1 : 0);

      std::optional<Symbol> c_sym;
      std::vector<ParseTree> beta;
      if (factor_lc && body_count == 1 && !kids.front().is_leaf() &&
          kids.front().label.kind() == SymbolKind::lc_fact) {
        const ParseTree& pt = kids.front();
        if (pt.label.tail() != walk->label.tail()) {
          path.push_back(0);
          fail_at(pt, path,
                  "PT corner '" + pt.label.tail() +
                      "' does not match chain corner '" + walk->label.tail() +
                      "'");
        }
        c_sym = parse_name(pt.label.head());
        path.push_back(0);
        if (!(pt.children.size() == 1 && pt.children.front().is_leaf() &&
              pt.children.front().label.is_epsilon())) {
          for (std::size_t i = 0; i < pt.children.size(); ++i) {
            path.push_back(i);
            beta.push_back(rebuild_child(pt.children[i], path));
            path.pop_back();
          }
        }
        path.pop_back();
      } else {
        if (factor_lc && body_count > 0) {
          fail_at(*walk, path, "expected a PT node in a factored chain");
        }
        for (std::size_t i = 0; i < body_count; ++i) {
          path.push_back(i);
          beta.push_back(rebuild_child(kids[i], path));
          path.pop_back();
        }
      }

      // The step's parent category: named by the next chain node, recorded
      // by the PT node, or — for a composed step — the prediction itself.
      if (next != nullptr) {
        Symbol t = parse_name(next->label.tail());
        if (c_sym.has_value() && *c_sym != t) {
          fail_at(*walk, path,
                  "PT names parent '" + c_sym->render() +
                      "' but the chain continues with '" + t.render() + "'");
        }
        c_sym = std::move(t);
      } else if (!c_sym.has_value()) {
        c_sym = d;
      }

      std::vector<ParseTree> wrapped;
      wrapped.reserve(beta.size() + 1);
      wrapped.push_back(std::move(current));
      for (ParseTree& b : beta) wrapped.push_back(std::move(b));
      current = node(std::move(*c_sym), std::move(wrapped));

      if (next == nullptr) break;
      path.push_back(kids.size() - 1);
      walk = next;
    }
    path.resize(depth0);
    return current;
  }
};

}  // namespace

ParseTree lc_tree_detransform(const ParseTree& t,
                              const TransformOptions& opts) {
  std::vector<std::size_t> path;
  if (t.is_leaf()) fail_at(t, path, "cannot detransform a bare leaf");
  if (is_transform_internal(t.label))
    fail_at(t, path, "the root must carry an original category");
  Detransformer dt{uses_td(opts), uses_lc(opts), opts.epsilon};
  return dt.rebuild(t, path);
}

ParseTree break_unary_cycles_tree(const ParseTree& t,
                                  const UnaryCycleInfo& info) {
  if (t.is_leaf()) return t;
  if (info.cyclic.count(t.label) == 0) {
    std::vector<ParseTree> kids;
    kids.reserve(t.children.size());
    for (const ParseTree& c : t.children)
      kids.push_back(break_unary_cycles_tree(c, info));
    return node(t.label, std::move(kids));
  }

  // Follow the unary chain while it stays within one cyclic component.
  const ParseTree* bottom = &t;
  const int scc = info.scc_id.at(t.label);
  while (bottom->children.size() == 1 && !bottom->children.front().is_leaf()) {
    const ParseTree& c = bottom->children.front();
    if (info.cyclic.count(c.label) == 0 || info.scc_id.at(c.label) != scc)
      break;
    bottom = &c;
  }
  std::vector<ParseTree> kids;
  kids.reserve(bottom->children.size());
  for (const ParseTree& c : bottom->children)
    kids.push_back(break_unary_cycles_tree(c, info));
  return node(t.label,
              {node(Symbol::natural(bottom->label), std::move(kids))});
}

}  // namespace lct
