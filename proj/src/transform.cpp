#include "lct/transform.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "lct/error.hpp"

namespace lct {

std::string_view schema_name(SchemaId id) {
  switch (id) {
    case SchemaId::s1a:
      return "1a";
    case SchemaId::s1b:
      return "1b";
    case SchemaId::s1c:
      return "1c";
    case SchemaId::s1d:
      return "1d";
    case SchemaId::eps_a1:
      return "eps_a1";
    case SchemaId::eps_a2:
      return "eps_a2";
    case SchemaId::eps_b1:
      return "eps_b1";
    case SchemaId::eps_b2:
      return "eps_b2";
    case SchemaId::eps_c1:
      return "eps_c1";
    case SchemaId::eps_c2:
      return "eps_c2";
    case SchemaId::s2a:
      return "2a";
    case SchemaId::s2b:
      return "2b";
    case SchemaId::s3a:
      return "3a";
    case SchemaId::s3b:
      return "3b";
  }
  return "?";
}

namespace {

// Rejects a unary cycle inside L up front: left-corner spines could then be
// unbounded, and the chain sums below would diverge.
void check_unary_l_acyclic(const Grammar& g, const ProductionSet& L) {
  std::map<Symbol, std::vector<Symbol>> edges;
  for (std::size_t i : L.indices()) {
    const Production& p = g.productions()[i];
    if (p.rhs.size() == 1 && !p.rhs[0].is_terminal())
      edges[p.lhs].push_back(p.rhs[0]);
  }
  std::map<Symbol, int> color;  // 0 unseen, 1 on the stack, 2 finished
  auto visit = [&](auto&& self, const Symbol& s) -> void {
    int& c = color[s];
    if (c == 1)
      throw Error(
          "the selected left-corner set contains a unary cycle through '" +
          s.render() + "'; apply remove_unary_cycles first");
    if (c == 2) return;
    c = 1;
    auto e = edges.find(s);
    if (e != edges.end())
      for (const Symbol& t : e->second) self(self, t);
    color[s] = 2;
  };
  for (const auto& [s, unused] : edges) visit(visit, s);
}

// chains[d][a] = total weight of unary chains d ⇒*_L a (the empty chain
// contributes chains[d][d] = 1). Defined because the unary part of L is
// acyclic; used by full ε-removal to fold vanished chains into weights.
using ChainTable = std::map<Symbol, std::map<Symbol, double>>;

ChainTable unary_chain_weights(const Grammar& g, const ProductionSet& L) {
  std::map<Symbol, std::vector<std::pair<Symbol, double>>> edges;
  for (std::size_t i : L.indices()) {
    const Production& p = g.productions()[i];
    if (p.rhs.size() == 1 && !p.rhs[0].is_terminal())
      edges[p.lhs].emplace_back(p.rhs[0], p.weight);
  }
  ChainTable table;
  auto fill = [&](auto&& self,
                  const Symbol& d) -> const std::map<Symbol, double>& {
    auto it = table.find(d);
    if (it != table.end()) return it->second;
    std::map<Symbol, double> row;
    row[d] = 1.0;
    auto e = edges.find(d);
    if (e != edges.end())
      for (const auto& [x, w] : e->second)
        for (const auto& [a, wa] : self(self, x)) row[a] += w * wa;
    return table.emplace(d, std::move(row)).first->second;
  };
  for (const Symbol& d : g.nonterminals()) fill(fill, d);
  return table;
}

struct Generator {
  const Grammar& g;
  const ProductionSet& L;
  const TransformOptions& opts;
  PairRelation links;      // plain for keep/one_step, strict for full
  ChainTable chains;       // full mode only
  std::set<Symbol> sites;  // prediction sites when the Moore filter is on
  std::vector<SchemaInstance> out;
  std::unordered_set<Production, ProductionShapeHash, ProductionShapeEq> once;

  bool factor_td() const {
    return opts.factor == FactorMode::td || opts.factor == FactorMode::td_lc;
  }
  bool factor_lc() const {
    return opts.factor == FactorMode::lc || opts.factor == FactorMode::td_lc;
  }
  bool allow_d(const Symbol& d) const {
    return !opts.moore_constraint || sites.count(d) > 0;
  }
  bool linked(const Symbol& d, const Symbol& x) const {
    return !opts.prune_links || links.count({d, x}) > 0;
  }
  bool reaches(const Symbol& d, const Symbol& a) const {
    auto it = chains.find(d);
    return it != chains.end() && it->second.count(a) > 0;
  }
  double chain_weight(const Symbol& d, const Symbol& a) const {
    return chains.at(d).at(a);
  }

  void emit(SchemaId id, Symbol lhs, std::vector<Symbol> rhs, double weight,
            std::optional<Production> origin) {
    Production p{std::move(lhs), std::move(rhs),
                 opts.weighted ? weight : 1.0};
    out.push_back(SchemaInstance{id, std::move(p), std::move(origin)});
  }
  // For instances determined by their symbols alone and shared by several
  // source productions (3a and its composed form): one emission per shape.
  void emit_shape_once(SchemaId id, Symbol lhs, std::vector<Symbol> rhs,
                       double weight) {
    Production key{lhs, rhs, 1.0};
    if (!once.insert(std::move(key)).second) return;
    emit(id, std::move(lhs), std::move(rhs), weight, std::nullopt);
  }

  // Left-hand sides with at least one production outside L (the candidates
  // for a shared top-down expansion symbol).
  std::set<Symbol> top_down_heads() const {
    std::set<Symbol> heads;
    for (std::size_t i = 0; i < g.productions().size(); ++i)
      if (!L.contains(i)) heads.insert(g.productions()[i].lhs);
    return heads;
  }
};

// Schemata for ε-mode keep (also the base set folded by one_step):
//   1a  D -> w LC(D;w)                        w a terminal
//   1b  D -> α LC(D;A)                        A -> α outside L
//   1c  LC(D;B) -> β LC(D;C)                  C -> B β in L
//   1d  LC(D;D) -> ε
// With factoring, 1b splits into 2a/2b and 1c into 3a/3b.
void generate_keep_family(Generator& gen) {
  const Grammar& g = gen.g;

  for (const Symbol& d : g.nonterminals()) {
    if (!gen.allow_d(d)) continue;
    for (const Symbol& w : g.terminals())
      if (gen.linked(d, w))
        gen.emit(SchemaId::s1a, d, {w, Symbol::lc_pair(d, w)}, 1.0,
                 std::nullopt);
  }

  if (!gen.factor_td()) {
    for (const Symbol& d : g.nonterminals()) {
      if (!gen.allow_d(d)) continue;
      for (std::size_t i = 0; i < g.productions().size(); ++i) {
        if (gen.L.contains(i)) continue;
        const Production& p = g.productions()[i];
        if (!gen.linked(d, p.lhs)) continue;
        std::vector<Symbol> rhs = p.rhs;
        rhs.push_back(Symbol::lc_pair(d, p.lhs));
        gen.emit(SchemaId::s1b, d, std::move(rhs), p.weight, p);
      }
    }
  } else {
    const std::set<Symbol> heads = gen.top_down_heads();
    for (const Symbol& d : g.nonterminals()) {
      if (!gen.allow_d(d)) continue;
      for (const Symbol& a : heads)
        if (gen.linked(d, a))
          gen.emit(SchemaId::s2a, d,
                   {Symbol::td_prime(a), Symbol::lc_pair(d, a)}, 1.0,
                   std::nullopt);
    }
    for (std::size_t i = 0; i < g.productions().size(); ++i) {
      if (gen.L.contains(i)) continue;
      const Production& p = g.productions()[i];
      gen.emit(SchemaId::s2b, Symbol::td_prime(p.lhs), p.rhs, p.weight, p);
    }
  }

  if (!gen.factor_lc()) {
    for (const Symbol& d : g.nonterminals()) {
      if (!gen.allow_d(d)) continue;
      for (std::size_t i : gen.L.indices()) {
        const Production& p = g.productions()[i];
        const Symbol& b = p.rhs.front();
        if (!gen.linked(d, b) || !gen.linked(d, p.lhs)) continue;
        std::vector<Symbol> rhs(p.rhs.begin() + 1, p.rhs.end());
        rhs.push_back(Symbol::lc_pair(d, p.lhs));
        gen.emit(SchemaId::s1c, Symbol::lc_pair(d, b), std::move(rhs),
                 p.weight, p);
      }
    }
  } else {
    for (const Symbol& d : g.nonterminals()) {
      if (!gen.allow_d(d)) continue;
      for (std::size_t i : gen.L.indices()) {
        const Production& p = g.productions()[i];
        const Symbol& b = p.rhs.front();
        if (!gen.linked(d, b) || !gen.linked(d, p.lhs)) continue;
        gen.emit_shape_once(
            SchemaId::s3a, Symbol::lc_pair(d, b),
            {Symbol::lc_fact(p.lhs, b), Symbol::lc_pair(d, p.lhs)}, 1.0);
      }
    }
    for (std::size_t i : gen.L.indices()) {
      const Production& p = g.productions()[i];
      gen.emit(SchemaId::s3b, Symbol::lc_fact(p.lhs, p.rhs.front()),
               std::vector<Symbol>(p.rhs.begin() + 1, p.rhs.end()), p.weight,
               p);
    }
  }

  for (const Symbol& d : g.nonterminals())
    if (gen.allow_d(d) && gen.linked(d, d))
      gen.emit(SchemaId::s1d, Symbol::lc_pair(d, d), {}, 1.0, std::nullopt);
}

// Full ε-removal emits the composed schema family directly; every vanished
// trailing LC(D;D) corresponds to a unary chain in L whose weight is folded
// into the composed production. β=ε left-corner productions stay unfactored
// here: factoring them would reintroduce ε-productions.
void generate_full_family(Generator& gen) {
  const Grammar& g = gen.g;

  for (const Symbol& d : g.nonterminals()) {
    if (!gen.allow_d(d)) continue;
    for (const Symbol& w : g.terminals())
      if (gen.linked(d, w))
        gen.emit(SchemaId::eps_a1, d, {w, Symbol::lc_pair(d, w)}, 1.0,
                 std::nullopt);
  }

  for (const Symbol& d : g.nonterminals()) {
    if (!gen.allow_d(d)) continue;
    for (std::size_t i : gen.L.indices()) {
      const Production& p = g.productions()[i];
      if (p.rhs.size() != 1 || !p.rhs[0].is_terminal()) continue;
      if (!gen.reaches(d, p.lhs)) continue;
      gen.emit(SchemaId::eps_a2, d, {p.rhs[0]},
               gen.chain_weight(d, p.lhs) * p.weight, p);
    }
  }

  if (!gen.factor_td()) {
    for (const Symbol& d : g.nonterminals()) {
      if (!gen.allow_d(d)) continue;
      for (std::size_t i = 0; i < g.productions().size(); ++i) {
        if (gen.L.contains(i)) continue;
        const Production& p = g.productions()[i];
        if (!gen.linked(d, p.lhs)) continue;
        std::vector<Symbol> rhs = p.rhs;
        rhs.push_back(Symbol::lc_pair(d, p.lhs));
        gen.emit(SchemaId::eps_b1, d, std::move(rhs), p.weight, p);
      }
    }
    for (const Symbol& d : g.nonterminals()) {
      if (!gen.allow_d(d)) continue;
      for (std::size_t i = 0; i < g.productions().size(); ++i) {
        if (gen.L.contains(i)) continue;
        const Production& p = g.productions()[i];
        if (!gen.reaches(d, p.lhs)) continue;
        gen.emit(SchemaId::eps_b2, d, p.rhs,
                 gen.chain_weight(d, p.lhs) * p.weight, p);
      }
    }
  } else {
    const std::set<Symbol> heads = gen.top_down_heads();
    for (const Symbol& d : g.nonterminals()) {
      if (!gen.allow_d(d)) continue;
      for (const Symbol& a : heads)
        if (gen.linked(d, a))
          gen.emit(SchemaId::s2a, d,
                   {Symbol::td_prime(a), Symbol::lc_pair(d, a)}, 1.0,
                   std::nullopt);
    }
    for (const Symbol& d : g.nonterminals()) {
      if (!gen.allow_d(d)) continue;
      for (const Symbol& a : heads)
        if (gen.reaches(d, a))
          gen.emit(SchemaId::eps_b2, d, {Symbol::td_prime(a)},
                   gen.chain_weight(d, a), std::nullopt);
    }
    for (std::size_t i = 0; i < g.productions().size(); ++i) {
      if (gen.L.contains(i)) continue;
      const Production& p = g.productions()[i];
      gen.emit(SchemaId::s2b, Symbol::td_prime(p.lhs), p.rhs, p.weight, p);
    }
  }

  if (!gen.factor_lc()) {
    for (const Symbol& d : g.nonterminals()) {
      if (!gen.allow_d(d)) continue;
      for (std::size_t i : gen.L.indices()) {
        const Production& p = g.productions()[i];
        const Symbol& b = p.rhs.front();
        if (!gen.linked(d, b) || !gen.linked(d, p.lhs)) continue;
        std::vector<Symbol> rhs(p.rhs.begin() + 1, p.rhs.end());
        rhs.push_back(Symbol::lc_pair(d, p.lhs));
        gen.emit(SchemaId::eps_c1, Symbol::lc_pair(d, b), std::move(rhs),
                 p.weight, p);
      }
    }
    for (const Symbol& d : g.nonterminals()) {
      if (!gen.allow_d(d)) continue;
      for (std::size_t i : gen.L.indices()) {
        const Production& p = g.productions()[i];
        if (p.rhs.size() < 2) continue;
        const Symbol& b = p.rhs.front();
        if (!gen.linked(d, b) || !gen.reaches(d, p.lhs)) continue;
        gen.emit(SchemaId::eps_c2, Symbol::lc_pair(d, b),
                 std::vector<Symbol>(p.rhs.begin() + 1, p.rhs.end()),
                 gen.chain_weight(d, p.lhs) * p.weight, p);
      }
    }
  } else {
    for (const Symbol& d : g.nonterminals()) {
      if (!gen.allow_d(d)) continue;
      for (std::size_t i : gen.L.indices()) {
        const Production& p = g.productions()[i];
        const Symbol& b = p.rhs.front();
        if (!gen.linked(d, b) || !gen.linked(d, p.lhs)) continue;
        if (p.rhs.size() < 2) {
          std::vector<Symbol> rhs{Symbol::lc_pair(d, p.lhs)};
          gen.emit(SchemaId::eps_c1, Symbol::lc_pair(d, b), std::move(rhs),
                   p.weight, p);
        } else {
          gen.emit_shape_once(
              SchemaId::s3a, Symbol::lc_pair(d, b),
              {Symbol::lc_fact(p.lhs, b), Symbol::lc_pair(d, p.lhs)}, 1.0);
        }
      }
    }
    for (const Symbol& d : g.nonterminals()) {
      if (!gen.allow_d(d)) continue;
      for (std::size_t i : gen.L.indices()) {
        const Production& p = g.productions()[i];
        if (p.rhs.size() < 2) continue;
        const Symbol& b = p.rhs.front();
        if (!gen.linked(d, b) || !gen.reaches(d, p.lhs)) continue;
        gen.emit_shape_once(SchemaId::eps_c2, Symbol::lc_pair(d, b),
                            {Symbol::lc_fact(p.lhs, b)},
                            gen.chain_weight(d, p.lhs));
      }
    }
    for (std::size_t i : gen.L.indices()) {
      const Production& p = g.productions()[i];
      if (p.rhs.size() < 2) continue;
      gen.emit(SchemaId::s3b, Symbol::lc_fact(p.lhs, p.rhs.front()),
               std::vector<Symbol>(p.rhs.begin() + 1, p.rhs.end()), p.weight,
               p);
    }
  }
}

std::optional<SchemaId> one_step_composed_id(SchemaId s) {
  switch (s) {
    case SchemaId::s1b:
    case SchemaId::s2a:
      return SchemaId::eps_b2;
    case SchemaId::s1c:
    case SchemaId::s3a:
      return SchemaId::eps_c2;
    default:
      return std::nullopt;
  }
}

// One-step ε-removal: partially evaluate every instance ending in LC(D;D)
// against 1d, keep the original, and drop all 1d instances. The grammar
// stays weakly equivalent; only the designated empty category disappears.
std::vector<SchemaInstance> fold_one_step(std::vector<SchemaInstance> in) {
  std::vector<SchemaInstance> out;
  out.reserve(in.size() * 2);
  for (SchemaInstance& inst : in) {
    if (inst.schema == SchemaId::s1d) continue;
    std::optional<SchemaId> composed = one_step_composed_id(inst.schema);
    bool ends_in_self_pair = false;
    if (composed && !inst.production.rhs.empty()) {
      const Symbol& last = inst.production.rhs.back();
      ends_in_self_pair =
          last.kind() == SymbolKind::lc_pair && last.head() == last.tail();
    }
    out.push_back(inst);
    if (!ends_in_self_pair) continue;
    SchemaInstance folded = std::move(inst);
    folded.schema = *composed;
    folded.production.rhs.pop_back();
    out.push_back(std::move(folded));
  }
  return out;
}

}  // namespace

TransformResult lc_transform(const Grammar& g, const ProductionSet& L,
                             const TransformOptions& opts) {
  if (!g.is_epsilon_free())
    throw Error("the left-corner transform requires an epsilon-free grammar");
  check_unary_l_acyclic(g, L);

  Generator gen{g, L, opts, {}, {}, {}, {}, {}};
  gen.links = opts.epsilon == EpsilonMode::full
                  ? strict_left_corner_relation(g, L)
                  : left_corner_relation(g, L);
  if (opts.epsilon == EpsilonMode::full)
    gen.chains = unary_chain_weights(g, L);
  if (opts.moore_constraint) {
    gen.sites.insert(g.start());
    for (const Production& p : g.productions())
      for (std::size_t k = 1; k < p.rhs.size(); ++k)
        if (!p.rhs[k].is_terminal()) gen.sites.insert(p.rhs[k]);
  }

  if (opts.epsilon == EpsilonMode::full)
    generate_full_family(gen);
  else
    generate_keep_family(gen);

  std::vector<SchemaInstance> instances =
      opts.epsilon == EpsilonMode::one_step ? fold_one_step(std::move(gen.out))
                                            : std::move(gen.out);

  // Duplicate shapes arise when distinct derivational sources produce the
  // same production (e.g. different chain endpoints); their weights add up.
  // The first instance keeps the provenance slot.
  std::vector<SchemaInstance> merged;
  std::unordered_map<Production, std::size_t, ProductionShapeHash,
                     ProductionShapeEq>
      slot;
  for (SchemaInstance& inst : instances) {
    auto [it, fresh] = slot.try_emplace(inst.production, merged.size());
    if (fresh)
      merged.push_back(std::move(inst));
    else if (opts.weighted)
      merged[it->second].production.weight += inst.production.weight;
  }

  std::vector<Production> productions;
  productions.reserve(merged.size());
  for (const SchemaInstance& inst : merged)
    productions.push_back(inst.production);
  Grammar whole = Grammar::make(std::move(productions), g.start(),
                                g.pos_tags(), opts.weighted);
  std::vector<std::size_t> kept;
  Grammar pruned = prune_useless(whole, &kept);

  TransformResult result{std::move(pruned), {}};
  result.provenance.reserve(kept.size());
  for (std::size_t i : kept)
    result.provenance.push_back(std::move(merged[i]));
  return result;
}

std::string write_provenance(const TransformResult& result) {
  std::string out;
  for (const SchemaInstance& inst : result.provenance) {
    out += schema_name(inst.schema);
    out += '\t';
    out += render(inst.production);
    out += '\t';
    out += inst.origin ? render(*inst.origin) : "-";
    out += '\n';
  }
  return out;
}

}  // namespace lct
