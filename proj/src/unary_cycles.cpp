#include "lct/unary_cycles.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <map>

#include "lct/error.hpp"

namespace lct {
namespace {

// Does the right-hand side derive the single-symbol string 'target' via
// unary productions? (Relevant only for unary right-hand sides.)
bool derives_symbol(const std::vector<Symbol>& rhs, const Symbol& target,
                    const PairRelation& unary_star) {
  return rhs.size() == 1 && !rhs[0].is_terminal() &&
         unary_star.count({rhs[0], target}) > 0;
}

}  // namespace

Grammar remove_unary_cycles(const Grammar& g) {
  UnaryCycleInfo info = unary_cycle_info(g);
  if (info.empty()) return g;

  PairRelation unary_star = unary_chain_relation(g, ProductionSet::all(g));

  // Exit productions of a cyclic nonterminal: those that do not lead back to
  // their own left-hand side by a unary chain.
  auto is_exit = [&](const Production& p) {
    return !derives_symbol(p.rhs, p.lhs, unary_star);
  };

  // Group each component's members in sorted order.
  std::map<int, std::vector<Symbol>> components;
  for (const Symbol& a : info.cyclic) components[info.scc_id.at(a)].push_back(a);
  for (auto& [id, members] : components) {
    std::sort(members.begin(), members.end());
  }

  // Exit-weight totals Z and, for weighted grammars, the chain sums
  // S = (I - U)^-1 over each component's unary-production weight matrix.
  std::unordered_map<Symbol, double, SymbolHash> exit_total;
  for (const Symbol& a : info.cyclic) exit_total.emplace(a, 0.0);
  for (const Production& p : g.productions()) {
    if (info.cyclic.count(p.lhs) > 0 && is_exit(p)) {
      exit_total[p.lhs] += p.weight;
    }
  }

  std::unordered_map<Symbol, std::unordered_map<Symbol, double, SymbolHash>,
                     SymbolHash>
      chain_sum;
  if (g.weighted()) {
    for (const auto& [id, members] : components) {
      const int n = static_cast<int>(members.size());
      std::unordered_map<Symbol, int, SymbolHash> pos;
      for (int i = 0; i < n; ++i) pos.emplace(members[i], i);
      Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n);
      for (const Production& p : g.productions()) {
        auto from = pos.find(p.lhs);
        if (from == pos.end() || p.rhs.size() != 1) continue;
        auto to = pos.find(p.rhs[0]);
        if (to == pos.end()) continue;
        u(from->second, to->second) += p.weight;
      }
      double radius = u.eigenvalues().cwiseAbs().maxCoeff();
      if (radius >= 1.0 - 1e-12) {
        throw Error(
            "unary cycle through '" + members.front().render() +
            "' has chain weight " + std::to_string(radius) +
            " >= 1; the chain sum diverges");
      }
      Eigen::MatrixXd s = (Eigen::MatrixXd::Identity(n, n) - u)
                              .partialPivLu()
                              .solve(Eigen::MatrixXd::Identity(n, n));
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          chain_sum[members[i]][members[j]] = s(i, j);
        }
      }
    }
  }

  std::vector<Production> out;
  out.reserve(g.productions().size() + 2 * info.cyclic.size());
  for (const Production& p : g.productions()) {
    if (info.cyclic.count(p.lhs) == 0) {
      out.push_back(p);
      continue;
    }
    if (!is_exit(p)) continue;  // absorbed into the chain sums
    Production q = p;
    q.lhs = Symbol::natural(p.lhs);
    if (g.weighted()) {
      q.weight = p.weight / exit_total.at(p.lhs);
    }
    out.push_back(std::move(q));
  }
  for (const auto& [id, members] : components) {
    for (const Symbol& a : members) {
      for (const Symbol& d : members) {
        if (exit_total.at(d) == 0.0) continue;  // NAT(d) would be unproductive
        Production q;
        q.lhs = a;
        q.rhs = {Symbol::natural(d)};
        if (g.weighted()) q.weight = chain_sum.at(a).at(d) * exit_total.at(d);
        out.push_back(std::move(q));
      }
    }
  }

  Grammar result =
      Grammar::make(std::move(out), g.start(), g.pos_tags(), g.weighted());
  return result;
}

}  // namespace lct
