#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lct/grammar.hpp"
#include "lct/relations.hpp"

namespace lct {

enum class FactorMode { none, td, lc, td_lc };
enum class EpsilonMode { keep, one_step, full };

struct TransformOptions {
  FactorMode factor = FactorMode::none;
  EpsilonMode epsilon = EpsilonMode::keep;
  bool prune_links = true;
  bool moore_constraint = false;
  // When set, production weights are propagated (chain sums for composed
  // productions, duplicate shapes merged by summing); otherwise all output
  // weights are 1 and duplicates collapse.
  bool weighted = false;
};

enum class SchemaId {
  s1a,
  s1b,
  s1c,
  s1d,
  eps_a1,
  eps_a2,
  eps_b1,
  eps_b2,
  eps_c1,
  eps_c2,
  s2a,
  s2b,
  s3a,
  s3b,
};

std::string_view schema_name(SchemaId id);

struct SchemaInstance {
  SchemaId schema;
  Production production;
  // The source production the instance was read off (absent for instances
  // determined by symbols alone: 1a, 1d, 2a, 3a, eps_a1 and the factored
  // composed forms).
  std::optional<Production> origin;
};

struct TransformResult {
  Grammar grammar;
  // Aligned with grammar.productions(); when several instances merge into
  // one production, the first one (in canonical order) is kept.
  std::vector<SchemaInstance> provenance;
};

// The selective left-corner transform of g with respect to the production
// set L. Requires an ε-free grammar whose unary productions in L are
// acyclic. The output is always useless-pruned.
TransformResult lc_transform(const Grammar& g, const ProductionSet& L,
                             const TransformOptions& opts);

// One line per production: "<schema>\t<production>\t<origin or ->".
std::string write_provenance(const TransformResult& result);

inline GrammarStats grammar_stats(const Grammar& g) { return g.stats(); }

}  // namespace lct
