// Regenerates the bundled desk-scale corpus: data/mini_grammar.gr and
// data/mini_treebank.mrg. The grammar below is synthetic but treebank-shaped:
// POS-tag terminals, several left-recursive productions (direct, mutual and
// via a unary production), one unary cycle (ADJP/ADVP), and pairwise-distinct
// right-hand sides so transformed productions keep distinct origins.
#include <cstdio>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "lct/estimate.hpp"
#include "lct/grammar_io.hpp"
#include "lct/random.hpp"
#include "lct/tree.hpp"

namespace {

const char* kGrammar = R"(%start S
%pos cc cd comp dt in jj nn nns prp rb vbd vbz
S -> NP VP
S -> S cc S
S -> S PP
S -> VP
NP -> NP PP
NP -> NP SBAR
NP -> NP cc NP
NP -> NP ADJP
NP -> NP QP
NP -> S nns
NP -> QP nns
NP -> ADJP nns
NP -> dt nn
NP -> nns
NP -> prp
VP -> VP ADVP
VP -> VP PP
VP -> VP SBAR
VP -> S rb
VP -> vbz NP
VP -> vbd NP
VP -> vbz NP PP
VP -> vbz SBAR
PP -> in NP
SBAR -> comp S
SBAR -> in S
QP -> QP cd
QP -> NP cd
QP -> cd
ADJP -> jj
ADJP -> ADJP cc ADJP
ADJP -> ADVP
ADVP -> ADJP
ADVP -> rb
)";

constexpr unsigned kSeed = 20260817u;
constexpr int kTrees = 200;

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <output-dir>\n", argv[0]);
    return 2;
  }
  const std::string dir = argv[1];

  lct::Grammar g = lct::parse_grammar(kGrammar);
  std::mt19937 rng(kSeed);
  std::vector<lct::ParseTree> trees;
  trees.reserve(kTrees);
  for (int i = 0; i < kTrees; ++i) {
    trees.push_back(lct::random_tree(g, rng, 6 + (i * 7) % 45));
  }

  std::unordered_set<std::string> observed;
  int cycle_trees = 0;
  for (const lct::ParseTree& t : trees) {
    bool cyclic = false;
    for (const lct::Production& p : lct::tree_productions(t)) {
      observed.insert(render(p));
      if (render(p) == "ADJP -> ADVP" || render(p) == "ADVP -> ADJP") {
        cyclic = true;
      }
    }
    if (cyclic) ++cycle_trees;
  }

  lct::write_grammar_file(g, dir + "/mini_grammar.gr");
  lct::write_text_file(dir + "/mini_treebank.mrg", lct::write_trees(trees));

  std::printf("grammar productions: %zu\n", g.productions().size());
  std::printf("trees: %zu\n", trees.size());
  std::printf("distinct productions observed: %zu\n", observed.size());
  std::printf("trees touching the unary cycle: %d\n", cycle_trees);
  return 0;
}
