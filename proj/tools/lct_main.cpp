// lct: command-line front end for the left-corner grammar-transform library.
//
// Subcommands: analyze, transform, trees, estimate, parse, eval, oracle,
// random. Every run echoes its resolved configuration to stderr; payload
// output goes to stdout or to the file named by -o. Exit codes: 0 success,
// 1 domain error (bad grammar, unparseable input, ...), 2 usage error.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "lct/cky.hpp"
#include "lct/enumerate.hpp"
#include "lct/error.hpp"
#include "lct/estimate.hpp"
#include "lct/grammar.hpp"
#include "lct/grammar_io.hpp"
#include "lct/parseval.hpp"
#include "lct/random.hpp"
#include "lct/relations.hpp"
#include "lct/transform.hpp"
#include "lct/tree.hpp"
#include "lct/tree_transform.hpp"
#include "lct/unary_cycles.hpp"

namespace {

using lct::Error;
using lct::Grammar;
using lct::ParseTree;
using lct::Production;
using lct::Symbol;

// ---------------------------------------------------------------------------
// Shared option state and small helpers
// ---------------------------------------------------------------------------

struct CommonOpts {
  std::string l_mode = "l0";  // all | non-pos | l0 | file:PATH
  std::string factor = "none";
  std::string epsilon = "keep";
  bool no_prune_links = false;
  bool moore = false;
  bool weighted = false;
  std::string pos_file;
  std::string out_path;
};

void echo(const std::string& key, const std::string& value) {
  std::cerr << "config: " << key << '=' << value << '\n';
}

void note(const std::string& message) {
  std::cerr << "note: " << message << '\n';
}

void warn(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
}

std::string format_score(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string format_log_weight(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_payload(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw Error("cannot open output file '" + out_path + "'");
  f << text;
  if (!f) throw Error("cannot write output file '" + out_path + "'");
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

lct::FactorMode factor_of(const std::string& name) {
  if (name == "none") return lct::FactorMode::none;
  if (name == "td") return lct::FactorMode::td;
  if (name == "lc") return lct::FactorMode::lc;
  if (name == "td-lc") return lct::FactorMode::td_lc;
  throw Error("unknown --factor value '" + name + "'");
}

lct::EpsilonMode epsilon_of(const std::string& name) {
  if (name == "keep") return lct::EpsilonMode::keep;
  if (name == "one-step") return lct::EpsilonMode::one_step;
  if (name == "full") return lct::EpsilonMode::full;
  throw Error("unknown --epsilon value '" + name + "'");
}

lct::TransformOptions options_of(const CommonOpts& c) {
  lct::TransformOptions opts;
  opts.factor = factor_of(c.factor);
  opts.epsilon = epsilon_of(c.epsilon);
  opts.prune_links = !c.no_prune_links;
  opts.moore_constraint = c.moore;
  opts.weighted = c.weighted;
  return opts;
}

void echo_transform_opts(const CommonOpts& c) {
  echo("L", c.l_mode);
  echo("factor", c.factor);
  echo("epsilon", c.epsilon);
  echo("prune-links", c.no_prune_links ? "off" : "on");
  echo("moore", c.moore ? "on" : "off");
  echo("weighted", c.weighted ? "on" : "off");
}

// ---------------------------------------------------------------------------
// Input loading
// ---------------------------------------------------------------------------

std::set<std::string> read_pos_file(const std::string& path) {
  std::set<std::string> tags;
  std::istringstream in(lct::read_text_file(path));
  std::string tok;
  while (in >> tok) tags.insert(tok);
  if (tags.empty()) throw Error("POS-tag file '" + path + "' names no tags");
  return tags;
}

Grammar load_grammar(const std::string& path, const std::string& pos_file) {
  Grammar g = lct::read_grammar_file(path);
  if (!pos_file.empty()) {
    g = Grammar::make(g.productions(), g.start(), read_pos_file(pos_file),
                      g.weighted());
  }
  return g;
}

std::vector<ParseTree> load_trees(const std::string& path) {
  std::vector<ParseTree> trees = lct::read_trees(lct::read_text_file(path));
  if (trees.empty()) throw Error("tree file '" + path + "' contains no trees");
  return trees;
}

// One sentence per non-blank line, whitespace-tokenized.
std::vector<std::vector<std::string>> load_sentences(const std::string& path) {
  std::vector<std::vector<std::string>> sentences;
  std::istringstream in(lct::read_text_file(path));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> tokens = split_tokens(line);
    if (!tokens.empty()) sentences.push_back(std::move(tokens));
  }
  if (sentences.empty())
    throw Error("sentence file '" + path + "' contains no sentences");
  return sentences;
}

// Parser output: one line per sentence, either "TREE" (ignoring anything
// after the first TAB, so `lct parse` output feeds in directly) or "(())"
// for a sentence with no parse.
std::vector<std::optional<ParseTree>> load_test_trees(const std::string& path) {
  std::vector<std::optional<ParseTree>> out;
  std::istringstream in(lct::read_text_file(path));
  std::string line;
  while (std::getline(in, line)) {
    std::string payload = trim(line.substr(0, line.find('\t')));
    if (payload.empty()) continue;
    if (payload == "(())") {
      out.emplace_back(std::nullopt);
      continue;
    }
    std::vector<ParseTree> trees = lct::read_trees(payload);
    if (trees.size() != 1)
      throw Error("test file '" + path + "' has a line with " +
                  std::to_string(trees.size()) + " trees; expected one");
    out.emplace_back(std::move(trees.front()));
  }
  if (out.empty()) throw Error("test file '" + path + "' contains no trees");
  return out;
}

// A production per non-blank, non-# line: "A -> B c". Symbol kinds are
// resolved against the grammar's own symbol inventory.
std::vector<Production> read_production_file(const std::string& path,
                                             const Grammar& g) {
  auto resolve = [&](const std::string& tok) {
    Symbol nt = lct::parse_symbol_token(tok, lct::SymbolKind::nonterminal);
    if (g.nonterminals().count(nt)) return nt;
    Symbol t = lct::parse_symbol_token(tok, lct::SymbolKind::terminal);
    if (g.terminals().count(t)) return t;
    throw Error("production file '" + path + "' names unknown symbol '" + tok +
                "'");
  };
  std::vector<Production> shapes;
  std::istringstream in(lct::read_text_file(path));
  std::string line;
  while (std::getline(in, line)) {
    std::string body = trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    std::vector<std::string> tokens = split_tokens(body);
    if (tokens.size() < 2 || tokens[1] != "->")
      throw Error("production file '" + path + "' has a malformed line: '" +
                  body + "'");
    Production p;
    p.lhs = resolve(tokens[0]);
    for (std::size_t i = 2; i < tokens.size(); ++i)
      p.rhs.push_back(resolve(tokens[i]));
    shapes.push_back(std::move(p));
  }
  if (shapes.empty())
    throw Error("production file '" + path + "' contains no productions");
  return shapes;
}

lct::LSelection resolve_L(const Grammar& g, const std::string& l_mode) {
  lct::LSelection sel;
  if (l_mode == "all") {
    sel = lct::select_L(g, lct::LPolicy::all);
  } else if (l_mode == "non-pos") {
    sel = lct::select_L(g, lct::LPolicy::non_pos_initial);
  } else if (l_mode == "l0") {
    sel = lct::select_L(g, lct::LPolicy::l0);
  } else if (l_mode.rfind("file:", 0) == 0) {
    sel = lct::select_L_explicit(g, read_production_file(l_mode.substr(5), g));
  } else {
    throw Error("unknown --L value '" + l_mode +
                "' (expected all, non-pos, l0 or file:PATH)");
  }
  warn(sel.warnings);
  return sel;
}

// Collapses unary cycles when present, announcing the substitution. Most
// pipeline stages require a cycle-free grammar.
Grammar collapse_cycles_if_needed(const Grammar& g,
                                  lct::UnaryCycleInfo* info_out = nullptr) {
  lct::UnaryCycleInfo info = lct::unary_cycle_info(g);
  if (info_out) *info_out = info;
  if (info.empty()) return g;
  std::string names;
  for (const Symbol& s : info.cyclic) {
    if (!names.empty()) names += ", ";
    names += s.render();
  }
  note("removed unary cycles through {" + names + "} (NAT-marked exits)");
  return lct::remove_unary_cycles(g);
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

void run_analyze(const std::string& grammar_path, const CommonOpts& c) {
  echo("subcommand", "analyze");
  echo("grammar", grammar_path);
  Grammar g = load_grammar(grammar_path, c.pos_file);

  std::ostringstream out;
  lct::GrammarStats st = g.stats();
  out << "productions\t" << st.production_count << '\n';
  out << "nonterminals\t" << st.nonterminal_count << '\n';
  out << "terminals\t" << st.terminal_count << '\n';
  out << "total-rhs-symbols\t" << st.total_rhs_symbols << '\n';
  out << "start\t" << g.start().render() << '\n';
  out << "weighted\t" << (g.weighted() ? "yes" : "no") << '\n';

  lct::UnaryCycleInfo info = lct::unary_cycle_info(g);
  out << "unary-cyclic-nonterminals\t" << info.cyclic.size();
  for (const Symbol& s : info.cyclic) out << '\t' << s.render();
  out << '\n';

  Grammar base = info.empty() ? g : lct::remove_unary_cycles(g);
  if (!info.empty()) out << "note\tL0 computed after unary-cycle removal\n";
  out << "left-recursive\t" << (lct::is_left_recursive(base) ? "yes" : "no")
      << '\n';
  lct::ProductionSet l0 = lct::left_recursive_set(base);
  out << "L0-size\t" << l0.size() << '\n';
  for (std::size_t idx : l0.indices())
    out << "L0-production\t" << lct::render(base.productions()[idx]) << '\n';
  write_payload(c.out_path, out.str());
}

void run_transform(const std::string& grammar_path, const CommonOpts& c,
                   const std::string& provenance_path) {
  echo("subcommand", "transform");
  echo("grammar", grammar_path);
  echo_transform_opts(c);
  Grammar g = load_grammar(grammar_path, c.pos_file);
  g = collapse_cycles_if_needed(g);
  lct::LSelection sel = resolve_L(g, c.l_mode);
  lct::TransformResult result = lct::lc_transform(g, sel.set, options_of(c));
  if (!provenance_path.empty())
    write_payload(provenance_path, lct::write_provenance(result));
  write_payload(c.out_path, lct::write_grammar(result.grammar));
}

void run_trees(const std::string& verb, const std::string& grammar_path,
               const std::string& trees_path, const CommonOpts& c) {
  echo("subcommand", "trees " + verb);
  if (!grammar_path.empty()) echo("grammar", grammar_path);
  echo("trees", trees_path);

  std::vector<ParseTree> trees = load_trees(trees_path);
  std::vector<ParseTree> out_trees;
  out_trees.reserve(trees.size());

  if (verb == "detransform") {
    echo("factor", c.factor);
    echo("epsilon", c.epsilon);
    lct::TransformOptions opts = options_of(c);
    for (const ParseTree& t : trees)
      out_trees.push_back(lct::lc_tree_detransform(t, opts));
  } else if (verb == "break-cycles") {
    Grammar g = load_grammar(grammar_path, c.pos_file);
    lct::UnaryCycleInfo info = lct::unary_cycle_info(g);
    for (const ParseTree& t : trees)
      out_trees.push_back(lct::break_unary_cycles_tree(t, info));
  } else {  // transform
    echo_transform_opts(c);
    Grammar g = load_grammar(grammar_path, c.pos_file);
    lct::UnaryCycleInfo info;
    Grammar base = collapse_cycles_if_needed(g, &info);
    lct::LSelection sel = resolve_L(base, c.l_mode);
    lct::TransformOptions opts = options_of(c);
    for (const ParseTree& t : trees) {
      ParseTree broken =
          info.empty() ? t : lct::break_unary_cycles_tree(t, info);
      out_trees.push_back(lct::lc_tree_transform(broken, base, sel.set, opts));
    }
  }
  write_payload(c.out_path, lct::write_trees(out_trees));
}

void run_estimate(const std::string& trees_path, const CommonOpts& c) {
  echo("subcommand", "estimate");
  echo("trees", trees_path);
  std::vector<ParseTree> corpus = load_trees(trees_path);
  Symbol start = corpus.front().label;
  echo("start", start.render());
  Grammar g = lct::estimate_pcfg(corpus, start);
  if (!c.pos_file.empty())
    g = Grammar::make(g.productions(), g.start(), read_pos_file(c.pos_file),
                      g.weighted());
  write_payload(c.out_path, lct::write_grammar(g));
}

void run_parse(const std::string& grammar_path, const std::string& sents_path,
               const CommonOpts& c, int jobs) {
  echo("subcommand", "parse");
  echo("grammar", grammar_path);
  echo("sentences", sents_path);
  echo("jobs", std::to_string(jobs));
  Grammar g = load_grammar(grammar_path, c.pos_file);
  std::vector<std::vector<std::string>> sentences = load_sentences(sents_path);

  const std::size_t n = sentences.size();
  std::vector<std::optional<lct::CkyParse>> results(n);
  std::vector<std::string> errors(n);
  auto worker = [&](std::size_t shard, std::size_t stride) {
    for (std::size_t i = shard; i < n; i += stride) {
      try {
        results[i] = lct::cky_parse(g, sentences[i]);
      } catch (const Error& e) {
        errors[i] = e.what();
      }
    }
  };
  if (jobs <= 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < jobs; ++k)
      pool.emplace_back(worker, static_cast<std::size_t>(k),
                        static_cast<std::size_t>(jobs));
    for (std::thread& t : pool) t.join();
  }

  std::ostringstream out;
  std::size_t no_parse = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (results[i]) {
      out << lct::write_tree(results[i]->tree) << '\t'
          << format_log_weight(results[i]->log_weight) << '\n';
    } else {
      out << "(())\n";
      ++no_parse;
      if (!errors[i].empty())
        note("sentence " + std::to_string(i + 1) + ": " + errors[i]);
    }
  }
  if (no_parse > 0)
    note(std::to_string(no_parse) + " of " + std::to_string(n) +
         " sentences have no parse");
  write_payload(c.out_path, out.str());
}

void run_eval_score(const std::string& gold_path, const std::string& test_path,
                    bool per_sentence, const CommonOpts& c) {
  echo("subcommand", "eval score");
  echo("gold", gold_path);
  echo("test", test_path);
  std::vector<ParseTree> gold = load_trees(gold_path);
  std::vector<std::optional<ParseTree>> test = load_test_trees(test_path);
  lct::EvalReport report = lct::score_corpus(gold, test);

  std::ostringstream out;
  if (per_sentence) {
    out << "sentence\tprecision\trecall\tmatched\tgold\ttest\n";
    for (std::size_t i = 0; i < gold.size(); ++i) {
      if (!test[i]) {
        out << i + 1 << "\tno-parse\n";
        continue;
      }
      lct::ParsevalCounts pc = lct::parseval(gold[i], *test[i]);
      out << i + 1 << '\t' << format_score(pc.precision()) << '\t'
          << format_score(pc.recall()) << '\t' << pc.matched << '\t' << pc.gold
          << '\t' << pc.test << '\n';
    }
    out << '\n';
  }
  out << "metric\tvalue\n";
  out << "precision\t" << format_score(report.precision()) << '\n';
  out << "recall\t" << format_score(report.recall()) << '\n';
  out << "matched\t" << report.counts.matched << '\n';
  out << "gold\t" << report.counts.gold << '\n';
  out << "test\t" << report.counts.test << '\n';
  out << "scored\t" << report.scored << '\n';
  out << "no-parse\t" << report.no_parse_count << '\n';
  out << '\n';
  out << "precision: " << format_score(report.precision()) << '\n';
  out << "recall: " << format_score(report.recall()) << '\n';
  out << "matched: " << report.counts.matched << '\n';
  out << "gold: " << report.counts.gold << '\n';
  out << "test: " << report.counts.test << '\n';
  out << "scored: " << report.scored << '\n';
  out << "no_parse: " << report.no_parse_count << '\n';
  write_payload(c.out_path, out.str());
}

void run_eval_missing(const std::string& train_path,
                      const std::string& test_path,
                      const std::string& grammar_path, const CommonOpts& c) {
  echo("subcommand", "eval missing");
  echo("train", train_path);
  echo("test", test_path);
  std::vector<ParseTree> train = load_trees(train_path);
  std::vector<ParseTree> test = load_trees(test_path);
  std::vector<Production> plain = lct::missing_productions(train, test);

  std::ostringstream out;
  out << "missing\t" << plain.size() << '\n';
  for (const Production& p : plain)
    out << "missing-production\t" << lct::render(p) << '\n';

  std::optional<std::size_t> transformed_count;
  if (!grammar_path.empty()) {
    echo("grammar", grammar_path);
    echo_transform_opts(c);
    Grammar g = load_grammar(grammar_path, c.pos_file);
    lct::UnaryCycleInfo info;
    Grammar base = collapse_cycles_if_needed(g, &info);
    std::vector<ParseTree> train2 = train;
    std::vector<ParseTree> test2 = test;
    if (!info.empty()) {
      for (ParseTree& t : train2) t = lct::break_unary_cycles_tree(t, info);
      for (ParseTree& t : test2) t = lct::break_unary_cycles_tree(t, info);
    }
    lct::LSelection sel = resolve_L(base, c.l_mode);
    std::vector<Production> transformed = lct::missing_productions(
        train2, test2, base, sel.set, options_of(c));
    transformed_count = transformed.size();
    out << "missing-transformed\t" << transformed.size() << '\n';
    for (const Production& p : transformed)
      out << "missing-transformed-production\t" << lct::render(p) << '\n';
  }
  out << '\n';
  out << "missing: " << plain.size() << '\n';
  if (transformed_count)
    out << "missing_transformed: " << *transformed_count << '\n';
  write_payload(c.out_path, out.str());
}

void run_eval_coverage(const std::string& grammar_path,
                       const std::string& sents_path, const CommonOpts& c) {
  echo("subcommand", "eval coverage");
  echo("grammar", grammar_path);
  echo("sentences", sents_path);
  Grammar g = load_grammar(grammar_path, c.pos_file);
  std::vector<std::vector<std::string>> sentences = load_sentences(sents_path);
  lct::CoverageReport report = lct::coverage_parse_report(g, sentences);

  std::ostringstream out;
  out << "total\t" << report.total << '\n';
  out << "no-parse\t" << report.no_parse_count() << '\n';
  for (std::size_t idx : report.no_parse)
    out << "no-parse-sentence\t" << idx + 1 << '\n';
  out << '\n';
  out << "total: " << report.total << '\n';
  out << "no_parse: " << report.no_parse_count() << '\n';
  write_payload(c.out_path, out.str());
}

void run_oracle_equiv(const std::string& a_path, const std::string& b_path,
                      int max_len, const CommonOpts& c) {
  echo("subcommand", "oracle equiv");
  echo("grammar-a", a_path);
  echo("grammar-b", b_path);
  echo("max-len", std::to_string(max_len));
  Grammar a = load_grammar(a_path, "");
  Grammar b = load_grammar(b_path, "");
  std::set<std::string> sa = lct::enumerate_strings(a, max_len);
  std::set<std::string> sb = lct::enumerate_strings(b, max_len);
  if (sa == sb) {
    write_payload(c.out_path, "EQUIVALENT\n");
    return;
  }
  auto report_side = [&](const std::set<std::string>& x,
                         const std::set<std::string>& y,
                         const std::string& which) {
    std::vector<std::string> only;
    std::set_difference(x.begin(), x.end(), y.begin(), y.end(),
                        std::back_inserter(only));
    std::size_t shown = std::min<std::size_t>(only.size(), 5);
    for (std::size_t i = 0; i < shown; ++i)
      note(which + " only: '" + only[i] + "'");
    if (only.size() > shown)
      note(which + " only: ... (" + std::to_string(only.size() - shown) +
           " more)");
  };
  report_side(sa, sb, a_path);
  report_side(sb, sa, b_path);
  write_payload(c.out_path, "DIFFERENT\n");
}

void run_oracle_strings(const std::string& grammar_path, int max_len,
                        const CommonOpts& c) {
  echo("subcommand", "oracle strings");
  echo("grammar", grammar_path);
  echo("max-len", std::to_string(max_len));
  Grammar g = load_grammar(grammar_path, "");
  std::ostringstream out;
  for (const std::string& s : lct::enumerate_strings(g, max_len))
    out << s << '\n';
  write_payload(c.out_path, out.str());
}

void run_random_grammar(unsigned seed, const lct::RandomGrammarParams& params,
                        const CommonOpts& c) {
  echo("subcommand", "random grammar");
  echo("seed", std::to_string(seed));
  std::mt19937 rng(seed);
  Grammar g = lct::random_grammar(rng, params);
  write_payload(c.out_path, lct::write_grammar(g));
}

void run_random_trees(const std::string& grammar_path, unsigned seed,
                      int count, int budget, const CommonOpts& c) {
  echo("subcommand", "random trees");
  echo("grammar", grammar_path);
  echo("seed", std::to_string(seed));
  echo("count", std::to_string(count));
  echo("budget", std::to_string(budget));
  Grammar g = load_grammar(grammar_path, c.pos_file);
  std::mt19937 rng(seed);
  std::vector<ParseTree> trees;
  trees.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    trees.push_back(lct::random_tree(g, rng, budget));
  write_payload(c.out_path, lct::write_trees(trees));
}

// ---------------------------------------------------------------------------
// Argument wiring
// ---------------------------------------------------------------------------

void add_common_output(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("-o,--output", c.out_path, "Write payload to FILE");
}

void add_transform_flags(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--L", c.l_mode,
                  "Left-corner production set: all, non-pos, l0 or file:PATH")
      ->default_str("l0");
  cmd->add_option("--factor", c.factor, "Factoring: none, td, lc or td-lc")
      ->check(CLI::IsMember({"none", "td", "lc", "td-lc"}))
      ->default_str("none");
  cmd->add_option("--epsilon", c.epsilon,
                  "Empty-category handling: keep, one-step or full")
      ->check(CLI::IsMember({"keep", "one-step", "full"}))
      ->default_str("keep");
  cmd->add_flag("--no-prune-links", c.no_prune_links,
                "Emit all pair nonterminals, reachable or not");
  cmd->add_flag("--moore", c.moore,
                "Restrict pairs to Moore-style predict sites");
  cmd->add_flag("--weighted", c.weighted,
                "Treat the grammar as weighted; compose weights");
}

void add_pos_flag(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--pos", c.pos_file,
                  "File of POS tags (whitespace-separated) overriding the "
                  "grammar's %pos line");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "lct: left-corner transforms for (probabilistic) context-free "
      "grammars"};
  app.require_subcommand(1);

  CommonOpts c;

  // analyze
  std::string analyze_grammar;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "Report grammar statistics, unary cycles and L0");
  analyze->add_option("grammar", analyze_grammar, "Grammar file")->required();
  add_pos_flag(analyze, c);
  add_common_output(analyze, c);
  analyze->callback([&] { run_analyze(analyze_grammar, c); });

  // transform
  std::string tf_grammar;
  std::string tf_provenance;
  CLI::App* transform = app.add_subcommand(
      "transform", "Apply the selective left-corner grammar transform");
  transform->add_option("grammar", tf_grammar, "Grammar file")->required();
  add_transform_flags(transform, c);
  add_pos_flag(transform, c);
  add_common_output(transform, c);
  transform->add_option("--provenance", tf_provenance,
                        "Also write a schema-by-schema derivation to FILE");
  transform->callback([&] { run_transform(tf_grammar, c, tf_provenance); });

  // trees {transform|detransform|break-cycles}
  CLI::App* trees = app.add_subcommand(
      "trees", "Transform, detransform or cycle-break parse trees");
  trees->require_subcommand(1);
  std::string trtf_grammar, trtf_trees;
  CLI::App* trees_tf =
      trees->add_subcommand("transform", "Rewrite trees of g into trees of "
                                         "the transformed grammar");
  trees_tf->add_option("grammar", trtf_grammar, "Grammar file")->required();
  trees_tf->add_option("trees", trtf_trees, "Tree file")->required();
  add_transform_flags(trees_tf, c);
  add_pos_flag(trees_tf, c);
  add_common_output(trees_tf, c);
  trees_tf->callback(
      [&] { run_trees("transform", trtf_grammar, trtf_trees, c); });

  std::string trdt_trees;
  CLI::App* trees_dt = trees->add_subcommand(
      "detransform", "Invert the tree transform (factor/epsilon must match)");
  trees_dt->add_option("trees", trdt_trees, "Tree file")->required();
  add_transform_flags(trees_dt, c);
  add_common_output(trees_dt, c);
  trees_dt->callback([&] { run_trees("detransform", "", trdt_trees, c); });

  std::string trbc_grammar, trbc_trees;
  CLI::App* trees_bc = trees->add_subcommand(
      "break-cycles", "Collapse unary cycles in trees (NAT-marked exits)");
  trees_bc->add_option("grammar", trbc_grammar, "Grammar file")->required();
  trees_bc->add_option("trees", trbc_trees, "Tree file")->required();
  add_common_output(trees_bc, c);
  trees_bc->callback(
      [&] { run_trees("break-cycles", trbc_grammar, trbc_trees, c); });

  // estimate
  std::string est_trees;
  CLI::App* estimate = app.add_subcommand(
      "estimate", "Estimate a PCFG from trees by relative frequency");
  estimate->add_option("trees", est_trees, "Tree file")->required();
  add_pos_flag(estimate, c);
  add_common_output(estimate, c);
  estimate->callback([&] { run_estimate(est_trees, c); });

  // parse
  std::string parse_grammar, parse_sents;
  int parse_jobs = 1;
  CLI::App* parse = app.add_subcommand(
      "parse", "Viterbi-parse sentences (one per line); emits TREE<TAB>LOGW "
               "or (()) per sentence");
  parse->add_option("grammar", parse_grammar, "Grammar file")->required();
  parse->add_option("sentences", parse_sents, "Sentence file")->required();
  parse->add_option("--jobs", parse_jobs, "Worker threads")
      ->check(CLI::PositiveNumber);
  add_pos_flag(parse, c);
  add_common_output(parse, c);
  parse->callback([&] { run_parse(parse_grammar, parse_sents, c, parse_jobs); });

  // eval {score|missing|coverage}
  CLI::App* eval =
      app.add_subcommand("eval", "PARSEVAL scoring, missing-production and "
                                 "coverage reports");
  eval->require_subcommand(1);
  std::string ev_gold, ev_test;
  bool ev_per_sentence = false;
  CLI::App* eval_score = eval->add_subcommand(
      "score", "Labelled precision/recall of test trees against gold trees");
  eval_score->add_option("gold", ev_gold, "Gold tree file")->required();
  eval_score->add_option("test", ev_test,
                         "Test tree file; (()) lines mark no-parses")
      ->required();
  eval_score->add_flag("--per-sentence", ev_per_sentence,
                       "Also emit one line per sentence");
  add_common_output(eval_score, c);
  eval_score->callback(
      [&] { run_eval_score(ev_gold, ev_test, ev_per_sentence, c); });

  std::string mi_train, mi_test, mi_grammar;
  CLI::App* eval_missing = eval->add_subcommand(
      "missing", "Test-corpus productions unseen in the train corpus; with "
                 "--grammar, also counts after the tree transform");
  eval_missing->add_option("train", mi_train, "Train tree file")->required();
  eval_missing->add_option("test", mi_test, "Test tree file")->required();
  eval_missing->add_option("--grammar", mi_grammar,
                           "Grammar file for the transformed count");
  add_transform_flags(eval_missing, c);
  add_pos_flag(eval_missing, c);
  add_common_output(eval_missing, c);
  eval_missing->callback(
      [&] { run_eval_missing(mi_train, mi_test, mi_grammar, c); });

  std::string cov_grammar, cov_sents;
  CLI::App* eval_coverage = eval->add_subcommand(
      "coverage", "Count sentences with no parse under the grammar");
  eval_coverage->add_option("grammar", cov_grammar, "Grammar file")
      ->required();
  eval_coverage->add_option("sentences", cov_sents, "Sentence file")
      ->required();
  add_pos_flag(eval_coverage, c);
  add_common_output(eval_coverage, c);
  eval_coverage->callback(
      [&] { run_eval_coverage(cov_grammar, cov_sents, c); });

  // oracle {equiv|strings}
  CLI::App* oracle = app.add_subcommand(
      "oracle", "Brute-force enumeration checks over bounded-length strings");
  oracle->require_subcommand(1);
  std::string or_a, or_b;
  int or_max_len = 8;
  CLI::App* oracle_equiv = oracle->add_subcommand(
      "equiv", "Compare the string sets of two grammars up to --max-len");
  oracle_equiv->add_option("grammar-a", or_a, "First grammar file")
      ->required();
  oracle_equiv->add_option("grammar-b", or_b, "Second grammar file")
      ->required();
  oracle_equiv->add_option("--max-len", or_max_len, "Maximum string length")
      ->check(CLI::NonNegativeNumber);
  add_common_output(oracle_equiv, c);
  oracle_equiv->callback([&] { run_oracle_equiv(or_a, or_b, or_max_len, c); });

  std::string or_g;
  int or_slen = 8;
  CLI::App* oracle_strings = oracle->add_subcommand(
      "strings", "Enumerate the grammar's strings up to --max-len");
  oracle_strings->add_option("grammar", or_g, "Grammar file")->required();
  oracle_strings->add_option("--max-len", or_slen, "Maximum string length")
      ->check(CLI::NonNegativeNumber);
  add_common_output(oracle_strings, c);
  oracle_strings->callback([&] { run_oracle_strings(or_g, or_slen, c); });

  // random {grammar|trees}
  CLI::App* random = app.add_subcommand(
      "random", "Seeded random grammars and derivation trees for testing");
  random->require_subcommand(1);
  unsigned rg_seed = 1;
  lct::RandomGrammarParams rg_params;
  CLI::App* random_grammar = random->add_subcommand(
      "grammar", "Emit a random ε-free, unary-cycle-free grammar");
  random_grammar->add_option("--seed", rg_seed, "RNG seed");
  random_grammar->add_option("--max-nonterminals", rg_params.max_nonterminals,
                             "Nonterminal cap");
  random_grammar->add_option("--max-productions", rg_params.max_productions,
                             "Production cap");
  random_grammar->add_option("--max-rhs-len", rg_params.max_rhs_len,
                             "Right-hand-side length cap");
  random_grammar->add_option("--terminals", rg_params.terminals,
                             "Terminal alphabet size");
  add_common_output(random_grammar, c);
  random_grammar->callback([&] { run_random_grammar(rg_seed, rg_params, c); });

  std::string rt_grammar;
  unsigned rt_seed = 1;
  int rt_count = 10;
  int rt_budget = 40;
  CLI::App* random_trees = random->add_subcommand(
      "trees", "Emit random derivation trees of a grammar");
  random_trees->add_option("grammar", rt_grammar, "Grammar file")->required();
  random_trees->add_option("--seed", rt_seed, "RNG seed");
  random_trees->add_option("--count", rt_count, "Number of trees")
      ->check(CLI::PositiveNumber);
  random_trees->add_option("--budget", rt_budget,
                           "Size budget steering tree growth")
      ->check(CLI::PositiveNumber);
  add_pos_flag(random_trees, c);
  add_common_output(random_trees, c);
  random_trees->callback(
      [&] { run_random_trees(rt_grammar, rt_seed, rt_count, rt_budget, c); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
