#include "lct/grammar_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "lct/error.hpp"

namespace lct {
namespace {

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) tokens.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

struct RawLine {
  std::size_t number = 0;
  std::vector<std::string> tokens;
};

double parse_weight(const std::string& token, std::size_t line_number) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error("line " + std::to_string(line_number) + ": bad weight '" +
                token + "'");
  }
  return value;
}

}  // namespace

Grammar parse_grammar(std::string_view text) {
  std::vector<RawLine> rules;
  std::optional<std::string> start_name;
  std::optional<std::set<std::string>> pos_names;
  std::unordered_set<std::string> lhs_names;

  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_number;

    if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::vector<std::string> tokens = tokenize(line);
    if (tokens.empty()) continue;

    if (tokens[0] == "%start") {
      if (tokens.size() != 2) {
        throw Error("line " + std::to_string(line_number) +
                    ": %start takes exactly one name");
      }
      if (start_name) {
        throw Error("line " + std::to_string(line_number) +
                    ": duplicate %start directive");
      }
      start_name = tokens[1];
      continue;
    }
    if (tokens[0] == "%pos") {
      if (!pos_names) pos_names.emplace();
      pos_names->insert(tokens.begin() + 1, tokens.end());
      continue;
    }
    if (tokens[0][0] == '%') {
      throw Error("line " + std::to_string(line_number) +
                  ": unknown directive '" + tokens[0] + "'");
    }

    std::size_t arrow;
    if (tokens.size() >= 2 && tokens[1] == "->") {
      arrow = 1;
    } else if (tokens.size() >= 3 && tokens[2] == "->") {
      arrow = 2;
    } else {
      throw Error("line " + std::to_string(line_number) +
                  ": expected '[weight] LHS -> ...'");
    }
    lhs_names.insert(tokens[arrow - 1]);
    rules.push_back({line_number, std::move(tokens)});
  }

  if (rules.empty() && !start_name) {
    throw Error("grammar has no productions and no %start directive");
  }

  auto is_nonterminal_name = [&](const std::string& name) {
    if (lhs_names.count(name) > 0) return true;
    if (start_name && *start_name == name) return true;
    return false;
  };
  auto make_symbol = [&](const std::string& token) {
    SymbolKind base = is_nonterminal_name(token) ? SymbolKind::nonterminal
                                                 : SymbolKind::terminal;
    return parse_symbol_token(token, base);
  };

  std::vector<Production> productions;
  productions.reserve(rules.size());
  for (const RawLine& raw : rules) {
    Production p;
    std::size_t arrow = raw.tokens[1] == "->" ? 1 : 2;
    if (arrow == 2) p.weight = parse_weight(raw.tokens[0], raw.number);
    p.lhs = make_symbol(raw.tokens[arrow - 1]);
    if (!p.lhs.is_nonterminal()) {
      throw Error("line " + std::to_string(raw.number) +
                  ": left-hand side '" + raw.tokens[arrow - 1] +
                  "' is not a nonterminal");
    }
    for (std::size_t i = arrow + 1; i < raw.tokens.size(); ++i) {
      p.rhs.push_back(make_symbol(raw.tokens[i]));
    }
    if (!(p.weight > 0.0)) {
      throw Error("line " + std::to_string(raw.number) +
                  ": weight must be positive");
    }
    productions.push_back(std::move(p));
  }

  Symbol start = start_name
                     ? parse_symbol_token(*start_name, SymbolKind::nonterminal)
                     : productions.front().lhs;
  return Grammar::make(std::move(productions), start, std::move(pos_names));
}

std::string format_weight(double w) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), w);
  if (ec != std::errc()) throw Error("cannot format weight");
  return std::string(buf, ptr);
}

std::string write_grammar(const Grammar& g) {
  std::string out = "%start " + g.start().render() + "\n";
  if (g.pos_tags() && !g.pos_tags()->empty()) {
    out += "%pos";
    for (const std::string& name : *g.pos_tags()) {
      out += ' ';
      out += name;
    }
    out += '\n';
  }
  // Sort by rendered production; shapes are unique after duplicate merging.
  std::vector<std::pair<std::string, double>> lines;
  lines.reserve(g.productions().size());
  for (const Production& p : g.productions()) {
    lines.emplace_back(render(p), p.weight);
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& [text, weight] : lines) {
    if (g.weighted()) {
      out += format_weight(weight);
      out += ' ';
    }
    out += text;
    out += '\n';
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error("error while reading '" + path + "'");
  return std::move(buf).str();
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("error while writing '" + path + "'");
}

Grammar read_grammar_file(const std::string& path) {
  try {
    return parse_grammar(read_text_file(path));
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

void write_grammar_file(const Grammar& g, const std::string& path) {
  write_text_file(path, write_grammar(g));
}

}  // namespace lct
