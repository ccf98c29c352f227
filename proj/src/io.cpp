#include "fuzzydet/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace fuzzydet {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(Token{line.substr(start, i - start), start + 1});
  }
  return out;
}

bool is_keyword(std::string_view t) {
  return t == "lattice" || t == "alphabet" || t == "states" || t == "initial" ||
         t == "terminal" || t == "transitions";
}

std::optional<std::size_t> to_count(std::string_view t) {
  std::size_t v = 0;
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size()) return std::nullopt;
  return v;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  FuzzyAutomaton run() {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      const std::size_t eol = text_.find('\n', pos);
      const std::string_view line =
          text_.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
      ++line_no;
      line_ = line_no;
      handle(tokenize(line));
      if (eol == std::string_view::npos) break;
      pos = eol + 1;
    }
    ++line_;
    close_block();
    return finish();
  }

 private:
  [[noreturn]] void fail(std::size_t column, const std::string& msg) const {
    throw ParseError(line_, column, msg);
  }

  void handle(const std::vector<Token>& toks) {
    if (toks.empty()) return;
    if (!is_keyword(toks[0].text)) {
      if (!block_) fail(toks[0].column, "unexpected '" + std::string(toks[0].text) + "'");
      add_row(toks);
      return;
    }
    close_block();
    const std::string_view kw = toks[0].text;
    if (kw == "lattice") return lattice_line(toks);
    if (kw == "alphabet") return alphabet_line(toks);
    if (kw == "states") return states_line(toks);
    require_header(toks[0]);
    if (kw == "initial" || kw == "terminal") {
      auto& slot = kw == "initial" ? sigma_ : tau_;
      if (slot) fail(toks[0].column, "duplicate '" + std::string(kw) + "' line");
      slot = vector_of(toks, 1, std::string(kw));
      return;
    }
    // transitions <symbol>
    if (toks.size() != 2) fail(toks[0].column, "expected 'transitions <symbol>'");
    const std::string sym(toks[1].text);
    std::size_t x = alphabet_->size();
    for (std::size_t i = 0; i < alphabet_->size(); ++i)
      if ((*alphabet_)[i] == sym) x = i;
    if (x == alphabet_->size()) fail(toks[1].column, "unknown symbol '" + sym + "'");
    if (delta_rows_.count(x)) fail(toks[1].column, "duplicate transitions block for '" + sym + "'");
    delta_rows_[x];
    block_ = x;
    block_line_ = line_;
  }

  void lattice_line(const std::vector<Token>& toks) {
    if (lattice_) fail(toks[0].column, "duplicate 'lattice' line");
    if (toks.size() < 2) fail(toks[0].column, "missing lattice name");
    const std::string_view name = toks[1].text;
    if (name == "chain") {
      if (toks.size() != 3) fail(toks[1].column, "expected 'lattice chain K'");
      auto k = to_count(toks[2].text);
      if (!k || *k < 1 || *k > 1000000) fail(toks[2].column, "chain size must be an integer >= 1");
      lattice_ = LatticeKind::chain(static_cast<ChainIndex>(*k));
      return;
    }
    if (toks.size() != 2) fail(toks[2].column, "unexpected token after lattice name");
    if (name == "boolean") lattice_ = LatticeKind::boolean();
    else if (name == "godel") lattice_ = LatticeKind::godel();
    else if (name == "goguen") lattice_ = LatticeKind::goguen();
    else if (name == "lukasiewicz") lattice_ = LatticeKind::lukasiewicz();
    else fail(toks[1].column, "unknown lattice '" + std::string(name) + "'");
  }

  void alphabet_line(const std::vector<Token>& toks) {
    if (alphabet_) fail(toks[0].column, "duplicate 'alphabet' line");
    if (toks.size() < 2) fail(toks[0].column, "empty alphabet");
    std::vector<std::string> syms;
    for (std::size_t i = 1; i < toks.size(); ++i) {
      std::string s(toks[i].text);
      if (s == "_" || s.find('.') != std::string::npos)
        fail(toks[i].column, "symbol '" + s + "' clashes with word syntax");
      for (const auto& prev : syms)
        if (prev == s) fail(toks[i].column, "duplicate symbol '" + s + "'");
      syms.push_back(std::move(s));
    }
    alphabet_ = std::move(syms);
  }

  void states_line(const std::vector<Token>& toks) {
    if (n_) fail(toks[0].column, "duplicate 'states' line");
    if (toks.size() != 2) fail(toks[0].column, "expected 'states N'");
    auto n = to_count(toks[1].text);
    if (!n || *n < 1) fail(toks[1].column, "state count must be a positive integer");
    n_ = *n;
  }

  void require_header(const Token& kw) const {
    if (!lattice_ || !alphabet_ || !n_)
      fail(kw.column, "'" + std::string(kw.text) +
                          "' before 'lattice', 'alphabet' and 'states' were given");
  }

  std::vector<Value> values_of(const std::vector<Token>& toks, std::size_t from,
                               const std::string& what) const {
    const std::size_t got = toks.size() - from;
    if (got != *n_) {
      const std::size_t col = got > *n_ ? toks[from + *n_].column : 0;
      fail(col, what + ": expected " + std::to_string(*n_) + " values, got " + std::to_string(got));
    }
    std::vector<Value> vals;
    for (std::size_t i = from; i < toks.size(); ++i) {
      try {
        vals.push_back(parse_value(*lattice_, toks[i].text));
      } catch (const Error& e) {
        fail(toks[i].column, e.what());
      }
    }
    return vals;
  }

  FuzzyVector vector_of(const std::vector<Token>& toks, std::size_t from, const std::string& what) const {
    return FuzzyVector(*lattice_, values_of(toks, from, what));
  }

  void add_row(const std::vector<Token>& toks) {
    auto& rows = delta_rows_[*block_];
    if (rows.size() == *n_)
      fail(toks[0].column, "transitions " + (*alphabet_)[*block_] + ": more than " +
                               std::to_string(*n_) + " rows");
    rows.push_back(values_of(toks, 0, "transitions " + (*alphabet_)[*block_] + " row " +
                                          std::to_string(rows.size() + 1)));
  }

  void close_block() {
    if (!block_) return;
    const auto& rows = delta_rows_[*block_];
    if (rows.size() != *n_)
      fail(0, "transitions " + (*alphabet_)[*block_] + " (line " + std::to_string(block_line_) +
                  "): expected " + std::to_string(*n_) + " rows, got " + std::to_string(rows.size()));
    block_.reset();
  }

  FuzzyAutomaton finish() {
    if (!lattice_) fail(0, "missing 'lattice' line");
    if (!alphabet_) fail(0, "missing 'alphabet' line");
    if (!n_) fail(0, "missing 'states' line");
    if (!sigma_) fail(0, "missing 'initial' line");
    if (!tau_) fail(0, "missing 'terminal' line");
    std::vector<FuzzyMatrix> delta;
    for (std::size_t x = 0; x < alphabet_->size(); ++x) {
      auto it = delta_rows_.find(x);
      if (it == delta_rows_.end())
        fail(0, "missing transitions block for '" + (*alphabet_)[x] + "'");
      delta.emplace_back(*lattice_, it->second);
    }
    return FuzzyAutomaton(*lattice_, *alphabet_, *sigma_, std::move(delta), *tau_);
  }

  std::string_view text_;
  std::size_t line_ = 0;
  std::optional<LatticeKind> lattice_;
  std::optional<std::vector<std::string>> alphabet_;
  std::optional<std::size_t> n_;
  std::optional<FuzzyVector> sigma_, tau_;
  std::map<std::size_t, std::vector<std::vector<Value>>> delta_rows_;
  std::optional<std::size_t> block_;
  std::size_t block_line_ = 0;
};

std::string join_values(const FuzzyVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += format_value(v.lattice(), v.at(i));
  }
  return out;
}

std::string quoted(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

FuzzyAutomaton parse_automaton(std::string_view text) { return Parser(text).run(); }

std::string serialize_automaton(const FuzzyAutomaton& a) {
  std::ostringstream out;
  out << "lattice " << a.lattice().name() << "\n";
  out << "alphabet";
  for (const auto& s : a.alphabet()) out << ' ' << s;
  out << "\nstates " << a.states() << "\n";
  out << "initial " << join_values(a.sigma()) << "\n";
  out << "terminal " << join_values(a.tau()) << "\n";
  for (Symbol x = 0; x < a.symbols(); ++x) {
    out << "transitions " << a.alphabet()[x] << "\n";
    for (std::size_t r = 0; r < a.states(); ++r) out << join_values(a.delta(x).row(r)) << "\n";
  }
  return out.str();
}

FuzzyMatrix parse_matrix(const LatticeKind& lattice, std::size_t n, std::string_view text) {
  std::vector<std::vector<Value>> rows;
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    const auto line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    ++line_no;
    const auto toks = tokenize(line);
    if (!toks.empty()) {
      if (rows.size() == n) throw ParseError(line_no, toks[0].column, "more than " + std::to_string(n) + " rows");
      if (toks.size() != n)
        throw ParseError(line_no, 0, "expected " + std::to_string(n) + " values, got " + std::to_string(toks.size()));
      std::vector<Value> row;
      for (const auto& t : toks) {
        try {
          row.push_back(parse_value(lattice, t.text));
        } catch (const Error& e) {
          throw ParseError(line_no, t.column, e.what());
        }
      }
      rows.push_back(std::move(row));
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  if (rows.size() != n)
    throw ParseError(line_no, 0, "expected " + std::to_string(n) + " rows, got " + std::to_string(rows.size()));
  return FuzzyMatrix(lattice, rows);
}

Word parse_word(const std::vector<std::string>& alphabet, std::string_view text) {
  if (text == "_") return {};
  if (text.empty()) throw Error(ErrorCode::UnknownSymbol, "empty word; use '_' for the empty word");
  std::vector<std::string> syms;
  std::size_t pos = 0;
  while (true) {
    const std::size_t dot = text.find('.', pos);
    syms.emplace_back(text.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos));
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  return to_word(alphabet, syms);
}

std::string export_dot(const FuzzyAutomaton& a) {
  const LatticeKind& l = a.lattice();
  const bool crisp = l.tag() == LatticeTag::boolean;
  const Value zero = bottom(l);
  const std::size_t n = a.states();
  auto node = [](std::size_t i) { return "a" + std::to_string(i + 1); };

  std::ostringstream out;
  out << "digraph fuzzy_automaton {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  for (std::size_t i = 0; i < n; ++i) {
    out << "  " << node(i) << " [label=" << quoted(node(i));
    if (crisp && !(a.tau().at(i) == zero)) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Value s = a.sigma().at(i);
    if (s == zero) continue;
    out << "  in_" << node(i) << " [shape=point, style=invis];\n";
    out << "  in_" << node(i) << " -> " << node(i);
    if (!crisp) out << " [label=" << quoted(format_value(l, s)) << "]";
    out << ";\n";
  }
  if (!crisp) {
    for (std::size_t i = 0; i < n; ++i) {
      const Value t = a.tau().at(i);
      if (t == zero) continue;
      out << "  out_" << node(i) << " [shape=point, style=invis];\n";
      out << "  " << node(i) << " -> out_" << node(i) << " [label=" << quoted(format_value(l, t))
          << "];\n";
    }
  }
  // Parallel edges between the same ordered pair share one comma-joined label.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::string label;
      for (Symbol x = 0; x < a.symbols(); ++x) {
        const Value v = a.delta(x).at(i, j);
        if (v == zero) continue;
        if (!label.empty()) label += ',';
        label += a.alphabet()[x];
        if (!crisp) label += "/" + format_value(l, v);
      }
      if (!label.empty())
        out << "  " << node(i) << " -> " << node(j) << " [label=" << quoted(label) << "];\n";
    }
  out << "}\n";
  return out.str();
}

std::string export_dot(const Cdfa& c) {
  const LatticeKind& l = c.lattice();
  auto node = [](std::size_t s) { return "q" + std::to_string(s); };
  std::ostringstream out;
  out << "digraph cdfa {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  out << "  start [shape=point, style=invis];\n";
  for (std::size_t s = 0; s < c.states(); ++s) {
    const std::string word =
        c.labels().empty() ? node(s) : format_word(c.alphabet(), c.labels()[s].word);
    out << "  " << node(s) << " [label="
        << quoted(word + " / " + format_value(l, c.terminal(s))) << "];\n";
  }
  out << "  start -> " << node(c.initial()) << ";\n";
  for (std::size_t s = 0; s < c.states(); ++s)
    for (Symbol x = 0; x < c.symbols(); ++x)
      out << "  " << node(s) << " -> " << node(c.next(s, x)) << " [label="
          << quoted(c.alphabet()[x]) << "];\n";
  out << "}\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Parse, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace fuzzydet
