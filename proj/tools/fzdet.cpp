// fzdet: evaluate, determinize and compare fuzzy finite automata.
//
// Exit codes: 0 success, 1 languages differ, 2 usage or input error,
// 3 state cap exceeded.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "fuzzydet/determinize.hpp"
#include "fuzzydet/io.hpp"

namespace {

using namespace fuzzydet;

constexpr int kExitOk = 0;
constexpr int kExitDiffer = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

struct DetOptions {
  std::string method = "incl";
  std::string psi = "identity";
  std::size_t max_states = kDefaultCap;
  std::size_t semiring_cap = kDefaultCap;
  std::string dot;
  bool stats = false;
};

FuzzyAutomaton load(const std::string& path) { return parse_automaton(read_file(path)); }

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Parse, "cannot write '" + path + "'");
  out << text;
}

DetOutcome run_method(const FuzzyAutomaton& a, const std::string& method,
                      const std::string& psi_source, std::size_t cap) {
  if (method == "nerode") return nerode(a, cap);
  if (method == "rnerode") return reverse_nerode(a, cap);
  if (method == "incl") return d_automaton(a, cap);
  if (method == "brzozowski") return brzozowski(a, cap);
  if (method == "psi") {
    const FuzzyMatrix psi = psi_source == "identity"
                                ? FuzzyMatrix::identity(a.lattice(), a.states())
                                : parse_matrix(a.lattice(), a.states(), read_file(psi_source));
    return psi_d_automaton(a, psi, cap);
  }
  throw CLI::ValidationError("--method", "unknown method '" + method + "'");
}

std::string vector_text(const FuzzyVector& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += format_value(v.lattice(), v.at(i));
  }
  return out + "]";
}

void print_stats(const DetStats& s) {
  std::cout << "vertices: " << s.vertices << "\n";
  std::cout << "closure-checks: " << s.closure_checks << "\n";
  std::cout << "elapsed-ms: "
            << std::chrono::duration<double, std::milli>(s.elapsed).count() << "\n";
}

void print_preflight(const FuzzyAutomaton& a, std::size_t cap) {
  const Preflight p = preflight(a, cap);
  if (p.bound) {
    std::cout << "preflight: finite, k=" << p.closure.k() << ", bound " << p.closure.k() << "^"
              << a.states() << "=" << p.bound->get_str() << "\n";
  } else {
    std::cout << "preflight: cap exceeded at " << cap << "\n";
    std::cerr << "warning: the subsemiring generated by the membership values may be "
                 "infinite; termination is not guaranteed\n";
  }
}

int cmd_eval(const std::string& file, const std::string& word) {
  const FuzzyAutomaton a = load(file);
  std::cout << format_value(a.lattice(), evaluate(a, parse_word(a.alphabet(), word))) << "\n";
  return kExitOk;
}

int cmd_det(const std::string& file, const DetOptions& opt) {
  const FuzzyAutomaton a = load(file);
  std::cout << "method: " << opt.method << "\n";
  print_preflight(a, opt.semiring_cap);
  const DetOutcome out = run_method(a, opt.method, opt.psi, opt.max_states);
  if (!out.ok()) {
    const CapExceeded& hit = out.cap_exceeded();
    std::cout << "cap exceeded: phase " << hit.phase << ", " << hit.states_built
              << " states built, cap " << hit.cap << "\n";
    if (opt.stats) print_stats(out.stats);
    return kExitCap;
  }
  const Cdfa& c = out.cdfa();
  std::cout << "states: " << c.states() << "\n";
  for (std::size_t s = 0; s < c.states(); ++s) {
    std::cout << "state " << s + 1 << ": word=" << format_word(c.alphabet(), c.labels()[s].word)
              << " terminal=" << format_value(c.lattice(), c.terminal(s));
    for (Symbol x = 0; x < c.symbols(); ++x)
      std::cout << ' ' << c.alphabet()[x] << "->" << c.next(s, x) + 1;
    std::cout << " vector=" << vector_text(c.labels()[s].vector) << "\n";
  }
  if (opt.stats) print_stats(out.stats);
  if (!opt.dot.empty()) write_output(opt.dot, export_dot(c));
  return kExitOk;
}

int cmd_equiv(const std::string& f1, const std::string& f2, const std::string& methods,
              const std::string& psi, std::size_t cap) {
  std::string m1 = methods, m2 = methods;
  if (auto comma = methods.find(','); comma != std::string::npos) {
    m1 = methods.substr(0, comma);
    m2 = methods.substr(comma + 1);
  }
  const FuzzyAutomaton a1 = load(f1);
  const FuzzyAutomaton a2 = load(f2);
  if (!(a1.lattice() == a2.lattice()))
    throw Error(ErrorCode::LatticeMismatch,
                "lattices differ: " + a1.lattice().name() + " vs " + a2.lattice().name());
  if (a1.alphabet() != a2.alphabet())
    throw Error(ErrorCode::AlphabetMismatch, "alphabets differ");
  const DetOutcome d1 = run_method(a1, m1, psi, cap);
  const DetOutcome d2 = run_method(a2, m2, psi, cap);
  for (const DetOutcome* d : {&d1, &d2}) {
    if (!d->ok()) {
      std::cout << "cap exceeded: phase " << d->cap_exceeded().phase << ", cap "
                << d->cap_exceeded().cap << "\n";
      return kExitCap;
    }
  }
  const auto witness = cdfa_distinguishing_word(d1.cdfa(), d2.cdfa());
  if (!witness) {
    std::cout << "equivalent\n";
    return kExitOk;
  }
  const LatticeKind& l = a1.lattice();
  std::cout << "not equivalent\n";
  std::cout << "witness: " << format_word(a1.alphabet(), *witness) << "\n";
  std::cout << "degrees: " << format_value(l, cdfa_evaluate(d1.cdfa(), *witness)) << " vs "
            << format_value(l, cdfa_evaluate(d2.cdfa(), *witness)) << "\n";
  return kExitDiffer;
}

int cmd_semiring(const std::string& file, std::size_t cap) {
  const FuzzyAutomaton a = load(file);
  const Preflight p = preflight(a, cap);
  if (p.bound)
    std::cout << "finite, k=" << p.closure.k() << ", bound " << p.closure.k() << "^"
              << a.states() << "=" << p.bound->get_str() << "\n";
  else
    std::cout << "cap exceeded at " << cap << "\n";
  return kExitOk;
}

int cmd_dot(const std::string& file, const std::string& out) {
  write_output(out, export_dot(load(file)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Determinization and canonization of fuzzy finite automata"};
  app.require_subcommand(1);

  std::string file, file2, word, dot_out = "-";
  DetOptions det;
  std::string equiv_methods = "incl";
  std::size_t semiring_cap = kDefaultCap;

  auto* eval = app.add_subcommand("eval", "Print the degree to which a word is accepted");
  eval->add_option("file", file, "Automaton file")->required();
  eval->add_option("word", word, "Symbols joined by '.', '_' for the empty word")->required();

  auto* detc = app.add_subcommand("det", "Build an equivalent crisp-deterministic automaton");
  detc->add_option("file", file, "Automaton file")->required();
  detc->add_option("--method", det.method, "nerode | rnerode | incl | brzozowski | psi")
      ->check(CLI::IsMember({"nerode", "rnerode", "incl", "brzozowski", "psi"}))
      ->capture_default_str();
  detc->add_option("--psi", det.psi, "Relation file for --method psi, or 'identity'")
      ->capture_default_str();
  detc->add_option("--max-states", det.max_states, "State cap per construction phase")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  detc->add_option("--semiring-cap", det.semiring_cap, "Cap for the preflight closure")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  detc->add_option("--dot", det.dot, "Write DOT to a file ('-' for standard output)");
  detc->add_flag("--stats", det.stats, "Print construction counters and wall time");

  auto* equiv = app.add_subcommand("equiv", "Compare the languages of two automata");
  equiv->add_option("file1", file, "First automaton")->required();
  equiv->add_option("file2", file2, "Second automaton")->required();
  equiv->add_option("--method", equiv_methods, "Method, or two methods as 'm1,m2'")
      ->capture_default_str();
  equiv->add_option("--psi", det.psi, "Relation for method psi")->capture_default_str();
  equiv->add_option("--max-states", det.max_states, "State cap per construction phase")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* semiring = app.add_subcommand("semiring", "Saturate the membership values under join and product");
  semiring->add_option("file", file, "Automaton file")->required();
  semiring->add_option("--cap", semiring_cap, "Give up beyond this many values")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* dot = app.add_subcommand("dot", "Export the automaton as a DOT digraph");
  dot->add_option("file", file, "Automaton file")->required();
  dot->add_option("-o,--out", dot_out, "Output path ('-' for standard output)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*detc && detc->count("--psi") && det.method != "psi") {
    std::cerr << "error: --psi only applies to --method psi\n";
    return kExitUsage;
  }

  try {
    if (*eval) return cmd_eval(file, word);
    if (*detc) return cmd_det(file, det);
    if (*equiv) return cmd_equiv(file, file2, equiv_methods, det.psi, det.max_states);
    if (*semiring) return cmd_semiring(file, semiring_cap);
    if (*dot) return cmd_dot(file, dot_out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
