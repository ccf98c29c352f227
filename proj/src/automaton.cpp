#include "fuzzydet/automaton.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>

namespace fuzzydet {

namespace {

void require_same_lattice(const LatticeKind& a, const LatticeKind& b) {
  if (!(a == b))
    throw Error(ErrorCode::LatticeMismatch,
                "lattice mismatch: " + a.name() + " vs " + b.name());
}

void validate_alphabet(const std::vector<std::string>& alphabet) {
  std::set<std::string> seen;
  for (const auto& s : alphabet) {
    if (s.empty())
      throw Error(ErrorCode::InvalidValue, "empty alphabet symbol");
    for (unsigned char c : s)
      if (std::isspace(c))
        throw Error(ErrorCode::InvalidValue, "alphabet symbol '" + s + "' contains whitespace");
    if (!seen.insert(s).second)
      throw Error(ErrorCode::InvalidValue, "duplicate alphabet symbol '" + s + "'");
  }
}

}  // namespace

FuzzyAutomaton::FuzzyAutomaton(LatticeKind lattice, std::vector<std::string> alphabet,
                               FuzzyVector sigma, std::vector<FuzzyMatrix> delta,
                               FuzzyVector tau)
    : lattice_(lattice),
      alphabet_(std::move(alphabet)),
      sigma_(std::move(sigma)),
      delta_(std::move(delta)),
      tau_(std::move(tau)) {
  validate_alphabet(alphabet_);
  require_same_lattice(lattice_, sigma_.lattice());
  require_same_lattice(lattice_, tau_.lattice());
  const std::size_t n = sigma_.size();
  if (tau_.size() != n)
    throw Error(ErrorCode::DimensionMismatch, "initial and terminal vectors differ in length");
  if (delta_.size() != alphabet_.size())
    throw Error(ErrorCode::DimensionMismatch, "need one transition matrix per symbol");
  for (const auto& m : delta_) {
    require_same_lattice(lattice_, m.lattice());
    if (m.rows() != n || m.cols() != n)
      throw Error(ErrorCode::DimensionMismatch, "transition matrix is not n x n");
  }
}

const FuzzyMatrix& FuzzyAutomaton::delta(Symbol x) const {
  if (x >= delta_.size())
    throw Error(ErrorCode::UnknownSymbol, "symbol index " + std::to_string(x) + " out of range");
  return delta_[x];
}

Symbol FuzzyAutomaton::symbol(std::string_view name) const {
  auto it = std::find(alphabet_.begin(), alphabet_.end(), name);
  if (it == alphabet_.end())
    throw Error(ErrorCode::UnknownSymbol, "unknown symbol '" + std::string(name) + "'");
  return static_cast<Symbol>(it - alphabet_.begin());
}

Word to_word(const std::vector<std::string>& alphabet,
             std::span<const std::string> symbols) {
  Word w;
  w.reserve(symbols.size());
  for (const auto& s : symbols) {
    auto it = std::find(alphabet.begin(), alphabet.end(), s);
    if (it == alphabet.end())
      throw Error(ErrorCode::UnknownSymbol, "unknown symbol '" + s + "'");
    w.push_back(static_cast<Symbol>(it - alphabet.begin()));
  }
  return w;
}

std::string format_word(const std::vector<std::string>& alphabet, const Word& w) {
  if (w.empty()) return "_";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '.';
    out += alphabet.at(w[i]);
  }
  return out;
}

FuzzyVector left_vector(const FuzzyAutomaton& a, const Word& u) {
  FuzzyVector v = a.sigma();
  for (Symbol x : u) v = vec_mat(v, a.delta(x));
  return v;
}

FuzzyVector right_vector(const FuzzyAutomaton& a, const Word& u) {
  FuzzyVector v = a.tau();
  for (auto it = u.rbegin(); it != u.rend(); ++it) v = mat_vec(a.delta(*it), v);
  return v;
}

Value evaluate(const FuzzyAutomaton& a, const Word& u) {
  return dot(left_vector(a, u), a.tau());
}

FuzzyAutomaton reverse(const FuzzyAutomaton& a) {
  std::vector<FuzzyMatrix> delta;
  delta.reserve(a.symbols());
  for (Symbol x = 0; x < a.symbols(); ++x) delta.push_back(a.delta(x).transpose());
  return FuzzyAutomaton(a.lattice(), a.alphabet(), a.tau(), std::move(delta), a.sigma());
}

FuzzyVector right_language_step(const FuzzyAutomaton& a, Symbol x,
                                const FuzzyVector& t) {
  return mat_vec(a.delta(x), t);
}

// ---------------------------------------------------------------- Cdfa

Cdfa::Cdfa(LatticeKind lattice, std::vector<std::string> alphabet,
           std::vector<std::size_t> transitions, std::size_t initial,
           FuzzyVector terminal, std::vector<StateLabel> labels)
    : lattice_(lattice),
      alphabet_(std::move(alphabet)),
      trans_(std::move(transitions)),
      initial_(initial),
      terminal_(std::move(terminal)),
      labels_(std::move(labels)) {
  validate_alphabet(alphabet_);
  require_same_lattice(lattice_, terminal_.lattice());
  const std::size_t n = terminal_.size();
  if (n == 0 || initial_ >= n)
    throw Error(ErrorCode::DimensionMismatch, "cdfa needs an initial state");
  if (trans_.size() != n * alphabet_.size())
    throw Error(ErrorCode::DimensionMismatch, "cdfa transition table is not total");
  for (std::size_t t : trans_)
    if (t >= n) throw Error(ErrorCode::DimensionMismatch, "cdfa transition target out of range");
  if (!labels_.empty() && labels_.size() != n)
    throw Error(ErrorCode::DimensionMismatch, "one label per cdfa state");
}

std::size_t Cdfa::next(std::size_t state, Symbol x) const {
  if (x >= alphabet_.size())
    throw Error(ErrorCode::UnknownSymbol, "symbol index " + std::to_string(x) + " out of range");
  return trans_.at(state * alphabet_.size() + x);
}

bool Cdfa::same_structure(const Cdfa& other) const {
  return lattice_ == other.lattice_ && alphabet_ == other.alphabet_ &&
         trans_ == other.trans_ && initial_ == other.initial_ &&
         terminal_ == other.terminal_;
}

Value cdfa_evaluate(const Cdfa& c, const Word& u) {
  std::size_t s = c.initial();
  for (Symbol x : u) s = c.next(s, x);
  return c.terminal(s);
}

std::optional<Word> cdfa_distinguishing_word(const Cdfa& c1, const Cdfa& c2) {
  require_same_lattice(c1.lattice(), c2.lattice());
  if (c1.alphabet() != c2.alphabet())
    throw Error(ErrorCode::AlphabetMismatch, "cdfa alphabets differ");

  const std::size_t n2 = c2.states();
  const std::size_t none = static_cast<std::size_t>(-1);
  struct Visit {
    std::size_t parent;
    Symbol via;
  };
  std::vector<Visit> seen(c1.states() * n2, Visit{none, 0});
  std::vector<bool> visited(seen.size(), false);
  auto key = [n2](std::size_t p, std::size_t q) { return p * n2 + q; };

  std::deque<std::size_t> queue;
  const std::size_t start = key(c1.initial(), c2.initial());
  visited[start] = true;
  queue.push_back(start);
  while (!queue.empty()) {
    const std::size_t k = queue.front();
    queue.pop_front();
    const std::size_t p = k / n2, q = k % n2;
    if (!(c1.terminal(p) == c2.terminal(q))) {
      Word w;
      for (std::size_t cur = k; seen[cur].parent != none; cur = seen[cur].parent)
        w.push_back(seen[cur].via);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (Symbol x = 0; x < c1.symbols(); ++x) {
      const std::size_t nk = key(c1.next(p, x), c2.next(q, x));
      if (visited[nk]) continue;
      visited[nk] = true;
      seen[nk] = Visit{k, x};
      queue.push_back(nk);
    }
  }
  return std::nullopt;
}

FuzzyAutomaton embed(const Cdfa& c) {
  const LatticeKind& l = c.lattice();
  const std::size_t n = c.states();
  const Value one = top(l);
  FuzzyVector sigma(l, n);
  sigma.set(c.initial(), one);
  std::vector<FuzzyMatrix> delta;
  for (Symbol x = 0; x < c.symbols(); ++x) {
    FuzzyMatrix m(l, n, n);
    for (std::size_t s = 0; s < n; ++s) m.set(s, c.next(s, x), one);
    delta.push_back(std::move(m));
  }
  return FuzzyAutomaton(l, c.alphabet(), std::move(sigma), std::move(delta),
                        c.terminal_vector());
}

}  // namespace fuzzydet
