#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fuzzydet/algebra.hpp"

namespace fuzzydet {

using Symbol = std::size_t;  // position in the alphabet
using Word = std::vector<Symbol>;

/// Fuzzy finite automaton (A, σ, δ, τ): initial row vector σ, one n×n
/// transition matrix per symbol, terminal column vector τ.
class FuzzyAutomaton {
 public:
  FuzzyAutomaton(LatticeKind lattice, std::vector<std::string> alphabet,
                 FuzzyVector sigma, std::vector<FuzzyMatrix> delta,
                 FuzzyVector tau);

  const LatticeKind& lattice() const noexcept { return lattice_; }
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  std::size_t states() const noexcept { return sigma_.size(); }
  std::size_t symbols() const noexcept { return alphabet_.size(); }

  const FuzzyVector& sigma() const noexcept { return sigma_; }
  const FuzzyVector& tau() const noexcept { return tau_; }
  const FuzzyMatrix& delta(Symbol x) const;

  /// Throws UnknownSymbol.
  Symbol symbol(std::string_view name) const;

  friend bool operator==(const FuzzyAutomaton&, const FuzzyAutomaton&) = default;

 private:
  LatticeKind lattice_;
  std::vector<std::string> alphabet_;
  FuzzyVector sigma_;
  std::vector<FuzzyMatrix> delta_;
  FuzzyVector tau_;
};

/// Resolves symbol names against an alphabet; throws UnknownSymbol.
Word to_word(const std::vector<std::string>& alphabet,
             std::span<const std::string> symbols);

/// `_` for the empty word, otherwise symbols joined by `.`.
std::string format_word(const std::vector<std::string>& alphabet, const Word& w);

/// σ∘δ_{x1}∘...∘δ_{xk}∘τ, threaded left to right as vector-matrix products.
Value evaluate(const FuzzyAutomaton& a, const Word& u);

/// σ_u = σ∘δ_u.
FuzzyVector left_vector(const FuzzyAutomaton& a, const Word& u);

/// τ_u = δ_u∘τ.
FuzzyVector right_vector(const FuzzyAutomaton& a, const Word& u);

/// Swaps σ and τ and transposes every δ_x; recognizes the reversed language.
FuzzyAutomaton reverse(const FuzzyAutomaton& a);

/// τ_{xu} = δ_x∘τ_u.
FuzzyVector right_language_step(const FuzzyAutomaton& a, Symbol x,
                                const FuzzyVector& t);

/// Display data kept for each state of a constructed Cdfa.
struct StateLabel {
  Word word;
  FuzzyVector vector;
};

/// Crisp-deterministic fuzzy automaton: total transition function, a single
/// initial state, and a fuzzy set of terminal states.
class Cdfa {
 public:
  Cdfa(LatticeKind lattice, std::vector<std::string> alphabet,
       std::vector<std::size_t> transitions, std::size_t initial,
       FuzzyVector terminal, std::vector<StateLabel> labels = {});

  const LatticeKind& lattice() const noexcept { return lattice_; }
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  std::size_t states() const noexcept { return terminal_.size(); }
  std::size_t symbols() const noexcept { return alphabet_.size(); }
  std::size_t initial() const noexcept { return initial_; }

  std::size_t next(std::size_t state, Symbol x) const;
  Value terminal(std::size_t state) const { return terminal_.at(state); }
  const FuzzyVector& terminal_vector() const noexcept { return terminal_; }

  /// Empty when the automaton was built without labels.
  const std::vector<StateLabel>& labels() const noexcept { return labels_; }

  /// Same transitions, initial state and terminal degrees; labels ignored.
  bool same_structure(const Cdfa& other) const;

 private:
  LatticeKind lattice_;
  std::vector<std::string> alphabet_;
  std::vector<std::size_t> trans_;  // state * symbols + x
  std::size_t initial_;
  FuzzyVector terminal_;
  std::vector<StateLabel> labels_;
};

Value cdfa_evaluate(const Cdfa& c, const Word& u);

/// Shortest word (shortlex, alphabet order) on which the two automata assign
/// different degrees, or nullopt when they are language equivalent.
/// Throws LatticeMismatch / AlphabetMismatch.
std::optional<Word> cdfa_distinguishing_word(const Cdfa& c1, const Cdfa& c2);

inline bool cdfa_equivalent(const Cdfa& c1, const Cdfa& c2) {
  return !cdfa_distinguishing_word(c1, c2).has_value();
}

/// The Cdfa viewed as a fuzzy automaton with crisp σ and δ_x.
FuzzyAutomaton embed(const Cdfa& c);

}  // namespace fuzzydet
