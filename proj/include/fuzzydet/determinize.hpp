#pragma once

// Conversions of a fuzzy automaton into an equivalent crisp-deterministic
// fuzzy automaton:
//
//   nerode          states σ_u = σ∘δ_u, step σ_u -> σ_{ux}
//   reverse_nerode  states τ_u = δ_u∘τ, step τ_u -> τ_{xu}; recognizes the
//                   reversed language
//   d_automaton     states d_u, the degrees to which each state's right
//                   language is included in the u-derivative of the
//                   recognized language; yields a minimal cdfa
//   brzozowski      reverse_nerode applied twice
//   psi_d_automaton the d_u construction over the family ψ^w of a reflexive
//                   left-invariant fuzzy relation ψ
//
// All of them grow a transition tree breadth-first (children in alphabet
// order), close a vertex whose vector was already built, and glue closed
// leaves back onto the vertex that introduced the vector. Any of them may
// fail to terminate on some inputs, so each takes a cap on the number of
// distinct states per phase.

#include <chrono>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fuzzydet/automaton.hpp"

namespace fuzzydet {

struct TreeVertex {
  static constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

  Word word;
  FuzzyVector vector;
  bool closed = false;
  /// 1-based state number; closed vertices share it with the vertex that
  /// first produced the same vector.
  std::size_t pointer = 0;
  std::size_t parent = kNoParent;
  Symbol symbol = 0;
};

class TransitionTree {
 public:
  /// How a child's word is formed from its parent's word u and symbol x.
  enum class Growth { append, prepend };

  TransitionTree(std::size_t symbols, Growth growth)
      : symbols_(symbols), growth_(growth) {}

  std::span<const TreeVertex> vertices() const noexcept { return vertices_; }
  std::size_t symbols() const noexcept { return symbols_; }
  Growth growth() const noexcept { return growth_; }

  /// Number of distinct vectors, i.e. non-closed vertices.
  std::size_t states() const noexcept { return state_vertex_.size(); }

  /// States are 0-based here (state = pointer - 1).
  const FuzzyVector& state_vector(std::size_t state) const {
    return vertices_[state_vertex_.at(state)].vector;
  }
  std::size_t state_vertex(std::size_t state) const { return state_vertex_.at(state); }
  /// Shortlex-least word among all vertices carrying this state's vector.
  const Word& state_word(std::size_t state) const { return state_word_.at(state); }
  /// The glued x-successor of a state.
  std::size_t child_state(std::size_t state, Symbol x) const {
    return child_[state * symbols_ + x];
  }
  std::vector<FuzzyVector> state_vectors() const;
  /// Length of the longest vertex word.
  std::size_t depth() const noexcept { return depth_; }

 private:
  friend class TreeBuilder;

  std::size_t symbols_;
  Growth growth_;
  std::vector<TreeVertex> vertices_;
  std::vector<std::size_t> state_vertex_;
  std::vector<Word> state_word_;
  std::vector<std::size_t> child_;
  std::size_t depth_ = 0;
};

struct DetStats {
  std::size_t vertices = 0;
  std::size_t closure_checks = 0;
  std::size_t states = 0;
  std::chrono::nanoseconds elapsed{0};

  DetStats& operator+=(const DetStats& o);
};

struct CapExceeded {
  std::size_t cap = 0;
  /// Distinct states built when the cap was hit (= cap).
  std::size_t states_built = 0;
  std::string phase;
};

struct DetOutcome {
  std::variant<Cdfa, CapExceeded> result;
  DetStats stats;

  bool ok() const noexcept { return std::holds_alternative<Cdfa>(result); }
  const Cdfa& cdfa() const { return std::get<Cdfa>(result); }
  const CapExceeded& cap_exceeded() const { return std::get<CapExceeded>(result); }
};

struct TreeOutcome {
  std::variant<TransitionTree, CapExceeded> result;
  DetStats stats;

  bool ok() const noexcept { return std::holds_alternative<TransitionTree>(result); }
  const TransitionTree& tree() const { return std::get<TransitionTree>(result); }
};

/// The tree of the d_u (or Δ_u) vectors together with the family it was
/// computed against: the reverse Nerode states τ_w, or ψ^w.
struct InclusionTrees {
  TransitionTree family;
  TransitionTree tree;
};

struct InclusionOutcome {
  std::variant<InclusionTrees, CapExceeded> result;
  DetStats stats;

  bool ok() const noexcept { return std::holds_alternative<InclusionTrees>(result); }
  const InclusionTrees& trees() const { return std::get<InclusionTrees>(result); }
};

inline constexpr std::size_t kDefaultCap = 10000;

TreeOutcome nerode_tree(const FuzzyAutomaton& a, std::size_t cap);
DetOutcome nerode(const FuzzyAutomaton& a, std::size_t cap = kDefaultCap);

TreeOutcome reverse_nerode_tree(const FuzzyAutomaton& a, std::size_t cap);
DetOutcome reverse_nerode(const FuzzyAutomaton& a, std::size_t cap = kDefaultCap);

/// d_ε(a) = ⋀_μ μ(a) → σ∘μ over the given reverse Nerode states.
FuzzyVector d_epsilon(const FuzzyAutomaton& a, std::span<const FuzzyVector> rn_states);

/// d_{ux}(a) = ⋀_μ μ(a) → d_u∘μ_x, with μ_x the x-child of μ in the
/// completed reverse Nerode tree.
FuzzyVector d_step(const FuzzyAutomaton& a, const FuzzyVector& d_u, Symbol x,
                   const TransitionTree& rn_tree);

InclusionOutcome inclusion_trees(const FuzzyAutomaton& a, std::size_t cap);
DetOutcome d_automaton(const FuzzyAutomaton& a, std::size_t cap = kDefaultCap);

DetOutcome brzozowski(const FuzzyAutomaton& a, std::size_t cap = kDefaultCap);

struct InvarianceViolation {
  /// True when σ∘ψ ≤ σ fails (at column `col`); otherwise
  /// δ_x∘ψ ≤ ψ∘δ_x fails at (row, col).
  bool initial = false;
  Symbol symbol = 0;
  std::size_t row = 0;
  std::size_t col = 0;
};

/// Checks σ∘ψ ≤ σ and δ_x∘ψ ≤ ψ∘δ_x for every x. Weak left invariance
/// (σ_u∘ψ ≤ σ_u for every word u) is not decided.
std::optional<InvarianceViolation> check_left_invariant(const FuzzyAutomaton& a,
                                                        const FuzzyMatrix& psi);

bool is_reflexive(const FuzzyMatrix& psi);

/// ψ^ε = ψ∘τ, ψ^{xw} = ψ∘δ_x∘ψ^w, glued by the same tree procedure.
TreeOutcome psi_family_tree(const FuzzyAutomaton& a, const FuzzyMatrix& psi,
                            std::size_t cap);

InclusionOutcome psi_inclusion_trees(const FuzzyAutomaton& a, const FuzzyMatrix& psi,
                                     std::size_t cap);

/// Throws PsiNotReflexive / PsiNotLeftInvariant when ψ fails the
/// precondition.
DetOutcome psi_d_automaton(const FuzzyAutomaton& a, const FuzzyMatrix& psi,
                           std::size_t cap = kDefaultCap);

struct Preflight {
  SemiringClosure closure;
  /// k^n when the closure is finite.
  std::optional<mpz_class> bound;
};

/// Saturates the values taken by σ, δ and τ under ∨ and ⊗. A finite closure
/// with k elements bounds the Nerode and reverse Nerode automata by k^n
/// states.
Preflight preflight(const FuzzyAutomaton& a, std::size_t cap = kDefaultCap);

ValueSet membership_values(const FuzzyAutomaton& a);

}  // namespace fuzzydet
