#include "fuzzydet/determinize.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "fuzzydet/carrier.hpp"
#include "fuzzydet/kernels.hpp"

namespace fuzzydet {

std::vector<FuzzyVector> TransitionTree::state_vectors() const {
  std::vector<FuzzyVector> out;
  out.reserve(states());
  for (std::size_t v : state_vertex_) out.push_back(vertices_[v].vector);
  return out;
}

DetStats& DetStats::operator+=(const DetStats& o) {
  vertices += o.vertices;
  closure_checks += o.closure_checks;
  states += o.states;
  elapsed += o.elapsed;
  return *this;
}

namespace {

void require_cap(std::size_t cap) {
  if (cap < 1) throw Error(ErrorCode::InvalidCap, "state cap must be at least 1");
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::chrono::nanoseconds elapsed() const {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
        std::chrono::steady_clock::now() - start_);
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

/// Breadth-first tree growth shared by every construction. `expand` maps a
/// state's vector to its children, one per symbol in alphabet order.
class TreeBuilder {
 public:
  template <typename Expand>
  static std::variant<TransitionTree, CapExceeded> grow(
      FuzzyVector root, std::size_t symbols, TransitionTree::Growth growth,
      std::size_t cap, const char* phase, Expand&& expand, DetStats& stats) {
    require_cap(cap);
    TransitionTree t(symbols, growth);
    std::unordered_map<FuzzyVector, std::size_t, FuzzyVectorHash> known;

    known.emplace(root, 0);
    t.vertices_.push_back(TreeVertex{{}, std::move(root), false, 1, TreeVertex::kNoParent, 0});
    t.state_vertex_.push_back(0);
    t.state_word_.emplace_back();
    t.child_.resize(symbols);
    ++stats.vertices;

    std::deque<std::size_t> frontier{0};
    while (!frontier.empty()) {
      const std::size_t state = frontier.front();
      frontier.pop_front();
      const std::size_t parent = t.state_vertex_[state];
      std::vector<FuzzyVector> children = expand(state, t.vertices_[parent].vector);

      for (Symbol x = 0; x < symbols; ++x) {
        Word word = t.vertices_[parent].word;
        if (growth == TransitionTree::Growth::append)
          word.push_back(x);
        else
          word.insert(word.begin(), x);
        t.depth_ = std::max(t.depth_, word.size());

        ++stats.closure_checks;
        auto it = known.find(children[x]);
        TreeVertex v{std::move(word), std::move(children[x]), false, 0, parent, x};
        if (it != known.end()) {
          const std::size_t target = it->second;
          v.closed = true;
          v.pointer = target + 1;
          if (shortlex_less(v.word, t.state_word_[target])) t.state_word_[target] = v.word;
          t.child_[state * symbols + x] = target;
        } else {
          const std::size_t target = t.state_vertex_.size();
          if (target >= cap) {
            stats.states = target;
            return CapExceeded{cap, target, phase};
          }
          known.emplace(v.vector, target);
          v.pointer = target + 1;
          t.state_vertex_.push_back(t.vertices_.size());
          t.state_word_.push_back(v.word);
          t.child_.resize(t.child_.size() + symbols);
          t.child_[state * symbols + x] = target;
          frontier.push_back(target);
        }
        t.vertices_.push_back(std::move(v));
        ++stats.vertices;
      }
    }
    stats.states = t.states();
    return t;
  }
};

namespace {

template <typename Terminal>
Cdfa to_cdfa(const LatticeKind& lattice, const std::vector<std::string>& alphabet,
             const TransitionTree& t, Terminal&& terminal) {
  const std::size_t n = t.states();
  const std::size_t m = alphabet.size();
  std::vector<std::size_t> trans(n * m);
  FuzzyVector term(lattice, n);
  std::vector<StateLabel> labels;
  labels.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (Symbol x = 0; x < m; ++x) trans[s * m + x] = t.child_state(s, x);
    term.set(s, terminal(t.state_vector(s)));
    labels.push_back(StateLabel{t.state_word(s), t.state_vector(s)});
  }
  return Cdfa(lattice, alphabet, std::move(trans), 0, std::move(term), std::move(labels));
}

template <typename Terminal>
DetOutcome finish(const FuzzyAutomaton& a, TreeOutcome&& grown, Terminal&& terminal) {
  if (!grown.ok())
    return DetOutcome{std::get<CapExceeded>(std::move(grown.result)), grown.stats};
  Stopwatch sw;
  Cdfa c = to_cdfa(a.lattice(), a.alphabet(), grown.tree(), terminal);
  grown.stats.elapsed += sw.elapsed();
  return DetOutcome{std::move(c), grown.stats};
}

/// ⋀_μ μ(a) → scalars[μ] over `count` family members, computed per
/// component a.
template <typename Member>
FuzzyVector meet_of_residua(const LatticeKind& l, std::size_t n, std::size_t count,
                            Member&& member, const std::vector<Value>& scalars) {
  FuzzyVector acc = FuzzyVector::constant(l, n, top(l));
  if (l.indexed()) {
    const auto& k = kernels::active();
    for (std::size_t i = 0; i < count; ++i)
      k.accumulate_inf_resid(l.top_index(), member(i).indices(), scalars[i].as_index(),
                             acc.indices());
    return acc;
  }
  const detail::RationalOps ops{l.tag()};
  auto out = acc.rationals();
  for (std::size_t i = 0; i < count; ++i) {
    auto mu = member(i).rationals();
    const Rational& s = scalars[i].as_rational();
    for (std::size_t j = 0; j < n; ++j) {
      if (mu[j] <= s) continue;
      Rational r = ops.resid(mu[j], s);
      if (r < out[j]) out[j] = std::move(r);
    }
  }
  return acc;
}

/// Children of d_u for every symbol against a completed family tree. The
/// values d_u∘ν are computed once for every family state ν; the x-child
/// then reads d_u∘μ_x through the glued x-successor of μ.
std::vector<FuzzyVector> inclusion_children(const LatticeKind& l, std::size_t n,
                                            const FuzzyVector& d_u,
                                            const TransitionTree& family) {
  const std::size_t r = family.states();
  std::vector<Value> products;
  products.reserve(r);
  for (std::size_t nu = 0; nu < r; ++nu) products.push_back(dot(d_u, family.state_vector(nu)));

  auto member = [&](std::size_t mu) -> const FuzzyVector& { return family.state_vector(mu); };
  std::vector<FuzzyVector> children;
  children.reserve(family.symbols());
  std::vector<Value> scalars(r);
  for (Symbol x = 0; x < family.symbols(); ++x) {
    for (std::size_t mu = 0; mu < r; ++mu) scalars[mu] = products[family.child_state(mu, x)];
    children.push_back(meet_of_residua(l, n, r, member, scalars));
  }
  return children;
}

FuzzyVector inclusion_root(const FuzzyAutomaton& a, const TransitionTree& family) {
  const std::size_t r = family.states();
  std::vector<Value> scalars;
  scalars.reserve(r);
  for (std::size_t mu = 0; mu < r; ++mu) scalars.push_back(dot(a.sigma(), family.state_vector(mu)));
  auto member = [&](std::size_t mu) -> const FuzzyVector& { return family.state_vector(mu); };
  return meet_of_residua(a.lattice(), a.states(), r, member, scalars);
}

/// Grows the d_u tree over an already completed family tree.
InclusionOutcome grow_inclusion(const FuzzyAutomaton& a, TransitionTree family,
                                DetStats stats, std::size_t cap, const char* phase) {
  Stopwatch sw;
  FuzzyVector root = inclusion_root(a, family);
  auto expand = [&](std::size_t, const FuzzyVector& d_u) {
    return inclusion_children(a.lattice(), a.states(), d_u, family);
  };
  auto grown = TreeBuilder::grow(std::move(root), a.symbols(), TransitionTree::Growth::append,
                                 cap, phase, expand, stats);
  stats.elapsed += sw.elapsed();
  if (auto* hit = std::get_if<CapExceeded>(&grown)) return InclusionOutcome{*hit, stats};
  return InclusionOutcome{
      InclusionTrees{std::move(family), std::get<TransitionTree>(std::move(grown))}, stats};
}

DetOutcome inclusion_cdfa(const FuzzyAutomaton& a, InclusionOutcome&& grown) {
  if (!grown.ok())
    return DetOutcome{std::get<CapExceeded>(std::move(grown.result)), grown.stats};
  Stopwatch sw;
  const InclusionTrees& trees = grown.trees();
  // The family root is τ (or ψ^ε = ψ∘τ).
  const FuzzyVector& root = trees.family.state_vector(0);
  Cdfa c = to_cdfa(a.lattice(), a.alphabet(), trees.tree,
                   [&](const FuzzyVector& d_u) { return dot(d_u, root); });
  grown.stats.elapsed += sw.elapsed();
  return DetOutcome{std::move(c), grown.stats};
}

}  // namespace

// ---------------------------------------------------------------- Nerode

TreeOutcome nerode_tree(const FuzzyAutomaton& a, std::size_t cap) {
  DetStats stats;
  Stopwatch sw;
  auto expand = [&](std::size_t, const FuzzyVector& s) {
    std::vector<FuzzyVector> out;
    for (Symbol x = 0; x < a.symbols(); ++x) out.push_back(vec_mat(s, a.delta(x)));
    return out;
  };
  auto grown = TreeBuilder::grow(a.sigma(), a.symbols(), TransitionTree::Growth::append, cap,
                                 "nerode", expand, stats);
  stats.elapsed = sw.elapsed();
  return TreeOutcome{std::move(grown), stats};
}

DetOutcome nerode(const FuzzyAutomaton& a, std::size_t cap) {
  return finish(a, nerode_tree(a, cap), [&](const FuzzyVector& s) { return dot(s, a.tau()); });
}

TreeOutcome reverse_nerode_tree(const FuzzyAutomaton& a, std::size_t cap) {
  DetStats stats;
  Stopwatch sw;
  auto expand = [&](std::size_t, const FuzzyVector& t) {
    std::vector<FuzzyVector> out;
    for (Symbol x = 0; x < a.symbols(); ++x) out.push_back(right_language_step(a, x, t));
    return out;
  };
  auto grown = TreeBuilder::grow(a.tau(), a.symbols(), TransitionTree::Growth::prepend, cap,
                                 "reverse-nerode", expand, stats);
  stats.elapsed = sw.elapsed();
  return TreeOutcome{std::move(grown), stats};
}

DetOutcome reverse_nerode(const FuzzyAutomaton& a, std::size_t cap) {
  return finish(a, reverse_nerode_tree(a, cap),
                [&](const FuzzyVector& t) { return dot(a.sigma(), t); });
}

// ---------------------------------------------------------------- A_d

FuzzyVector d_epsilon(const FuzzyAutomaton& a, std::span<const FuzzyVector> rn_states) {
  std::vector<Value> scalars;
  scalars.reserve(rn_states.size());
  for (const auto& mu : rn_states) scalars.push_back(dot(a.sigma(), mu));
  auto member = [&](std::size_t i) -> const FuzzyVector& { return rn_states[i]; };
  return meet_of_residua(a.lattice(), a.states(), rn_states.size(), member, scalars);
}

FuzzyVector d_step(const FuzzyAutomaton& a, const FuzzyVector& d_u, Symbol x,
                   const TransitionTree& rn_tree) {
  if (x >= a.symbols() || x >= rn_tree.symbols())
    throw Error(ErrorCode::UnknownSymbol, "symbol index " + std::to_string(x) + " out of range");
  if (d_u.size() != a.states())
    throw Error(ErrorCode::DimensionMismatch, "d_u length differs from the state count");
  const std::size_t r = rn_tree.states();
  std::vector<Value> scalars;
  scalars.reserve(r);
  for (std::size_t mu = 0; mu < r; ++mu)
    scalars.push_back(dot(d_u, rn_tree.state_vector(rn_tree.child_state(mu, x))));
  auto member = [&](std::size_t mu) -> const FuzzyVector& { return rn_tree.state_vector(mu); };
  return meet_of_residua(a.lattice(), a.states(), r, member, scalars);
}

InclusionOutcome inclusion_trees(const FuzzyAutomaton& a, std::size_t cap) {
  require_cap(cap);
  TreeOutcome rn = reverse_nerode_tree(a, cap);
  if (!rn.ok()) return InclusionOutcome{std::get<CapExceeded>(std::move(rn.result)), rn.stats};
  return grow_inclusion(a, std::get<TransitionTree>(std::move(rn.result)), rn.stats, cap,
                        "inclusion");
}

DetOutcome d_automaton(const FuzzyAutomaton& a, std::size_t cap) {
  return inclusion_cdfa(a, inclusion_trees(a, cap));
}

// ---------------------------------------------------------------- Brzozowski

DetOutcome brzozowski(const FuzzyAutomaton& a, std::size_t cap) {
  require_cap(cap);
  DetOutcome first = reverse_nerode(a, cap);
  if (!first.ok()) {
    auto hit = first.cap_exceeded();
    hit.phase = "brzozowski-1";
    return DetOutcome{hit, first.stats};
  }
  DetOutcome second = reverse_nerode(embed(first.cdfa()), cap);
  second.stats += first.stats;
  second.stats.states -= first.stats.states;
  if (!second.ok()) {
    auto hit = second.cap_exceeded();
    hit.phase = "brzozowski-2";
    return DetOutcome{hit, second.stats};
  }
  return second;
}

// ---------------------------------------------------------------- ψ / Δ

bool is_reflexive(const FuzzyMatrix& psi) {
  if (psi.rows() != psi.cols()) return false;
  const Value one = top(psi.lattice());
  for (std::size_t i = 0; i < psi.rows(); ++i)
    if (!(psi.at(i, i) == one)) return false;
  return true;
}

std::optional<InvarianceViolation> check_left_invariant(const FuzzyAutomaton& a,
                                                        const FuzzyMatrix& psi) {
  if (!(psi.lattice() == a.lattice()))
    throw Error(ErrorCode::LatticeMismatch, "psi lattice differs from the automaton's");
  if (psi.rows() != a.states() || psi.cols() != a.states())
    throw Error(ErrorCode::DimensionMismatch, "psi must be n x n");
  const LatticeKind& l = a.lattice();

  const FuzzyVector sp = vec_mat(a.sigma(), psi);
  for (std::size_t j = 0; j < a.states(); ++j)
    if (!leq(l, sp.at(j), a.sigma().at(j))) return InvarianceViolation{true, 0, 0, j};

  for (Symbol x = 0; x < a.symbols(); ++x) {
    const FuzzyMatrix lhs = mat_compose(a.delta(x), psi);
    const FuzzyMatrix rhs = mat_compose(psi, a.delta(x));
    if (pointwise_leq(lhs, rhs)) continue;
    for (std::size_t i = 0; i < lhs.rows(); ++i)
      for (std::size_t j = 0; j < lhs.cols(); ++j)
        if (!leq(l, lhs.at(i, j), rhs.at(i, j))) return InvarianceViolation{false, x, i, j};
  }
  return std::nullopt;
}

TreeOutcome psi_family_tree(const FuzzyAutomaton& a, const FuzzyMatrix& psi, std::size_t cap) {
  DetStats stats;
  Stopwatch sw;
  std::vector<FuzzyMatrix> steps;
  for (Symbol x = 0; x < a.symbols(); ++x) steps.push_back(mat_compose(psi, a.delta(x)));
  auto expand = [&](std::size_t, const FuzzyVector& w) {
    std::vector<FuzzyVector> out;
    for (Symbol x = 0; x < a.symbols(); ++x) out.push_back(mat_vec(steps[x], w));
    return out;
  };
  auto grown = TreeBuilder::grow(mat_vec(psi, a.tau()), a.symbols(),
                                 TransitionTree::Growth::prepend, cap, "psi-family", expand,
                                 stats);
  stats.elapsed = sw.elapsed();
  return TreeOutcome{std::move(grown), stats};
}

InclusionOutcome psi_inclusion_trees(const FuzzyAutomaton& a, const FuzzyMatrix& psi,
                                     std::size_t cap) {
  require_cap(cap);
  if (!(psi.lattice() == a.lattice()))
    throw Error(ErrorCode::LatticeMismatch, "psi lattice differs from the automaton's");
  if (psi.rows() != a.states() || psi.cols() != a.states())
    throw Error(ErrorCode::DimensionMismatch, "psi must be n x n");
  if (!is_reflexive(psi)) throw Error(ErrorCode::PsiNotReflexive, "psi is not reflexive");
  if (auto v = check_left_invariant(a, psi)) {
    const std::string where =
        v->initial ? "sigma o psi <= sigma fails at state " + std::to_string(v->col + 1)
                   : "delta_" + a.alphabet()[v->symbol] + " o psi <= psi o delta_" +
                         a.alphabet()[v->symbol] + " fails at (" + std::to_string(v->row + 1) +
                         ", " + std::to_string(v->col + 1) + ")";
    throw Error(ErrorCode::PsiNotLeftInvariant, "psi is not left invariant: " + where);
  }
  TreeOutcome fam = psi_family_tree(a, psi, cap);
  if (!fam.ok()) return InclusionOutcome{std::get<CapExceeded>(std::move(fam.result)), fam.stats};
  return grow_inclusion(a, std::get<TransitionTree>(std::move(fam.result)), fam.stats, cap,
                        "psi-inclusion");
}

DetOutcome psi_d_automaton(const FuzzyAutomaton& a, const FuzzyMatrix& psi, std::size_t cap) {
  return inclusion_cdfa(a, psi_inclusion_trees(a, psi, cap));
}

// ---------------------------------------------------------------- preflight

ValueSet membership_values(const FuzzyAutomaton& a) {
  ValueSet out(a.lattice());
  for (const Value& v : a.sigma().values()) out.insert(v);
  for (Symbol x = 0; x < a.symbols(); ++x) {
    const FuzzyMatrix& m = a.delta(x);
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) out.insert(m.at(r, c));
  }
  for (const Value& v : a.tau().values()) out.insert(v);
  return out;
}

Preflight preflight(const FuzzyAutomaton& a, std::size_t cap) {
  Preflight p{semiring_closure(a.lattice(), membership_values(a), cap), std::nullopt};
  if (p.closure.closed) {
    mpz_class bound;
    mpz_ui_pow_ui(bound.get_mpz_t(), p.closure.k(), a.states());
    p.bound = bound;
  }
  return p;
}

}  // namespace fuzzydet
