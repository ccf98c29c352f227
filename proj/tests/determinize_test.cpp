#include <doctest.h>

#include <random>

#include "fuzzydet/determinize.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace fuzzydet;
using fuzzydet::testing::vec;

namespace {

Word w(const FuzzyAutomaton& a, const char* text) { return parse_word(a.alphabet(), text); }

std::vector<FuzzyVector> label_vectors(const Cdfa& c) {
  std::vector<FuzzyVector> out;
  for (const auto& s : c.labels()) out.push_back(s.vector);
  return out;
}

FuzzyAutomaton one_state(const LatticeKind& l, const char* s, const char* t) {
  FuzzyMatrix d(l, 1, 1);
  d.set(0, 0, top(l));
  return FuzzyAutomaton(l, {"x", "y"}, vec(l, {s}), {d, d}, vec(l, {t}));
}

void require_equivalent(const FuzzyAutomaton& a, const Cdfa& c, std::size_t max_len) {
  for (const Word& u : testing::all_words(a.symbols(), max_len))
    REQUIRE(cdfa_evaluate(c, u) == evaluate(a, u));
}

}  // namespace

TEST_CASE("reverse Nerode on ex43 fixture") {
  const FuzzyAutomaton a = testing::load_fixture("ex43.fza");
  const LatticeKind& l = a.lattice();
  const DetOutcome out = reverse_nerode(a, 100);
  REQUIRE(out.ok());
  const Cdfa& c = out.cdfa();
  REQUIRE(c.states() == 4);
  CHECK(label_vectors(c) == std::vector<FuzzyVector>{vec(l, {"0", "1", "0"}),
                                                     vec(l, {"0.5", "1", "1"}),
                                                     vec(l, {"1", "1", "0.3"}),
                                                     vec(l, {"1", "1", "1"})});
  CHECK(c.terminal_vector() == vec(l, {"0", "0.5", "1", "1"}));
  CHECK(c.labels()[3].word == w(a, "x.x"));
  // Words are prepended: reading y then x reaches τ_{xy} = τ_x, and x then
  // y reaches τ_{yx} = τ_{x²}.
  CHECK(c.next(c.next(0, 1), 0) == 1);
  CHECK(c.next(c.next(0, 0), 1) == 3);
  CHECK(c.next(2, 1) == 2);
  CHECK(c.next(3, 0) == 3);
  CHECK(c.next(3, 1) == 3);
  // Recognizes the reversed language.
  const FuzzyAutomaton r = reverse(a);
  require_equivalent(r, c, 6);
}

TEST_CASE("reverse Nerode trivial cases") {
  const FuzzyAutomaton a = testing::load_fixture("ex43.fza");
  const FuzzyAutomaton z(a.lattice(), a.alphabet(), a.sigma(), {a.delta(0), a.delta(1)},
                         FuzzyVector(a.lattice(), 3));
  const DetOutcome out = reverse_nerode(z, 10);
  REQUIRE(out.ok());
  CHECK(out.cdfa().states() == 1);
  CHECK(out.cdfa().terminal(0) == bottom(a.lattice()));
}

TEST_CASE("d vectors on ex43 fixture") {
  const FuzzyAutomaton a = testing::load_fixture("ex43.fza");
  const LatticeKind& l = a.lattice();
  const TreeOutcome rn = reverse_nerode_tree(a, 100);
  REQUIRE(rn.ok());
  const auto states = rn.tree().state_vectors();
  const FuzzyVector de = d_epsilon(a, states);
  CHECK(de == vec(l, {"1", "0", "0.5"}));
  const FuzzyVector dx = d_step(a, de, 0, rn.tree());
  CHECK(dx == vec(l, {"0.5", "0.5", "1"}));
  CHECK(d_step(a, de, 1, rn.tree()) == vec(l, {"1", "1", "1"}));
  CHECK(d_step(a, dx, 1, rn.tree()) == dx);

  // d_ε(a_1) as an explicit inclusion degree.
  Value m = top(l);
  for (const auto& mu : states) m = meet(l, m, resid(l, mu.at(0), dot(a.sigma(), mu)));
  CHECK(m == top(l));

  const std::vector<FuzzyVector> ones = {vec(l, {"1", "1", "1"})};
  const FuzzyAutomaton full(l, a.alphabet(), vec(l, {"1", "1", "1"}), {a.delta(0), a.delta(1)},
                            a.tau());
  CHECK(d_epsilon(full, ones) == vec(l, {"1", "1", "1"}));
  CHECK_THROWS_AS(d_epsilon(a, std::vector<FuzzyVector>{vec(l, {"1", "1"})}), Error);
}

TEST_CASE("A_d on ex43 fixture") {
  const FuzzyAutomaton a = testing::load_fixture("ex43.fza");
  const LatticeKind& l = a.lattice();
  const DetOutcome out = d_automaton(a);
  REQUIRE(out.ok());
  const Cdfa& c = out.cdfa();
  REQUIRE(c.states() == 3);
  CHECK(label_vectors(c) == std::vector<FuzzyVector>{vec(l, {"1", "0", "0.5"}),
                                                     vec(l, {"0.5", "0.5", "1"}),
                                                     vec(l, {"1", "1", "1"})});
  CHECK(c.terminal_vector() == vec(l, {"0", "0.5", "1"}));
  CHECK(c.initial() == 0);
  CHECK(c.next(0, 0) == 1);
  CHECK(c.next(0, 1) == 2);
  CHECK(c.next(1, 0) == 2);
  CHECK(c.next(1, 1) == 1);
  CHECK(c.next(2, 0) == 2);
  CHECK(c.next(2, 1) == 2);
  CHECK(cdfa_evaluate(c, w(a, "x")) == parse_value(l, "0.5"));
  for (const Word& u : testing::all_words(2, 3)) {
    Word yu = {1};
    yu.insert(yu.end(), u.begin(), u.end());
    CHECK(cdfa_evaluate(c, yu) == top(l));
  }
  require_equivalent(a, c, 6);
}

TEST_CASE("ex44 fixture counts") {
  const FuzzyAutomaton a = testing::load_fixture("ex44.fza");
  const DetOutcome d = d_automaton(a);
  REQUIRE(d.ok());
  CHECK(d.cdfa().states() == 4);
  const DetOutcome n = nerode(a);
  REQUIRE(n.ok());
  CHECK(n.cdfa().states() == 7);
  const DetOutcome b = brzozowski(a);
  REQUIRE(b.ok());
  CHECK(b.cdfa().states() == 4);
  CHECK(cdfa_equivalent(d.cdfa(), b.cdfa()));
  CHECK(testing::minimal_dfa_states(a) == 4);
}

TEST_CASE("Nerode on ex43 fixture does not terminate") {
  const FuzzyAutomaton a = testing::load_fixture("ex43.fza");
  const DetOutcome out = nerode(a, 100);
  REQUIRE_FALSE(out.ok());
  CHECK(out.cap_exceeded().cap == 100);
  CHECK(out.cap_exceeded().states_built == 100);
  CHECK(out.cap_exceeded().phase == "nerode");
}

TEST_CASE("caps are validated and propagate") {
  const FuzzyAutomaton a = testing::load_fixture("ex43.fza");
  for (auto f : {&nerode, &reverse_nerode, &d_automaton, &brzozowski}) {
    try {
      f(a, 0);
      FAIL("expected InvalidCap");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidCap);
    }
  }
  const DetOutcome d = d_automaton(a, 3);
  REQUIRE_FALSE(d.ok());
  CHECK(d.cap_exceeded().phase == "reverse-nerode");
  const DetOutcome b = brzozowski(a, 3);
  REQUIRE_FALSE(b.ok());
  CHECK(b.cap_exceeded().phase == "brzozowski-1");
}

TEST_CASE("trivial automata") {
  for (const auto& l : {LatticeKind::boolean(), LatticeKind::goguen(), LatticeKind::chain(3)}) {
    const FuzzyAutomaton one = one_state(l, format_value(l, top(l)).c_str(),
                                         format_value(l, top(l)).c_str());
    for (auto f : {&nerode, &reverse_nerode, &d_automaton, &brzozowski}) {
      const DetOutcome out = f(one, 10);
      REQUIRE(out.ok());
      CHECK(out.cdfa().states() == 1);
      CHECK(out.cdfa().terminal(0) == dot(one.sigma(), one.tau()));
    }
    const FuzzyAutomaton zero(l, {"x"}, FuzzyVector(l, 2), {FuzzyMatrix::identity(l, 2)},
                              FuzzyVector(l, 2));
    const DetOutcome d = d_automaton(zero, 10);
    REQUIRE(d.ok());
    CHECK(d.cdfa().states() == 1);
    CHECK(d.cdfa().terminal(0) == bottom(l));
  }
}

TEST_CASE("Brzozowski on ex43 fixture") {
  const FuzzyAutomaton a = testing::load_fixture("ex43.fza");
  const DetOutcome b = brzozowski(a);
  REQUIRE(b.ok());
  CHECK(b.cdfa().states() == 3);
  CHECK(cdfa_equivalent(b.cdfa(), d_automaton(a).cdfa()));
  // Labels are vectors over the intermediate automaton's states.
  CHECK(b.cdfa().labels()[0].vector.size() == 4);
}

TEST_CASE("left invariance") {
  const FuzzyAutomaton a = testing::load_fixture("ex43.fza");
  const LatticeKind& l = a.lattice();
  CHECK_FALSE(check_left_invariant(a, FuzzyMatrix::identity(l, 3)).has_value());
  CHECK_FALSE(check_left_invariant(a, FuzzyMatrix(l, 3, 3)).has_value());
  FuzzyMatrix ones(l, 3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) ones.set(i, j, top(l));
  const auto v = check_left_invariant(a, ones);
  REQUIRE(v.has_value());
  CHECK(v->initial);
  CHECK(v->col == 1);
  CHECK_THROWS_AS(check_left_invariant(a, FuzzyMatrix::identity(l, 2)), Error);
  CHECK_THROWS_AS(check_left_invariant(a, FuzzyMatrix::identity(LatticeKind::godel(), 3)), Error);

  CHECK(is_reflexive(FuzzyMatrix::identity(l, 3)));
  CHECK_FALSE(is_reflexive(FuzzyMatrix(l, 3, 3)));
  try {
    psi_d_automaton(a, FuzzyMatrix(l, 3, 3));
    FAIL("expected PsiNotReflexive");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PsiNotReflexive);
  }
  try {
    psi_d_automaton(a, ones);
    FAIL("expected PsiNotLeftInvariant");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PsiNotLeftInvariant);
  }
}

TEST_CASE("identity psi collapses onto A_d") {
  for (const char* name : {"ex43.fza", "ex44.fza", "chain4.fza"}) {
    const FuzzyAutomaton a = testing::load_fixture(name);
    const FuzzyMatrix id = FuzzyMatrix::identity(a.lattice(), a.states());
    const TreeOutcome fam = psi_family_tree(a, id, 100);
    const TreeOutcome rn = reverse_nerode_tree(a, 100);
    REQUIRE(fam.ok());
    REQUIRE(rn.ok());
    CHECK(fam.tree().state_vectors() == rn.tree().state_vectors());
    const DetOutcome p = psi_d_automaton(a, id);
    const DetOutcome d = d_automaton(a);
    REQUIRE(p.ok());
    REQUIRE(d.ok());
    CHECK(p.cdfa().same_structure(d.cdfa()));
    CHECK(label_vectors(p.cdfa()) == label_vectors(d.cdfa()));
  }
}

namespace {

// Largest relation ψ ≥ identity passing the left-invariance check, found by
// dropping off-diagonal entries to 0 until it holds.
FuzzyMatrix some_invariant_psi(const FuzzyAutomaton& a, std::mt19937_64& rng) {
  const LatticeKind& l = a.lattice();
  const std::size_t n = a.states();
  FuzzyMatrix psi = testing::random_matrix(rng, l, n, n, 0.2);
  for (std::size_t i = 0; i < n; ++i) psi.set(i, i, top(l));
  while (auto v = check_left_invariant(a, psi)) {
    bool changed = false;
    for (std::size_t i = 0; i < n && !changed; ++i)
      for (std::size_t j = 0; j < n && !changed; ++j)
        if (i != j && !(psi.at(i, j) == bottom(l))) {
          psi.set(i, j, bottom(l));
          changed = true;
        }
    if (!changed) break;
  }
  return psi;
}

}  // namespace

TEST_CASE("reflexive left-invariant psi yields an equivalent minimal cdfa") {
  std::mt19937_64 rng(21);
  const auto l = LatticeKind::chain(3);
  int non_identity = 0;
  for (int i = 0; i < 200 && non_identity < 10; ++i) {
    const FuzzyAutomaton a = testing::random_automaton(rng, l, 3, 2);
    const FuzzyMatrix psi = some_invariant_psi(a, rng);
    if (psi == FuzzyMatrix::identity(l, 3)) continue;
    ++non_identity;
    const DetOutcome p = psi_d_automaton(a, psi);
    const DetOutcome d = d_automaton(a);
    REQUIRE(p.ok());
    REQUIRE(d.ok());
    CHECK(cdfa_equivalent(p.cdfa(), d.cdfa()));
    CHECK(p.cdfa().states() == d.cdfa().states());
    require_equivalent(a, p.cdfa(), 5);
  }
  CHECK(non_identity > 0);
}

TEST_CASE("random automata: equivalence, minimality proxy and determinism") {
  std::mt19937_64 rng(22);
  for (const auto& l : {LatticeKind::godel(), LatticeKind::chain(4), LatticeKind::lukasiewicz()}) {
    for (int i = 0; i < 15; ++i) {
      const FuzzyAutomaton a = testing::random_automaton(rng, l, 3, 2);
      const DetOutcome d = d_automaton(a);
      const DetOutcome n = nerode(a);
      const DetOutcome b = brzozowski(a);
      REQUIRE(d.ok());
      REQUIRE(n.ok());
      REQUIRE(b.ok());
      require_equivalent(a, d.cdfa(), 5);
      require_equivalent(a, n.cdfa(), 5);
      CHECK(d.cdfa().states() <= n.cdfa().states());
      CHECK(d.cdfa().states() == b.cdfa().states());
      CHECK(cdfa_equivalent(d.cdfa(), b.cdfa()));
      CHECK(d_automaton(a).cdfa().same_structure(d.cdfa()));
    }
  }
}

TEST_CASE("transition tree invariants") {
  const FuzzyAutomaton a = testing::load_fixture("ex43.fza");
  const TreeOutcome rn = reverse_nerode_tree(a, 100);
  REQUIRE(rn.ok());
  const TransitionTree& t = rn.tree();
  std::size_t next_pointer = 1;
  for (std::size_t v = 0; v < t.vertices().size(); ++v) {
    const TreeVertex& vx = t.vertices()[v];
    bool earlier = false;
    for (std::size_t u = 0; u < v; ++u)
      if (t.vertices()[u].vector == vx.vector) {
        earlier = true;
        CHECK(vx.pointer == t.vertices()[u].pointer);
        break;
      }
    CHECK(vx.closed == earlier);
    if (!vx.closed) CHECK(vx.pointer == next_pointer++);
    if (vx.parent != TreeVertex::kNoParent) {
      const TreeVertex& p = t.vertices()[vx.parent];
      CHECK_FALSE(p.closed);
      CHECK(vx.vector == right_language_step(a, vx.symbol, p.vector));
      CHECK(vx.word.front() == vx.symbol);
    }
  }
  CHECK(t.states() == 4);
  CHECK(next_pointer == 5);
  // Vertices: 4 open with 2 children each, plus the root.
  CHECK(t.vertices().size() == 9);
}

TEST_CASE("preflight") {
  const FuzzyAutomaton b = testing::load_fixture("ex44.fza");
  const Preflight pb = preflight(b);
  REQUIRE(pb.bound.has_value());
  CHECK(pb.closure.k() == 2);
  CHECK(*pb.bound == 8);
  const Preflight pc = preflight(testing::load_fixture("chain4.fza"));
  REQUIRE(pc.bound.has_value());
  CHECK(pc.closure.k() <= 5);
  const Preflight pg = preflight(testing::load_fixture("ex43.fza"), 500);
  CHECK_FALSE(pg.bound.has_value());
  CHECK(membership_values(testing::load_fixture("ex43.fza")).size() == 4);
}
