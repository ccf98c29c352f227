#include <doctest.h>

#include <random>

#include "fuzzydet/automaton.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace fuzzydet;
using fuzzydet::testing::vec;

namespace {

Value eval_text(const FuzzyAutomaton& a, const char* w) {
  return evaluate(a, parse_word(a.alphabet(), w));
}

Word reversed(Word w) { return Word(w.rbegin(), w.rend()); }

}  // namespace

TEST_CASE("ex43 fixture degrees") {
  const FuzzyAutomaton a = testing::load_fixture("ex43.fza");
  const LatticeKind& l = a.lattice();
  CHECK(eval_text(a, "_") == parse_value(l, "0"));
  CHECK(eval_text(a, "x") == parse_value(l, "0.5"));
  CHECK(eval_text(a, "y") == parse_value(l, "1"));
  CHECK(eval_text(a, "y.y") == parse_value(l, "1"));
  CHECK(eval_text(a, "x.x") == parse_value(l, "1"));
  for (const Word& u : testing::all_words(2, 5))
    REQUIRE(evaluate(a, u) == testing::path_evaluate(a, u));
}

TEST_CASE("evaluation agrees with path enumeration on random automata") {
  std::mt19937_64 rng(11);
  for (const auto& l : {LatticeKind::boolean(), LatticeKind::godel(), LatticeKind::goguen(),
                        LatticeKind::lukasiewicz(), LatticeKind::chain(5)}) {
    for (int i = 0; i < 10; ++i) {
      const FuzzyAutomaton a = testing::random_automaton(rng, l, 3, 2);
      for (const Word& u : testing::all_words(2, 4)) {
        REQUIRE(evaluate(a, u) == testing::path_evaluate(a, u));
        const FuzzyMatrix du = testing::naive_delta_word(a, u);
        REQUIRE(left_vector(a, u) == vec_mat(a.sigma(), du));
        REQUIRE(right_vector(a, u) == mat_vec(du, a.tau()));
      }
    }
  }
}

TEST_CASE("word matrices compose") {
  std::mt19937_64 rng(12);
  const auto l = LatticeKind::lukasiewicz();
  const FuzzyAutomaton a = testing::random_automaton(rng, l, 4, 2);
  const auto words = testing::all_words(2, 2);
  for (const Word& u : words)
    for (const Word& v : words) {
      Word uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      REQUIRE(testing::naive_delta_word(a, uv) ==
              mat_compose(testing::naive_delta_word(a, u), testing::naive_delta_word(a, v)));
      // Prefix incrementality of σ_u.
      REQUIRE(left_vector(a, uv) == vec_mat(left_vector(a, u), testing::naive_delta_word(a, v)));
    }
}

TEST_CASE("reversal") {
  const FuzzyAutomaton a = testing::load_fixture("ex43.fza");
  const FuzzyAutomaton r = reverse(a);
  CHECK(r.sigma() == vec(a.lattice(), {"0", "1", "0"}));
  CHECK(r.tau() == a.sigma());
  CHECK(reverse(r) == a);
  for (const Word& u : testing::all_words(2, 4))
    REQUIRE(evaluate(r, u) == evaluate(a, reversed(u)));

  CHECK(right_language_step(a, 0, a.tau()) == vec(a.lattice(), {"0.5", "1", "1"}));
  CHECK(right_language_step(a, 1, a.tau()) == vec(a.lattice(), {"1", "1", "0.3"}));
  CHECK(right_language_step(a, 0, right_language_step(a, 0, a.tau())) ==
        vec(a.lattice(), {"1", "1", "1"}));
}

TEST_CASE("automaton validation") {
  const auto g = LatticeKind::goguen();
  const FuzzyVector s = vec(g, {"1", "0"});
  const FuzzyMatrix d(g, 2, 2);
  CHECK_THROWS_AS(FuzzyAutomaton(g, {"x"}, s, {d}, vec(g, {"0", "0", "1"})), Error);
  CHECK_THROWS_AS(FuzzyAutomaton(g, {"x", "y"}, s, {d}, s), Error);
  CHECK_THROWS_AS(FuzzyAutomaton(g, {"x", "x"}, s, {d, d}, s), Error);
  CHECK_THROWS_AS(FuzzyAutomaton(LatticeKind::godel(), {"x"}, s, {d}, s), Error);
  const FuzzyAutomaton ok(g, {"x"}, s, {d}, s);
  try {
    ok.symbol("z");
    FAIL("expected UnknownSymbol");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownSymbol);
  }
  CHECK_THROWS_AS(ok.delta(1), Error);
  CHECK_THROWS_AS(parse_word(ok.alphabet(), "x.q"), Error);
  CHECK(format_word(ok.alphabet(), {}) == "_");
  CHECK(format_word(ok.alphabet(), {0, 0}) == "x.x");
}

namespace {

// Two-state chain(2) cdfa over {a}: alternates, terminal degrees t0, t1.
Cdfa alternating(ChainIndex t0, ChainIndex t1) {
  const auto l = LatticeKind::chain(2);
  return Cdfa(l, {"a"}, {1, 0}, 0, FuzzyVector(l, {Value::index(t0), Value::index(t1)}));
}

Cdfa constant(ChainIndex t) {
  const auto l = LatticeKind::chain(2);
  return Cdfa(l, {"a"}, {0}, 0, FuzzyVector(l, {Value::index(t)}));
}

}  // namespace

TEST_CASE("cdfa evaluation and equivalence") {
  const Cdfa alt = alternating(2, 1);
  CHECK(cdfa_evaluate(alt, {}) == Value::index(2));
  CHECK(cdfa_evaluate(alt, {0}) == Value::index(1));
  CHECK(cdfa_evaluate(alt, {0, 0, 0}) == Value::index(1));

  CHECK(cdfa_equivalent(alternating(1, 1), constant(1)));
  CHECK_FALSE(cdfa_equivalent(alt, constant(2)));
  const auto w = cdfa_distinguishing_word(alt, constant(2));
  REQUIRE(w.has_value());
  CHECK(*w == Word{0});
  CHECK(cdfa_distinguishing_word(alt, constant(1)) == Word{});

  // Reflexive, symmetric, transitive over a small family.
  const std::vector<Cdfa> family = {alternating(1, 1), constant(1), alternating(2, 1),
                                    alternating(1, 2), constant(2), alternating(2, 2)};
  for (const Cdfa& p : family) {
    CHECK(cdfa_equivalent(p, p));
    for (const Cdfa& q : family) {
      CHECK(cdfa_equivalent(p, q) == cdfa_equivalent(q, p));
      for (const Cdfa& r : family)
        if (cdfa_equivalent(p, q) && cdfa_equivalent(q, r)) CHECK(cdfa_equivalent(p, r));
    }
  }
}

TEST_CASE("cdfa validation and comparison errors") {
  const auto l = LatticeKind::chain(2);
  const FuzzyVector t(l, {Value::index(0)});
  CHECK_THROWS_AS(Cdfa(l, {"a"}, {1}, 0, t), Error);
  CHECK_THROWS_AS(Cdfa(l, {"a", "b"}, {0}, 0, t), Error);
  CHECK_THROWS_AS(Cdfa(l, {"a"}, {0}, 1, t), Error);
  const auto l3 = LatticeKind::chain(3);
  try {
    cdfa_equivalent(constant(1), Cdfa(l3, {"a"}, {0}, 0, FuzzyVector(l3, {Value::index(1)})));
    FAIL("expected LatticeMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LatticeMismatch);
  }
  try {
    cdfa_equivalent(constant(1), Cdfa(l, {"b"}, {0}, 0, t));
    FAIL("expected AlphabetMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AlphabetMismatch);
  }
}

TEST_CASE("embedding a cdfa preserves its language") {
  const Cdfa alt = alternating(2, 1);
  const FuzzyAutomaton e = embed(alt);
  CHECK(e.states() == 2);
  for (const Word& u : testing::all_words(1, 6))
    REQUIRE(evaluate(e, u) == cdfa_evaluate(alt, u));
}
