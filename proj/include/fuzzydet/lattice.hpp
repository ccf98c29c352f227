#pragma once

// Complete residuated lattices on chains: the Boolean, Gödel, Goguen
// (product) and Łukasiewicz structures on [0,1] and the finite chains
// a_0 < ... < a_K with the Łukasiewicz-style operations on indices.
//
// Values of the [0,1] structures are exact GMP rationals. Boolean values and
// chain elements are stored as integer indices (Boolean is chain(1)).

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

#include "fuzzydet/error.hpp"

namespace fuzzydet {

using Rational = mpq_class;
using ChainIndex = std::int32_t;

enum class LatticeTag { boolean, godel, goguen, lukasiewicz, chain };

class LatticeKind {
 public:
  static LatticeKind boolean() { return LatticeKind(LatticeTag::boolean, 1); }
  static LatticeKind godel() { return LatticeKind(LatticeTag::godel, 0); }
  static LatticeKind goguen() { return LatticeKind(LatticeTag::goguen, 0); }
  static LatticeKind lukasiewicz() {
    return LatticeKind(LatticeTag::lukasiewicz, 0);
  }
  /// Chain a_0 < ... < a_top; top must be >= 1.
  static LatticeKind chain(ChainIndex top);

  LatticeTag tag() const noexcept { return tag_; }

  /// True for the structures whose elements are stored as chain indices
  /// (Boolean and chain(K)).
  bool indexed() const noexcept {
    return tag_ == LatticeTag::boolean || tag_ == LatticeTag::chain;
  }

  /// K for chain(K), 1 for Boolean, 0 for the rational structures.
  ChainIndex top_index() const noexcept { return top_; }

  /// `boolean`, `godel`, `goguen`, `lukasiewicz` or `chain K`.
  std::string name() const;

  friend bool operator==(const LatticeKind&, const LatticeKind&) = default;

 private:
  LatticeKind(LatticeTag tag, ChainIndex top) : tag_(tag), top_(top) {}

  LatticeTag tag_;
  ChainIndex top_;
};

/// A membership degree. Which alternative is live is decided by the lattice
/// of the container holding it; a Value carries no lattice of its own.
class Value {
 public:
  Value() : rep_(ChainIndex{0}) {}

  static Value index(ChainIndex i) { return Value(Rep(i)); }
  static Value rational(Rational q);
  static Value rational(long num, unsigned long den);

  bool is_index() const noexcept { return rep_.index() == 0; }
  ChainIndex as_index() const;
  const Rational& as_rational() const;

  friend bool operator==(const Value& a, const Value& b);

  std::size_t hash() const noexcept;

 private:
  using Rep = std::variant<ChainIndex, Rational>;
  explicit Value(Rep rep) : rep_(std::move(rep)) {}

  Rep rep_;
};

bool is_valid(const LatticeKind& l, const Value& x) noexcept;

/// Throws LatticeMismatch when `x` uses the other carrier, InvalidValue when
/// it is outside [bottom, top].
void require_valid(const LatticeKind& l, const Value& x);

Value bottom(const LatticeKind& l);
Value top(const LatticeKind& l);

/// Lattice order.
bool leq(const LatticeKind& l, const Value& x, const Value& y);
std::strong_ordering compare(const LatticeKind& l, const Value& x,
                             const Value& y);

Value meet(const LatticeKind& l, const Value& x, const Value& y);
Value join(const LatticeKind& l, const Value& x, const Value& y);
Value tmul(const LatticeKind& l, const Value& x, const Value& y);
Value resid(const LatticeKind& l, const Value& x, const Value& y);
Value biresid(const LatticeKind& l, const Value& x, const Value& y);

/// Accepts `0.25`, `1/4`, and for indexed lattices a bare index `0..K`.
/// Boolean additionally accepts any rational literal equal to 0 or 1.
Value parse_value(const LatticeKind& l, std::string_view text);

/// Canonical text: chain index, or the reduced rational as a terminating
/// decimal when one exists, `p/q` otherwise.
std::string format_value(const LatticeKind& l, const Value& x);

std::string format_rational(const Rational& q);

std::size_t hash_rational(const Rational& q) noexcept;

}  // namespace fuzzydet
