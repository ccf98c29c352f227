#pragma once

// Dense fuzzy vectors and matrices over a lattice, with the sup-⊗
// compositions, inclusion degree, and subsemiring closure.

#include <cstddef>
#include <span>
#include <unordered_set>
#include <vector>

#include "fuzzydet/lattice.hpp"

namespace fuzzydet {

/// Fuzzy subset of an n-element set. Entries live in exactly one of two
/// contiguous arrays, chosen by the lattice: chain indices or rationals.
class FuzzyVector {
 public:
  FuzzyVector() : FuzzyVector(LatticeKind::boolean(), 0) {}

  /// All-zero vector.
  FuzzyVector(LatticeKind lattice, std::size_t n);
  FuzzyVector(LatticeKind lattice, const std::vector<Value>& values);

  static FuzzyVector constant(LatticeKind lattice, std::size_t n, const Value& v);

  const LatticeKind& lattice() const noexcept { return lattice_; }
  std::size_t size() const noexcept { return size_; }

  Value at(std::size_t i) const;
  void set(std::size_t i, const Value& v);

  std::span<const ChainIndex> indices() const noexcept { return idx_; }
  std::span<ChainIndex> indices() noexcept { return idx_; }
  std::span<const Rational> rationals() const noexcept { return rat_; }
  std::span<Rational> rationals() noexcept { return rat_; }

  std::vector<Value> values() const;

  friend bool operator==(const FuzzyVector& a, const FuzzyVector& b);

  std::size_t hash() const noexcept;

 private:
  LatticeKind lattice_;
  std::size_t size_ = 0;
  std::vector<ChainIndex> idx_;
  std::vector<Rational> rat_;
};

struct FuzzyVectorHash {
  std::size_t operator()(const FuzzyVector& v) const noexcept { return v.hash(); }
};

/// Row-major fuzzy relation between an n-set and an n'-set.
class FuzzyMatrix {
 public:
  FuzzyMatrix() : FuzzyMatrix(LatticeKind::boolean(), 0, 0) {}
  FuzzyMatrix(LatticeKind lattice, std::size_t rows, std::size_t cols);
  FuzzyMatrix(LatticeKind lattice, const std::vector<std::vector<Value>>& rows);

  /// Crisp equality relation.
  static FuzzyMatrix identity(LatticeKind lattice, std::size_t n);
  static FuzzyMatrix from_rows(const std::vector<FuzzyVector>& rows);

  const LatticeKind& lattice() const noexcept { return lattice_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Value at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Value& v);

  FuzzyVector row(std::size_t r) const;
  FuzzyVector column(std::size_t c) const;
  FuzzyMatrix transpose() const;

  std::span<const ChainIndex> index_row(std::size_t r) const noexcept {
    return std::span<const ChainIndex>(idx_).subspan(r * cols_, cols_);
  }
  std::span<const Rational> rational_row(std::size_t r) const noexcept {
    return std::span<const Rational>(rat_).subspan(r * cols_, cols_);
  }

  friend bool operator==(const FuzzyMatrix& a, const FuzzyMatrix& b);

 private:
  LatticeKind lattice_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<ChainIndex> idx_;
  std::vector<Rational> rat_;
};

/// (a∘b)(i,k) = ⋁_j a(i,j) ⊗ b(j,k).
FuzzyMatrix mat_compose(const FuzzyMatrix& a, const FuzzyMatrix& b);

/// (f∘a)(j) = ⋁_i f(i) ⊗ a(i,j).
FuzzyVector vec_mat(const FuzzyVector& f, const FuzzyMatrix& a);

/// (a∘g)(i) = ⋁_j a(i,j) ⊗ g(j).
FuzzyVector mat_vec(const FuzzyMatrix& a, const FuzzyVector& g);

/// f∘g = ⋁_i f(i) ⊗ g(i).
Value dot(const FuzzyVector& f, const FuzzyVector& g);

/// I(f,g) = ⋀_i f(i) → g(i): the degree to which f is contained in g.
Value inclusion_degree(const FuzzyVector& f, const FuzzyVector& g);

/// Pointwise order.
bool pointwise_leq(const FuzzyVector& f, const FuzzyVector& g);
bool pointwise_leq(const FuzzyMatrix& a, const FuzzyMatrix& b);

/// Finite set of lattice values, iterated in insertion order.
class ValueSet {
 public:
  explicit ValueSet(LatticeKind lattice) : lattice_(lattice) {}

  const LatticeKind& lattice() const noexcept { return lattice_; }

  /// Returns false if `v` was already present.
  bool insert(const Value& v);
  bool contains(const Value& v) const;
  std::size_t size() const noexcept { return items_.size(); }
  const std::vector<Value>& items() const noexcept { return items_; }

  /// Set equality, ignoring insertion order.
  friend bool operator==(const ValueSet& a, const ValueSet& b);

 private:
  struct Hash {
    std::size_t operator()(const Value& v) const noexcept { return v.hash(); }
  };

  LatticeKind lattice_;
  std::vector<Value> items_;
  std::unordered_set<Value, Hash> index_;
};

struct SemiringClosure {
  bool closed = false;
  /// The closure when `closed`; the partial saturation otherwise.
  ValueSet elements;
  std::size_t cap = 0;

  std::size_t k() const noexcept { return elements.size(); }
};

/// Least subset containing seed ∪ {0,1} closed under ∨ and ⊗. Stops with
/// closed = false as soon as more than `cap` values are present, which only
/// suggests (does not prove) an infinite subsemiring.
SemiringClosure semiring_closure(const LatticeKind& lattice, const ValueSet& seed,
                                 std::size_t cap);

}  // namespace fuzzydet
