#pragma once

// Per-carrier arithmetic used by the container kernels. `IndexOps` works on
// chain indices, `RationalOps` on exact rationals; both expose the same
// member set so container code can be written once as a template.

#include <algorithm>

#include "fuzzydet/lattice.hpp"

namespace fuzzydet::detail {

struct IndexOps {
  using T = ChainIndex;

  ChainIndex top_index;

  T zero() const { return 0; }
  T one() const { return top_index; }
  T meet(T x, T y) const { return std::min(x, y); }
  T join(T x, T y) const { return std::max(x, y); }
  T tmul(T x, T y) const { return std::max(x + y - top_index, 0); }
  T resid(T x, T y) const { return std::min(top_index - x + y, top_index); }
  bool leq(T x, T y) const { return x <= y; }
};

struct RationalOps {
  using T = Rational;

  LatticeTag tag;

  T zero() const { return T(0); }
  T one() const { return T(1); }
  T meet(const T& x, const T& y) const { return x <= y ? x : y; }
  T join(const T& x, const T& y) const { return x >= y ? x : y; }

  T tmul(const T& x, const T& y) const {
    switch (tag) {
      case LatticeTag::goguen:
        return T(x * y);
      case LatticeTag::lukasiewicz: {
        T s = x + y - 1;
        return sgn(s) > 0 ? s : T(0);
      }
      default:
        return meet(x, y);
    }
  }

  T resid(const T& x, const T& y) const {
    if (x <= y) return T(1);
    switch (tag) {
      case LatticeTag::goguen:
        return T(y / x);
      case LatticeTag::lukasiewicz:
        return T(1 - x + y);
      default:
        return y;
    }
  }

  bool leq(const T& x, const T& y) const { return x <= y; }
};

}  // namespace fuzzydet::detail
