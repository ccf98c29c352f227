#include "fuzzydet/algebra.hpp"

#include <algorithm>
#include <deque>

#include "fuzzydet/carrier.hpp"
#include "fuzzydet/kernels.hpp"

namespace fuzzydet {

namespace {

void require_same_lattice(const LatticeKind& a, const LatticeKind& b) {
  if (!(a == b))
    throw Error(ErrorCode::LatticeMismatch,
                "lattice mismatch: " + a.name() + " vs " + b.name());
}

void require_dim(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::DimensionMismatch, what);
}

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

// ---------------------------------------------------------------- FuzzyVector

FuzzyVector::FuzzyVector(LatticeKind lattice, std::size_t n)
    : lattice_(lattice), size_(n) {
  if (lattice_.indexed())
    idx_.assign(n, 0);
  else
    rat_.assign(n, Rational(0));
}

FuzzyVector::FuzzyVector(LatticeKind lattice, const std::vector<Value>& values)
    : FuzzyVector(lattice, values.size()) {
  for (std::size_t i = 0; i < values.size(); ++i) set(i, values[i]);
}

FuzzyVector FuzzyVector::constant(LatticeKind lattice, std::size_t n,
                                  const Value& v) {
  require_valid(lattice, v);
  FuzzyVector out(lattice, n);
  if (lattice.indexed())
    std::fill(out.idx_.begin(), out.idx_.end(), v.as_index());
  else
    std::fill(out.rat_.begin(), out.rat_.end(), v.as_rational());
  return out;
}

Value FuzzyVector::at(std::size_t i) const {
  return lattice_.indexed() ? Value::index(idx_.at(i)) : Value::rational(rat_.at(i));
}

void FuzzyVector::set(std::size_t i, const Value& v) {
  require_valid(lattice_, v);
  if (lattice_.indexed())
    idx_.at(i) = v.as_index();
  else
    rat_.at(i) = v.as_rational();
}

std::vector<Value> FuzzyVector::values() const {
  std::vector<Value> out;
  out.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) out.push_back(at(i));
  return out;
}

bool operator==(const FuzzyVector& a, const FuzzyVector& b) {
  return a.lattice_ == b.lattice_ && a.size_ == b.size_ && a.idx_ == b.idx_ &&
         a.rat_ == b.rat_;
}

std::size_t FuzzyVector::hash() const noexcept {
  std::size_t h = size_;
  for (ChainIndex i : idx_) h = mix(h, static_cast<std::size_t>(i));
  for (const Rational& q : rat_) h = mix(h, hash_rational(q));
  return h;
}

// ---------------------------------------------------------------- FuzzyMatrix

FuzzyMatrix::FuzzyMatrix(LatticeKind lattice, std::size_t rows, std::size_t cols)
    : lattice_(lattice), rows_(rows), cols_(cols) {
  if (lattice_.indexed())
    idx_.assign(rows * cols, 0);
  else
    rat_.assign(rows * cols, Rational(0));
}

FuzzyMatrix::FuzzyMatrix(LatticeKind lattice,
                         const std::vector<std::vector<Value>>& rows)
    : FuzzyMatrix(lattice, rows.size(), rows.empty() ? 0 : rows.front().size()) {
  for (std::size_t r = 0; r < rows_; ++r) {
    require_dim(rows[r].size() == cols_, "ragged matrix rows");
    for (std::size_t c = 0; c < cols_; ++c) set(r, c, rows[r][c]);
  }
}

FuzzyMatrix FuzzyMatrix::identity(LatticeKind lattice, std::size_t n) {
  FuzzyMatrix m(lattice, n, n);
  const Value one = top(lattice);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, one);
  return m;
}

FuzzyMatrix FuzzyMatrix::from_rows(const std::vector<FuzzyVector>& rows) {
  if (rows.empty()) return FuzzyMatrix();
  FuzzyMatrix m(rows.front().lattice(), rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require_same_lattice(m.lattice_, rows[r].lattice());
    require_dim(rows[r].size() == m.cols_, "ragged matrix rows");
    std::copy(rows[r].indices().begin(), rows[r].indices().end(),
              m.idx_.begin() + static_cast<std::ptrdiff_t>(r * m.cols_));
    std::copy(rows[r].rationals().begin(), rows[r].rationals().end(),
              m.rat_.begin() + static_cast<std::ptrdiff_t>(r * m.cols_));
  }
  return m;
}

Value FuzzyMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("FuzzyMatrix::at");
  const std::size_t k = r * cols_ + c;
  return lattice_.indexed() ? Value::index(idx_[k]) : Value::rational(rat_[k]);
}

void FuzzyMatrix::set(std::size_t r, std::size_t c, const Value& v) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("FuzzyMatrix::set");
  require_valid(lattice_, v);
  const std::size_t k = r * cols_ + c;
  if (lattice_.indexed())
    idx_[k] = v.as_index();
  else
    rat_[k] = v.as_rational();
}

FuzzyVector FuzzyMatrix::row(std::size_t r) const {
  FuzzyVector out(lattice_, cols_);
  if (lattice_.indexed()) {
    auto src = index_row(r);
    std::copy(src.begin(), src.end(), out.indices().begin());
  } else {
    auto src = rational_row(r);
    std::copy(src.begin(), src.end(), out.rationals().begin());
  }
  return out;
}

FuzzyVector FuzzyMatrix::column(std::size_t c) const {
  FuzzyVector out(lattice_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (lattice_.indexed())
      out.indices()[r] = idx_[r * cols_ + c];
    else
      out.rationals()[r] = rat_[r * cols_ + c];
  }
  return out;
}

FuzzyMatrix FuzzyMatrix::transpose() const {
  FuzzyMatrix t(lattice_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      if (lattice_.indexed())
        t.idx_[c * rows_ + r] = idx_[r * cols_ + c];
      else
        t.rat_[c * rows_ + r] = rat_[r * cols_ + c];
    }
  return t;
}

bool operator==(const FuzzyMatrix& a, const FuzzyMatrix& b) {
  return a.lattice_ == b.lattice_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
         a.idx_ == b.idx_ && a.rat_ == b.rat_;
}

// ---------------------------------------------------------------- compositions

namespace {

Rational rational_dot(const detail::RationalOps& ops, std::span<const Rational> f,
                      std::span<const Rational> g) {
  Rational best(0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (sgn(f[i]) == 0 || sgn(g[i]) == 0) continue;
    Rational t = ops.tmul(f[i], g[i]);
    if (t > best) best = std::move(t);
  }
  return best;
}

}  // namespace

FuzzyVector vec_mat(const FuzzyVector& f, const FuzzyMatrix& a) {
  require_same_lattice(f.lattice(), a.lattice());
  require_dim(f.size() == a.rows(), "vec_mat: vector length != matrix rows");
  const LatticeKind& l = a.lattice();
  FuzzyVector out(l, a.cols());
  if (l.indexed()) {
    const auto& k = kernels::active();
    auto fi = f.indices();
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (fi[i] != 0) k.accumulate_sup_tmul(l.top_index(), fi[i], a.index_row(i), out.indices());
    return out;
  }
  const detail::RationalOps ops{l.tag()};
  auto fr = f.rationals();
  auto acc = out.rationals();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (sgn(fr[i]) == 0) continue;
    auto row = a.rational_row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(row[j]) == 0) continue;
      Rational t = ops.tmul(fr[i], row[j]);
      if (t > acc[j]) acc[j] = std::move(t);
    }
  }
  return out;
}

FuzzyVector mat_vec(const FuzzyMatrix& a, const FuzzyVector& g) {
  require_same_lattice(a.lattice(), g.lattice());
  require_dim(g.size() == a.cols(), "mat_vec: vector length != matrix cols");
  const LatticeKind& l = a.lattice();
  FuzzyVector out(l, a.rows());
  if (l.indexed()) {
    const auto& k = kernels::active();
    for (std::size_t i = 0; i < a.rows(); ++i)
      out.indices()[i] = k.sup_tmul(l.top_index(), a.index_row(i), g.indices());
    return out;
  }
  const detail::RationalOps ops{l.tag()};
  for (std::size_t i = 0; i < a.rows(); ++i)
    out.rationals()[i] = rational_dot(ops, a.rational_row(i), g.rationals());
  return out;
}

FuzzyMatrix mat_compose(const FuzzyMatrix& a, const FuzzyMatrix& b) {
  require_same_lattice(a.lattice(), b.lattice());
  require_dim(a.cols() == b.rows(), "mat_compose: inner dimensions differ");
  std::vector<FuzzyVector> rows;
  rows.reserve(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(vec_mat(a.row(i), b));
  if (rows.empty()) return FuzzyMatrix(a.lattice(), 0, b.cols());
  return FuzzyMatrix::from_rows(rows);
}

Value dot(const FuzzyVector& f, const FuzzyVector& g) {
  require_same_lattice(f.lattice(), g.lattice());
  require_dim(f.size() == g.size(), "dot: vector lengths differ");
  const LatticeKind& l = f.lattice();
  if (l.indexed())
    return Value::index(kernels::active().sup_tmul(l.top_index(), f.indices(), g.indices()));
  return Value::rational(rational_dot(detail::RationalOps{l.tag()}, f.rationals(), g.rationals()));
}

Value inclusion_degree(const FuzzyVector& f, const FuzzyVector& g) {
  require_same_lattice(f.lattice(), g.lattice());
  require_dim(f.size() == g.size(), "inclusion_degree: vector lengths differ");
  const LatticeKind& l = f.lattice();
  if (l.indexed())
    return Value::index(kernels::active().inf_resid(l.top_index(), f.indices(), g.indices()));
  const detail::RationalOps ops{l.tag()};
  Rational worst(1);
  auto fr = f.rationals();
  auto gr = g.rationals();
  for (std::size_t i = 0; i < fr.size(); ++i) {
    if (fr[i] <= gr[i]) continue;
    Rational r = ops.resid(fr[i], gr[i]);
    if (r < worst) worst = std::move(r);
  }
  return Value::rational(std::move(worst));
}

bool pointwise_leq(const FuzzyVector& f, const FuzzyVector& g) {
  require_same_lattice(f.lattice(), g.lattice());
  require_dim(f.size() == g.size(), "pointwise_leq: vector lengths differ");
  if (f.lattice().indexed()) return kernels::active().all_leq(f.indices(), g.indices());
  auto fr = f.rationals();
  auto gr = g.rationals();
  for (std::size_t i = 0; i < fr.size(); ++i)
    if (fr[i] > gr[i]) return false;
  return true;
}

bool pointwise_leq(const FuzzyMatrix& a, const FuzzyMatrix& b) {
  require_same_lattice(a.lattice(), b.lattice());
  require_dim(a.rows() == b.rows() && a.cols() == b.cols(),
              "pointwise_leq: matrix shapes differ");
  for (std::size_t r = 0; r < a.rows(); ++r)
    if (!pointwise_leq(a.row(r), b.row(r))) return false;
  return true;
}

// ---------------------------------------------------------------- ValueSet

bool ValueSet::insert(const Value& v) {
  require_valid(lattice_, v);
  if (!index_.insert(v).second) return false;
  items_.push_back(v);
  return true;
}

bool ValueSet::contains(const Value& v) const { return index_.count(v) != 0; }

bool operator==(const ValueSet& a, const ValueSet& b) {
  if (!(a.lattice_ == b.lattice_) || a.size() != b.size()) return false;
  for (const Value& v : a.items_)
    if (!b.contains(v)) return false;
  return true;
}

SemiringClosure semiring_closure(const LatticeKind& lattice, const ValueSet& seed,
                                 std::size_t cap) {
  require_same_lattice(lattice, seed.lattice());
  SemiringClosure out{false, ValueSet(lattice), cap};
  ValueSet& set = out.elements;
  std::deque<std::size_t> work;
  auto add = [&](const Value& v) {
    if (set.insert(v)) work.push_back(set.size() - 1);
    return set.size() <= cap;
  };
  if (!add(bottom(lattice)) || !add(top(lattice))) return out;
  for (const Value& v : seed.items())
    if (!add(v)) return out;

  // Each newly added value is combined with every member present when it is
  // taken off the worklist; members added later combine with it in turn.
  while (!work.empty()) {
    const std::size_t pos = work.front();
    work.pop_front();
    const Value v = set.items()[pos];
    const std::size_t members = set.size();
    for (std::size_t j = 0; j < members; ++j) {
      const Value w = set.items()[j];
      if (!add(join(lattice, v, w)) || !add(tmul(lattice, v, w))) return out;
    }
  }
  out.closed = true;
  return out;
}

}  // namespace fuzzydet
