#include "fuzzydet/lattice.hpp"

#include <charconv>
#include <functional>

#include "fuzzydet/carrier.hpp"

namespace fuzzydet {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::LatticeMismatch: return "LatticeMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::InvalidCap: return "InvalidCap";
    case ErrorCode::PsiNotReflexive: return "PsiNotReflexive";
    case ErrorCode::PsiNotLeftInvariant: return "PsiNotLeftInvariant";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

ParseError::ParseError(std::size_t line, std::size_t column,
                       const std::string& message)
    : Error(ErrorCode::Parse,
            "line " + std::to_string(line) +
                (column ? ", column " + std::to_string(column) : "") + ": " +
                message),
      line_(line),
      column_(column),
      message_(message) {}

LatticeKind LatticeKind::chain(ChainIndex top) {
  if (top < 1)
    throw Error(ErrorCode::InvalidValue, "chain lattice needs K >= 1");
  return LatticeKind(LatticeTag::chain, top);
}

std::string LatticeKind::name() const {
  switch (tag_) {
    case LatticeTag::boolean: return "boolean";
    case LatticeTag::godel: return "godel";
    case LatticeTag::goguen: return "goguen";
    case LatticeTag::lukasiewicz: return "lukasiewicz";
    case LatticeTag::chain: return "chain " + std::to_string(top_);
  }
  return "?";
}

Value Value::rational(Rational q) {
  q.canonicalize();
  return Value(Rep(std::move(q)));
}

Value Value::rational(long num, unsigned long den) {
  return rational(Rational(num, den));
}

ChainIndex Value::as_index() const {
  if (auto p = std::get_if<ChainIndex>(&rep_)) return *p;
  throw Error(ErrorCode::LatticeMismatch, "rational value used as chain index");
}

const Rational& Value::as_rational() const {
  if (auto p = std::get_if<Rational>(&rep_)) return *p;
  throw Error(ErrorCode::LatticeMismatch, "chain index used as rational value");
}

bool operator==(const Value& a, const Value& b) {
  if (a.rep_.index() != b.rep_.index()) return false;
  if (a.is_index()) return std::get<ChainIndex>(a.rep_) == std::get<ChainIndex>(b.rep_);
  return std::get<Rational>(a.rep_) == std::get<Rational>(b.rep_);
}

std::size_t hash_rational(const Rational& q) noexcept {
  auto mix = [](std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  };
  std::size_t h = static_cast<std::size_t>(mpz_sgn(q.get_num_mpz_t()));
  for (const mpz_srcptr z : {q.get_num_mpz_t(), q.get_den_mpz_t()}) {
    const std::size_t limbs = mpz_size(z);
    h = mix(h, limbs);
    for (std::size_t i = 0; i < limbs; ++i)
      h = mix(h, static_cast<std::size_t>(mpz_getlimbn(z, static_cast<mp_size_t>(i))));
  }
  return h;
}

std::size_t Value::hash() const noexcept {
  if (is_index()) return std::hash<ChainIndex>{}(std::get<ChainIndex>(rep_));
  return hash_rational(std::get<Rational>(rep_));
}

bool is_valid(const LatticeKind& l, const Value& x) noexcept {
  if (l.indexed()) {
    if (!x.is_index()) return false;
    const ChainIndex i = x.as_index();
    return i >= 0 && i <= l.top_index();
  }
  if (x.is_index()) return false;
  const Rational& q = x.as_rational();
  return sgn(q) >= 0 && q <= 1;
}

void require_valid(const LatticeKind& l, const Value& x) {
  if (l.indexed() != x.is_index())
    throw Error(ErrorCode::LatticeMismatch,
                "value does not belong to lattice " + l.name());
  if (!is_valid(l, x))
    throw Error(ErrorCode::InvalidValue,
                "value out of range for lattice " + l.name());
}

Value bottom(const LatticeKind& l) {
  return l.indexed() ? Value::index(0) : Value::rational(Rational(0));
}

Value top(const LatticeKind& l) {
  return l.indexed() ? Value::index(l.top_index()) : Value::rational(Rational(1));
}

namespace {

template <typename F>
Value binary(const LatticeKind& l, const Value& x, const Value& y, F&& f) {
  require_valid(l, x);
  require_valid(l, y);
  if (l.indexed())
    return Value::index(f(detail::IndexOps{l.top_index()}, x.as_index(), y.as_index()));
  return Value::rational(f(detail::RationalOps{l.tag()}, x.as_rational(), y.as_rational()));
}

}  // namespace

std::strong_ordering compare(const LatticeKind& l, const Value& x,
                             const Value& y) {
  require_valid(l, x);
  require_valid(l, y);
  if (l.indexed()) return x.as_index() <=> y.as_index();
  const int c = cmp(x.as_rational(), y.as_rational());
  return c < 0 ? std::strong_ordering::less
               : c > 0 ? std::strong_ordering::greater
                       : std::strong_ordering::equal;
}

bool leq(const LatticeKind& l, const Value& x, const Value& y) {
  return compare(l, x, y) != std::strong_ordering::greater;
}

Value meet(const LatticeKind& l, const Value& x, const Value& y) {
  return binary(l, x, y, [](const auto& ops, const auto& a, const auto& b) { return ops.meet(a, b); });
}

Value join(const LatticeKind& l, const Value& x, const Value& y) {
  return binary(l, x, y, [](const auto& ops, const auto& a, const auto& b) { return ops.join(a, b); });
}

Value tmul(const LatticeKind& l, const Value& x, const Value& y) {
  return binary(l, x, y, [](const auto& ops, const auto& a, const auto& b) { return ops.tmul(a, b); });
}

Value resid(const LatticeKind& l, const Value& x, const Value& y) {
  return binary(l, x, y, [](const auto& ops, const auto& a, const auto& b) { return ops.resid(a, b); });
}

Value biresid(const LatticeKind& l, const Value& x, const Value& y) {
  return meet(l, resid(l, x, y), resid(l, y, x));
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

Value invalid(const LatticeKind& l, std::string_view text, const char* why) {
  throw Error(ErrorCode::InvalidValue, "invalid value '" + std::string(text) +
                                           "' for lattice " + l.name() + ": " + why);
}

// Decimal `d+`, `d+.d+`, `.d+` or rational `d+/d+`; no sign.
bool parse_rational(std::string_view text, Rational& out) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return false;
    mpz_class n(std::string(num), 10), d(std::string(den), 10);
    if (d == 0) return false;
    out = Rational(n, d);
    out.canonicalize();
    return true;
  }
  const auto dot = text.find('.');
  std::string_view whole = text.substr(0, dot);
  std::string_view frac =
      dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (dot != std::string_view::npos && !all_digits(frac)) return false;
  if (!whole.empty() && !all_digits(whole)) return false;
  if (whole.empty() && frac.empty()) return false;
  std::string digits = std::string(whole) + std::string(frac);
  mpz_class n(digits.empty() ? std::string("0") : digits, 10);
  mpz_class d;
  mpz_ui_pow_ui(d.get_mpz_t(), 10, frac.size());
  out = Rational(n, d);
  out.canonicalize();
  return true;
}

}  // namespace

Value parse_value(const LatticeKind& l, std::string_view text) {
  if (l.tag() == LatticeTag::chain) {
    if (!all_digits(text)) return invalid(l, text, "expected a chain index");
    ChainIndex i = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), i);
    if (res.ec != std::errc() || i > l.top_index())
      return invalid(l, text, "index out of range");
    return Value::index(i);
  }
  Rational q;
  if (!parse_rational(text, q)) return invalid(l, text, "malformed number");
  if (q > 1) return invalid(l, text, "value exceeds 1");
  if (l.tag() == LatticeTag::boolean) {
    if (q == 0) return Value::index(0);
    if (q == 1) return Value::index(1);
    return invalid(l, text, "Boolean values are 0 or 1");
  }
  return Value::rational(std::move(q));
}

std::string format_rational(const Rational& q) {
  const mpz_class& den = q.get_den();
  // Terminating decimal iff den = 2^a 5^b; scale by 10^max(a,b).
  mpz_class rest = den;
  unsigned long twos = mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), mpz_class(2).get_mpz_t());
  unsigned long fives = mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), mpz_class(5).get_mpz_t());
  if (rest != 1) return q.get_num().get_str() + "/" + den.get_str();
  const unsigned long places = std::max(twos, fives);
  if (places == 0) return q.get_num().get_str();
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
  mpz_class scaled = q.get_num() * scale / den;
  std::string digits = scaled.get_str();
  if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
  digits.insert(digits.size() - places, ".");
  return digits;
}

std::string format_value(const LatticeKind& l, const Value& x) {
  require_valid(l, x);
  if (l.indexed()) return std::to_string(x.as_index());
  return format_rational(x.as_rational());
}

}  // namespace fuzzydet
