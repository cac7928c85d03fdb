#ifndef FFZETA_LAURENT_HPP
#define FFZETA_LAURENT_HPP

// Truncated Laurent series in a uniformizer u over F_{q^ell}, with
// u^(-scale) = -θ. Precision is absolute: a series with precision P is
// known modulo u^P. kExact marks a series known exactly (finitely many terms).

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ffzeta/field.hpp"
#include "ffzeta/poly.hpp"

namespace ffzeta {

inline constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max() / 4;

namespace detail {

inline std::int64_t sat_add(std::int64_t a, std::int64_t b) {
  if (a >= kExact || b >= kExact) return kExact;
  const std::int64_t r = a + b;
  return r >= kExact ? kExact : r;
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t d = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
  return d;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

using Terms = std::vector<std::pair<std::int64_t, Elem>>;

// Product of two sorted term lists keeping exponents below `limit`.
inline Terms mul_terms(const Field& F, const Terms& a, const Terms& b, std::int64_t limit) {
  Terms out;
  if (a.empty() || b.empty()) return out;
  const std::int64_t lo = a.front().first + b.front().first;
  std::int64_t hi = a.back().first + b.back().first + 1;
  if (limit < hi) hi = limit;
  if (hi <= lo) return out;
  const std::int64_t range = hi - lo;
  const double pairs = static_cast<double>(a.size()) * static_cast<double>(b.size());
  if (range <= (1 << 24) && static_cast<double>(range) <= 8.0 * pairs + 4096.0) {
    std::vector<Elem> acc(static_cast<std::size_t>(range), 0);
    for (const auto& [ea, ca] : a) {
      const std::int64_t room = hi - ea;
      for (const auto& [eb, cb] : b) {
        if (eb >= room) break;
        auto& slot = acc[static_cast<std::size_t>(ea + eb - lo)];
        slot = F.add(slot, F.mul(ca, cb));
      }
    }
    for (std::int64_t i = 0; i < range; ++i)
      if (acc[i] != 0) out.emplace_back(lo + i, acc[i]);
    return out;
  }
  std::unordered_map<std::int64_t, Elem> acc;
  for (const auto& [ea, ca] : a) {
    const std::int64_t room = hi - ea;
    for (const auto& [eb, cb] : b) {
      if (eb >= room) break;
      auto& slot = acc[ea + eb];
      slot = F.add(slot, F.mul(ca, cb));
    }
  }
  for (const auto& [e, c] : acc)
    if (c != 0) out.emplace_back(e, c);
  std::sort(out.begin(), out.end());
  return out;
}

inline Terms add_terms(const Field& F, const Terms& a, const Terms& b, std::int64_t limit) {
  Terms out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    std::pair<std::int64_t, Elem> t;
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      t = a[i++];
    } else if (i == a.size() || b[j].first < a[i].first) {
      t = b[j++];
    } else {
      t = {a[i].first, F.add(a[i].second, b[j].second)};
      ++i;
      ++j;
    }
    if (t.first >= limit) break;
    if (t.second != 0) out.push_back(t);
  }
  return out;
}

}  // namespace detail

class Laurent {
 public:
  using Terms = detail::Terms;

  Laurent() = default;
  /// Zero known to precision `prec` (kExact: exactly zero).
  Laurent(FieldPtr f, std::int64_t scale, std::int64_t prec = kExact) : f_(std::move(f)), scale_(scale), prec_(clamp(prec)) {
    if (scale_ < 1) throw std::invalid_argument("Laurent scale must be positive");
  }

  static Laurent from_terms(FieldPtr f, std::int64_t scale, std::int64_t prec, Terms terms) {
    Laurent r(std::move(f), scale, prec);
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [e, c] : terms) {
      if (e >= r.prec_) break;
      if (!r.t_.empty() && r.t_.back().first == e) r.t_.back().second = r.f_->add(r.t_.back().second, c);
      else r.t_.emplace_back(e, c);
    }
    std::erase_if(r.t_, [](const auto& t) { return t.second == 0; });
    return r;
  }
  static Laurent monomial(FieldPtr f, std::int64_t scale, std::int64_t exp, Elem c = 1, std::int64_t prec = kExact) {
    return from_terms(std::move(f), scale, prec, {{exp, c}});
  }
  static Laurent one(FieldPtr f, std::int64_t scale, std::int64_t prec = kExact) { return monomial(std::move(f), scale, 0, 1, prec); }
  static Laurent constant(FieldPtr f, std::int64_t scale, Elem c, std::int64_t prec = kExact) {
    return monomial(std::move(f), scale, 0, c, prec);
  }
  /// Exact image of θ^k: (-1)^k u^(-k·scale).
  static Laurent theta_pow(FieldPtr f, std::int64_t scale, std::int64_t k) {
    const Elem sign = (k % 2 == 0) ? 1 : f->neg(1);
    return monomial(f, scale, -k * scale, sign);
  }

  const FieldPtr& field() const { return f_; }
  const Field& F() const { return *f_; }
  std::int64_t scale() const { return scale_; }
  std::int64_t prec() const { return prec_; }
  bool is_exact() const { return prec_ >= kExact; }
  /// Lowest nonzero exponent, or prec when indistinguishable from zero.
  std::int64_t val() const { return t_.empty() ? prec_ : t_.front().first; }
  bool is_zero() const { return t_.empty(); }
  Elem lead() const { return t_.empty() ? 0 : t_.front().second; }
  const Terms& terms() const { return t_; }
  Elem coeff(std::int64_t e) const {
    auto it = std::lower_bound(t_.begin(), t_.end(), e, [](const auto& t, std::int64_t x) { return t.first < x; });
    return (it != t_.end() && it->first == e) ? it->second : 0;
  }
  /// Largest stored exponent (meaningful only when nonzero).
  std::int64_t max_exponent() const { return t_.empty() ? prec_ : t_.back().first; }

  Laurent truncate(std::int64_t p) const {
    if (p >= prec_) return *this;
    Laurent r(f_, scale_, p);
    for (const auto& t : t_) {
      if (t.first >= p) break;
      r.t_.push_back(t);
    }
    return r;
  }

  Laurent operator+(const Laurent& o) const {
    check(o);
    Laurent r(f_, scale_, std::min(prec_, o.prec_));
    r.t_ = detail::add_terms(*f_, t_, o.t_, r.prec_);
    return r;
  }
  Laurent operator-() const {
    Laurent r(*this);
    for (auto& t : r.t_) t.second = f_->neg(t.second);
    return r;
  }
  Laurent operator-(const Laurent& o) const { return *this + (-o); }
  Laurent operator*(const Laurent& o) const {
    check(o);
    const std::int64_t p = std::min(detail::sat_add(prec_, o.val()), detail::sat_add(o.prec_, val()));
    Laurent r(f_, scale_, p);
    r.t_ = detail::mul_terms(*f_, t_, o.t_, r.prec_);
    return r;
  }
  Laurent scaled(Elem c) const {
    if (c == 0) return Laurent(f_, scale_);
    Laurent r(*this);
    for (auto& t : r.t_) t.second = f_->mul(t.second, c);
    return r;
  }
  /// Multiplication by c·u^k (exact monomial).
  Laurent shifted(std::int64_t k, Elem c = 1) const {
    if (c == 0) return Laurent(f_, scale_);
    Laurent r(f_, scale_, detail::sat_add(prec_, k));
    r.t_ = t_;
    for (auto& t : r.t_) {
      t.first += k;
      t.second = f_->mul(t.second, c);
    }
    return r;
  }
  Laurent& operator+=(const Laurent& o) { return *this = *this + o; }
  Laurent& operator-=(const Laurent& o) { return *this = *this - o; }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

  /// Multiplicative inverse. The result has precision prec - 2·val; exact
  /// non-monomial inputs need `cap`, the absolute precision wanted.
  Laurent inverse(std::int64_t cap = kExact) const {
    if (t_.empty()) throw std::domain_error("inverting a series that is zero at its precision");
    const std::int64_t v = val();
    const Elem c = lead();
    std::int64_t target = is_exact() ? kExact : prec_ - 2 * v;
    if (t_.size() == 1 && is_exact()) return monomial(f_, scale_, -v, f_->inv(c), cap);
    target = std::min(target, cap);
    if (target >= kExact) throw std::domain_error("exact inverse of a non-monomial series needs a precision cap");
    const std::int64_t rel = target + v;  // relative precision of the unit's inverse
    Laurent unit = shifted(-v, f_->inv(c));
    if (rel <= 0) return Laurent(f_, scale_, target);
    Terms u = unit.truncate(rel).t_;
    Terms g{{0, 1}};
    std::int64_t m = rel;
    if (u.size() > 1) m = std::min(rel, u[1].first);
    while (m < rel) {
      const std::int64_t m2 = std::min(2 * m, rel);
      Terms ug = detail::mul_terms(*f_, u, g, m2);
      // e = 1 - u·g
      Terms e;
      for (const auto& [ex, cx] : ug) {
        if (ex == 0) {
          const Elem d = f_->sub(1, cx);
          if (d != 0) e.emplace_back(0, d);
        } else {
          e.emplace_back(ex, f_->neg(cx));
        }
      }
      if (ug.empty() || ug.front().first != 0) e.insert(e.begin(), {0, 1});
      Terms ge = detail::mul_terms(*f_, g, e, m2);
      g = detail::add_terms(*f_, g, ge, m2);
      m = m2;
    }
    Laurent inv_unit = from_terms(f_, scale_, rel, std::move(g));
    return inv_unit.shifted(-v, f_->inv(c));
  }

  Laurent pow(std::int64_t n, std::int64_t cap = kExact) const {
    if (n < 0) return inverse(cap).pow(-n);
    Laurent result = one(f_, scale_), base = *this;
    while (n > 0) {
      if (n & 1) result *= base;
      n >>= 1;
      if (n) base *= base;
    }
    return result;
  }

  /// Equality of the two series modulo u^p; both must be known to at least p.
  bool equal_at(const Laurent& o, std::int64_t p) const {
    if (prec_ < p || o.prec_ < p) return false;
    return (truncate(p) - o.truncate(p)).is_zero();
  }
  /// Zero at precision p (requires prec >= p).
  bool zero_at(std::int64_t p) const { return prec_ >= p && val() >= p; }

  /// x -> x^(q^-j). j <= 0 is the total forward map (coefficients c -> c^(q^|j|),
  /// exponents and precision times q^|j|). j > 0 requires every stored
  /// exponent to be divisible by q^j.
  Laurent twist(int j) const {
    if (j == 0) return *this;
    const int k = j < 0 ? -j : j;
    std::int64_t Q = 1;
    for (int i = 0; i < k; ++i) Q *= f_->q();
    if (j < 0) {
      if (!is_exact() && (prec_ > kExact / Q || prec_ < -kExact / Q)) throw std::overflow_error("twist precision overflow");
      Laurent r(f_, scale_, is_exact() ? kExact : prec_ * Q);
      r.t_.reserve(t_.size());
      for (const auto& [e, c] : t_) r.t_.emplace_back(e * Q, f_->frobenius(c, k));
      return r;
    }
    Laurent r(f_, scale_, is_exact() ? kExact : detail::ceil_div(prec_, Q));
    for (const auto& [e, c] : t_) {
      if (e % Q != 0) throw std::domain_error("inverse twist: exponent " + std::to_string(e) + " not divisible by q^" + std::to_string(k));
      if (e / Q < r.prec_) r.t_.emplace_back(e / Q, f_->frobenius(c, -k));
    }
    return r;
  }

  /// Re-expresses the series at scale·m via u_old = u_new^m.
  Laurent rescale(std::int64_t m) const {
    if (m < 1) throw std::invalid_argument("rescale factor must be positive");
    Laurent r(f_, scale_ * m, is_exact() ? kExact : prec_ * m);
    r.t_ = t_;
    for (auto& t : r.t_) t.first *= m;
    return r;
  }

  /// Same series with coefficients mapped into another field through `embed`.
  template <class Map>
  Laurent map_coeffs(FieldPtr target, Map&& embed) const {
    Laurent r(std::move(target), scale_, prec_);
    for (const auto& [e, c] : t_) r.t_.emplace_back(e, embed(c));
    return r;
  }

 private:
  static std::int64_t clamp(std::int64_t p) { return p >= kExact ? kExact : p; }
  void check(const Laurent& o) const {
    if (scale_ != o.scale_) throw std::invalid_argument("Laurent scale mismatch: " + std::to_string(scale_) + " vs " + std::to_string(o.scale_));
    if (!(*f_ == *o.f_)) throw std::invalid_argument("Laurent field mismatch");
  }

  FieldPtr f_;
  std::int64_t scale_ = 1;
  std::int64_t prec_ = kExact;
  Terms t_;
};

/// Exact image of a polynomial in θ.
inline Laurent embed_poly(const Poly& a, std::int64_t scale) {
  Laurent::Terms terms;
  const Field& F = *a.field();
  for (std::int64_t i = 0; i <= a.degree(); ++i) {
    if (a.coeff(i) == 0) continue;
    const Elem c = (i % 2 == 0) ? a.coeff(i) : F.neg(a.coeff(i));
    terms.emplace_back(-i * scale, c);
  }
  return Laurent::from_terms(a.field(), scale, kExact, std::move(terms));
}

/// Expansion of r at 1/θ, re-expressed in u, to absolute precision prec
/// (exact when the denominator is a monomial).
inline Laurent embed_rat(const RatFunc& r, std::int64_t scale, std::int64_t prec) {
  if (r.is_zero()) return Laurent(r.field(), scale);
  Laurent num = embed_poly(r.num(), scale);
  Laurent den = embed_poly(r.den(), scale);
  if (den.terms().size() == 1) return num * den.inverse();
  const std::int64_t cap = prec - num.val();
  return (num * den.inverse(cap)).truncate(prec);
}

struct UnitDecomposition {
  Elem lead;
  std::int64_t val;
  Laurent unit;
};

/// f = lead · u^val · unit with unit = 1 + (positive powers of u).
inline UnitDecomposition one_unit_decompose(const Laurent& f) {
  if (f.is_zero()) throw std::domain_error("one-unit decomposition of a series that is zero at its precision");
  const Elem c = f.lead();
  const std::int64_t v = f.val();
  return {c, v, f.shifted(-v, f.F().inv(c))};
}

inline Laurent recombine(const UnitDecomposition& d) { return d.unit.shifted(d.val, d.lead); }

// ---------------------------------------------------------------------------
// Text form "c*u^e + ... + O(u^P)". Exact series omit the O-term; the exact
// zero prints as "0".

inline std::string format_laurent(const Laurent& f) {
  const Field& F = f.F();
  std::string out;
  for (const auto& [e, c] : f.terms()) {
    if (!out.empty()) out += " + ";
    std::string cs = format_elem(F, c);
    if (elem_needs_parens(F, c)) cs = "(" + cs + ")";
    out += cs + "*u^" + std::to_string(e);
  }
  if (!f.is_exact()) {
    if (!out.empty()) out += " + ";
    out += "O(u^" + std::to_string(f.prec()) + ")";
  }
  return out.empty() ? "0" : out;
}

inline Laurent parse_laurent(const FieldPtr& f, std::int64_t scale, std::string_view text) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == '+' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
      continue;
    }
    if (ch != ' ') cur += ch;
  }
  parts.push_back(cur);
  std::int64_t prec = kExact;
  Laurent::Terms terms;
  for (const auto& part : parts) {
    if (part.empty()) throw std::invalid_argument("malformed series: " + std::string(text));
    if (part == "0" && parts.size() == 1) break;
    if (part.rfind("O(u^", 0) == 0) {
      if (part.back() != ')') throw std::invalid_argument("malformed O-term: " + part);
      prec = std::stoll(part.substr(4, part.size() - 5));
      continue;
    }
    const auto star = part.rfind("*u^");
    if (star == std::string::npos) throw std::invalid_argument("malformed series term: " + part);
    terms.emplace_back(std::stoll(part.substr(star + 3)), parse_elem(*f, part.substr(0, star)));
  }
  return Laurent::from_terms(f, scale, prec, std::move(terms));
}

}  // namespace ffzeta

#endif  // FFZETA_LAURENT_HPP
