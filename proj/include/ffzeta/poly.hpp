#ifndef FFZETA_POLY_HPP
#define FFZETA_POLY_HPP

// A = F_q[θ] and k = F_q(θ) over a carried field F_{q^ell}.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ffzeta/field.hpp"

namespace ffzeta {

/// Polynomial in θ with coefficients in a carried field, low degree first.
/// Canonical: no trailing zero coefficients; the zero polynomial is empty.
class Poly {
 public:
  Poly() = default;
  explicit Poly(FieldPtr f) : f_(std::move(f)) {}
  Poly(FieldPtr f, std::vector<Elem> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) { trim(); }

  static Poly constant(FieldPtr f, Elem c) { return Poly(std::move(f), std::vector<Elem>{c}); }
  static Poly one(FieldPtr f) { return constant(std::move(f), 1); }
  /// c·θ^k
  static Poly monomial(FieldPtr f, std::int64_t k, Elem c = 1) {
    std::vector<Elem> v(static_cast<std::size_t>(k) + 1, 0);
    v[static_cast<std::size_t>(k)] = c;
    return Poly(std::move(f), std::move(v));
  }
  static Poly theta(FieldPtr f) { return monomial(std::move(f), 1); }

  const FieldPtr& field() const { return f_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  std::int64_t degree() const { return static_cast<std::int64_t>(c_.size()) - 1; }
  Elem coeff(std::int64_t i) const { return i >= 0 && i < static_cast<std::int64_t>(c_.size()) ? c_[i] : 0; }
  Elem lead() const { return c_.empty() ? 0 : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  bool operator==(const Poly& o) const { return c_ == o.c_; }

  Poly operator+(const Poly& o) const {
    std::vector<Elem> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = fld(o).add(coeff(i), o.coeff(i));
    return Poly(pick(o), std::move(r));
  }
  Poly operator-() const {
    std::vector<Elem> r(c_);
    for (auto& x : r) x = f_->neg(x);
    return Poly(f_, std::move(r));
  }
  Poly operator-(const Poly& o) const { return *this + (-o); }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly(pick(o));
    const Field& F = fld(o);
    std::vector<Elem> r(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j)
        if (o.c_[j] != 0) r[i + j] = F.add(r[i + j], F.mul(c_[i], o.c_[j]));
    }
    return Poly(pick(o), std::move(r));
  }
  Poly scale(Elem a) const {
    std::vector<Elem> r(c_);
    for (auto& x : r) x = f_->mul(x, a);
    return Poly(f_, std::move(r));
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  /// Quotient and remainder; throws on division by zero.
  std::pair<Poly, Poly> divrem(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    const Field& F = fld(d);
    std::vector<Elem> r(c_);
    const std::int64_t dd = d.degree();
    if (degree() < dd) return {Poly(pick(d)), *this};
    std::vector<Elem> qv(static_cast<std::size_t>(degree() - dd + 1), 0);
    const Elem inv_lead = F.inv(d.lead());
    for (std::int64_t i = degree(); i >= dd; --i) {
      const Elem c = r[i];
      if (c == 0) continue;
      const Elem f = F.mul(c, inv_lead);
      qv[i - dd] = f;
      for (std::int64_t j = 0; j <= dd; ++j) r[i - dd + j] = F.sub(r[i - dd + j], F.mul(f, d.c_[j]));
    }
    return {Poly(pick(d), std::move(qv)), Poly(pick(d), std::move(r))};
  }
  Poly operator/(const Poly& d) const { return divrem(d).first; }
  Poly operator%(const Poly& d) const { return divrem(d).second; }

  Poly pow(std::int64_t n) const {
    if (n < 0) throw std::domain_error("negative polynomial power");
    Poly result = one(f_), base = *this;
    while (n > 0) {
      if (n & 1) result *= base;
      n >>= 1;
      if (n) base *= base;
    }
    return result;
  }

  Elem eval(Elem x) const {
    Elem acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = f_->add(f_->mul(acc, x), c_[i]);
    return acc;
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return scale(f_->inv(lead()));
  }

  /// Applies x -> x^(q^j) to every coefficient.
  Poly frobenius_coeffs(std::int64_t j) const {
    std::vector<Elem> r(c_);
    for (auto& x : r) x = f_->frobenius(x, j);
    return Poly(f_, std::move(r));
  }

  /// Forward twist f -> f^(q^j) (j >= 0): θ -> θ^(q^j), coefficients raised to q^j.
  Poly twist_forward(int j) const {
    if (j < 0) throw std::invalid_argument("twist_forward needs j >= 0");
    if (is_zero() || j == 0) return *this;
    std::int64_t qj = 1;
    for (int i = 0; i < j; ++i) qj *= f_->q();
    std::vector<Elem> r(static_cast<std::size_t>(degree() * qj + 1), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) r[i * qj] = f_->frobenius(c_[i], j);
    return Poly(f_, std::move(r));
  }

  bool has_constant_coeffs() const {
    for (auto x : c_)
      if (!f_->in_constant_field(x)) return false;
    return true;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  const Field& fld(const Poly& o) const { return f_ ? *f_ : *o.f_; }
  FieldPtr pick(const Poly& o) const { return f_ ? f_ : o.f_; }

  FieldPtr f_;
  std::vector<Elem> c_;
};

inline Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Element of k = F_q(θ): gcd(num, den) = 1, den monic.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(Poly num) : num_(std::move(num)), den_(Poly::one(num_.field())) {}
  RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  static RatFunc zero(FieldPtr f) { return RatFunc(Poly(std::move(f))); }
  static RatFunc one(FieldPtr f) { return RatFunc(Poly::one(std::move(f))); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const FieldPtr& field() const { return num_.field(); }
  bool is_zero() const { return num_.is_zero(); }
  /// deg num - deg den; undefined (throws) for zero.
  std::int64_t degree() const {
    if (is_zero()) throw std::domain_error("degree of zero rational function");
    return num_.degree() - den_.degree();
  }

  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

  RatFunc operator+(const RatFunc& o) const { return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_); }
  RatFunc operator-() const { return RatFunc(-num_, den_); }
  RatFunc operator-(const RatFunc& o) const { return *this + (-o); }
  RatFunc operator*(const RatFunc& o) const { return RatFunc(num_ * o.num_, den_ * o.den_); }
  RatFunc inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero rational function");
    return RatFunc(den_, num_);
  }
  RatFunc operator/(const RatFunc& o) const { return *this * o.inverse(); }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

  RatFunc pow(std::int64_t n) const {
    if (n < 0) return inverse().pow(-n);
    return RatFunc(num_.pow(n), den_.pow(n));
  }
  RatFunc twist_forward(int j) const { return RatFunc(num_.twist_forward(j), den_.twist_forward(j)); }

 private:
  void normalize() {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = Poly::one(den_.field());
      return;
    }
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
    const Elem inv_lead = den_.field()->inv(den_.lead());
    num_ = num_.scale(inv_lead);
    den_ = den_.scale(inv_lead);
  }

  Poly num_, den_;
};

/// Enumerates the q^d monic polynomials of degree d with F_q coefficients.
/// Order: lower coefficients read as a base-q number, constant term least
/// significant, digits in the code order of Field::constants().
class MonicStream {
 public:
  MonicStream(FieldPtr f, int d) : f_(std::move(f)), d_(d), idx_(d, 0) {}

  bool next(Poly& out) {
    if (done_) return false;
    std::vector<Elem> c(d_ + 1);
    const auto& consts = f_->constants();
    for (int i = 0; i < d_; ++i) c[i] = consts[idx_[i]];
    c[d_] = 1;
    out = Poly(f_, std::move(c));
    int i = 0;
    while (i < d_ && ++idx_[i] == static_cast<int>(consts.size())) idx_[i++] = 0;
    if (i == d_) done_ = true;
    return true;
  }

 private:
  FieldPtr f_;
  int d_;
  std::vector<int> idx_;
  bool done_ = false;
};

inline std::vector<Poly> monics_of_degree(const FieldPtr& f, int d) {
  std::vector<Poly> out;
  MonicStream s(f, d);
  Poly p;
  while (s.next(p)) out.push_back(p);
  return out;
}

// ---------------------------------------------------------------------------
// Text form: "θ^2+2*θ+1"; coefficients outside F_p are parenthesized,
// e.g. "(g+1)*θ". Parsing also accepts "theta" for θ.

inline std::string format_poly(const Poly& a) {
  if (a.is_zero()) return "0";
  const Field& F = *a.field();
  std::string out;
  for (std::int64_t i = a.degree(); i >= 0; --i) {
    const Elem c = a.coeff(i);
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    std::string cs = format_elem(F, c);
    if (elem_needs_parens(F, c)) cs = "(" + cs + ")";
    if (i == 0) {
      out += cs;
      continue;
    }
    if (c != 1) out += cs + "*";
    out += "θ";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

inline std::string format_ratfunc(const RatFunc& r) {
  if (r.den().degree() == 0) return format_poly(r.num());
  return "(" + format_poly(r.num()) + ")/(" + format_poly(r.den()) + ")";
}

namespace detail {

inline std::string normalize_theta(std::string_view s) {
  std::string t;
  for (std::size_t i = 0; i < s.size();) {
    if (s[i] == ' ') {
      ++i;
      continue;
    }
    if (s.substr(i, 2) == "θ") {
      t += 'T';
      i += 2;
    } else if (s.substr(i, 5) == "theta") {
      t += 'T';
      i += 5;
    } else if (s.substr(i, 3) == "\xE2\x88\x92") {  // U+2212 minus sign
      t += '-';
      i += 3;
    } else {
      t += s[i++];
    }
  }
  return t;
}

}  // namespace detail

inline Poly parse_poly(const FieldPtr& f, std::string_view text) {
  const std::string t = detail::normalize_theta(text);
  if (t.empty()) throw std::invalid_argument("empty polynomial");
  Poly result(f);
  std::size_t pos = 0;
  auto read_int = [&](std::size_t& i) {
    const std::size_t st = i;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
    if (st == i) throw std::invalid_argument("malformed polynomial: " + std::string(text));
    return std::stoll(t.substr(st, i - st));
  };
  while (pos < t.size()) {
    bool negative = false;
    if (t[pos] == '+') ++pos;
    else if (t[pos] == '-') {
      negative = true;
      ++pos;
    }
    Elem coef = 1;
    bool have_coef = false;
    if (pos < t.size() && t[pos] == '(') {
      const auto close = t.find(')', pos);
      if (close == std::string::npos) throw std::invalid_argument("unbalanced parenthesis in: " + std::string(text));
      coef = parse_elem(*f, t.substr(pos + 1, close - pos - 1));
      pos = close + 1;
      have_coef = true;
    } else if (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) {
      coef = f->from_int(read_int(pos));
      have_coef = true;
    }
    if (have_coef && pos < t.size() && t[pos] == '*') ++pos;
    std::int64_t power = 0;
    if (pos < t.size() && t[pos] == 'T') {
      ++pos;
      power = 1;
      if (pos < t.size() && t[pos] == '^') {
        ++pos;
        power = read_int(pos);
      }
    } else if (!have_coef) {
      throw std::invalid_argument("malformed polynomial: " + std::string(text));
    }
    if (negative) coef = f->neg(coef);
    result += Poly::monomial(f, power, coef);
  }
  return result;
}

inline RatFunc parse_ratfunc(const FieldPtr& f, std::string_view text) {
  const std::string t(text);
  int depth = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == '(') ++depth;
    else if (t[i] == ')') --depth;
    else if (t[i] == '/' && depth == 0) {
      auto strip = [](std::string s) {
        while (!s.empty() && s.front() == ' ') s.erase(s.begin());
        while (!s.empty() && s.back() == ' ') s.pop_back();
        if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
        return s;
      };
      return RatFunc(parse_poly(f, strip(t.substr(0, i))), parse_poly(f, strip(t.substr(i + 1))));
    }
  }
  return RatFunc(parse_poly(f, t));
}

}  // namespace ffzeta

#endif  // FFZETA_POLY_HPP
