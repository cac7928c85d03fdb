#ifndef FFZETA_FIELD_HPP
#define FFZETA_FIELD_HPP

// Finite fields F_{q^ell}, q = p^e, as F_p[x]/(modulus).
//
// Elements are stored as the integer sum c_0 + c_1 p + ... + c_{m-1} p^{m-1}
// of their coefficient vector (m = e*ell), which is already canonical.
// Multiplication goes through log/antilog tables over a fixed generator and
// addition of nonzero elements through Zech logarithms.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ffzeta {

using Elem = std::uint32_t;

namespace detail {

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Dense polynomials over F_p, low degree first, used only while building the
// field tables.
using FpPoly = std::vector<int>;

inline void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline FpPoly fp_mod(FpPoly a, const FpPoly& m, int p) {
  fp_trim(a);
  const int dm = static_cast<int>(m.size()) - 1;
  int inv_lead = 1;
  for (int x = 1; x < p; ++x)
    if ((x * m.back()) % p == 1) inv_lead = x;
  while (static_cast<int>(a.size()) - 1 >= dm && !a.empty()) {
    const int shift = static_cast<int>(a.size()) - 1 - dm;
    const int f = (a.back() * inv_lead) % p;
    for (int i = 0; i <= dm; ++i)
      a[shift + i] = ((a[shift + i] - f * m[i]) % p + p) % p;
    fp_trim(a);
  }
  return a;
}

// Monic polynomial of degree d over F_p from its index among monic degree-d
// polynomials; the index is the base-p integer of the lower coefficients.
inline FpPoly fp_monic_from_index(std::int64_t idx, int d, int p) {
  FpPoly f(d + 1, 0);
  for (int i = 0; i < d; ++i) {
    f[i] = static_cast<int>(idx % p);
    idx /= p;
  }
  f[d] = 1;
  return f;
}

// Trial division by every monic polynomial of degree 1..d/2.
inline bool fp_irreducible(const FpPoly& f, int p) {
  const int d = static_cast<int>(f.size()) - 1;
  if (d <= 1) return d == 1;
  for (int k = 1; 2 * k <= d; ++k) {
    const std::int64_t count = ipow(p, k);
    for (std::int64_t idx = 0; idx < count; ++idx)
      if (fp_mod(f, fp_monic_from_index(idx, k, p), p).empty()) return false;
  }
  return true;
}

}  // namespace detail

/// Descriptor and arithmetic tables for F_{q^ell}, q = p^e.
///
/// The modulus is the smallest monic irreducible polynomial of degree e*ell
/// over F_p, ordering candidates by the base-p integer of their lower
/// coefficients (constant term least significant). The generator is the
/// element of smallest integer code with full multiplicative order.
class Field {
 public:
  static constexpr std::int64_t kMaxOrder = 1 << 16;

  Field(int p, int e, int ell) : p_(p), e_(e), ell_(ell) {
    if (!detail::is_prime(p)) throw std::invalid_argument("field characteristic must be prime: " + std::to_string(p));
    if (e < 1 || ell < 1) throw std::invalid_argument("field degrees must be positive");
    m_ = e * ell;
    order_ = 1;
    for (int i = 0; i < m_; ++i) {
      order_ *= p;
      if (order_ > kMaxOrder) throw std::invalid_argument("field too large: p^(e*ell) exceeds 2^16");
    }
    q_ = detail::ipow(p, e);
    find_modulus();
    build_tables();
  }

  int p() const { return p_; }
  int e() const { return e_; }
  int ell() const { return ell_; }
  /// Degree of the carried field over F_p.
  int degree() const { return m_; }
  /// Size q of the constant field F_q.
  std::int64_t q() const { return q_; }
  /// Size q^ell of the carried field.
  std::int64_t order() const { return order_; }
  const std::vector<int>& modulus() const { return modulus_; }
  Elem generator() const { return gen_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  /// Image of an integer under Z -> F_p -> F_{q^ell}.
  Elem from_int(std::int64_t n) const { return static_cast<Elem>(((n % p_) + p_) % p_); }

  Elem add(Elem a, Elem b) const {
    if (a == 0) return b;
    if (b == 0) return a;
    if (p_ == 2) return a ^ b;
    const std::int64_t la = log_[a], lb = log_[b];
    const std::int64_t diff = (lb - la + (order_ - 1)) % (order_ - 1);
    const std::int32_t z = zech_[diff];
    if (z < 0) return 0;
    return exp_[(la + z) % (order_ - 1)];
  }
  Elem neg(Elem a) const {
    if (a == 0 || p_ == 2) return a;
    return exp_[(log_[a] + (order_ - 1) / 2) % (order_ - 1)];
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("inverse of zero in finite field");
    return exp_[(order_ - 1 - log_[a]) % (order_ - 1)];
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::int64_t n) const {
    if (a == 0) {
      if (n == 0) return 1;
      if (n < 0) throw std::domain_error("negative power of zero");
      return 0;
    }
    const std::int64_t ord = order_ - 1;
    const std::int64_t k = ((static_cast<std::int64_t>(log_[a]) * (n % ord)) % ord + ord) % ord;
    return exp_[k];
  }
  /// Discrete log with respect to the generator; a must be nonzero.
  std::int64_t log(Elem a) const {
    if (a == 0) throw std::domain_error("log of zero");
    return log_[a];
  }
  Elem gen_pow(std::int64_t k) const {
    const std::int64_t ord = order_ - 1;
    return exp_[((k % ord) + ord) % ord];
  }

  /// x^(q^j); negative j gives the unique q^|j|-th root.
  Elem frobenius(Elem x, std::int64_t j) const {
    if (x == 0) return 0;
    const std::int64_t r = ((j % ell_) + ell_) % ell_;
    Elem y = x;
    for (std::int64_t i = 0; i < r; ++i) y = pow(y, q_);
    return y;
  }

  /// Elements of the constant subfield F_q in increasing code order.
  const std::vector<Elem>& constants() const { return constants_; }
  bool in_constant_field(Elem x) const { return x == 0 || pow(x, q_) == x; }

  /// Coefficient vector over F_p, low degree first.
  std::vector<int> digits(Elem a) const {
    std::vector<int> d(m_);
    for (int i = 0; i < m_; ++i) {
      d[i] = static_cast<int>(a % p_);
      a /= p_;
    }
    return d;
  }
  Elem from_digits(const std::vector<int>& d) const {
    Elem a = 0;
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) a = a * p_ + static_cast<Elem>(((d[i] % p_) + p_) % p_);
    return a;
  }

  bool operator==(const Field& o) const { return p_ == o.p_ && e_ == o.e_ && ell_ == o.ell_; }

 private:
  void find_modulus() {
    const std::int64_t count = order_;  // p^m monic candidates of degree m
    for (std::int64_t idx = 0; idx < count; ++idx) {
      auto f = detail::fp_monic_from_index(idx, m_, p_);
      if (detail::fp_irreducible(f, p_)) {
        modulus_ = f;
        return;
      }
    }
    throw std::logic_error("no irreducible modulus found");
  }

  Elem mul_slow(Elem a, Elem b) const {
    auto da = digits(a), db = digits(b);
    std::vector<int> prod(2 * m_, 0);
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    auto r = detail::fp_mod(prod, modulus_, p_);
    r.resize(m_, 0);
    return from_digits(r);
  }

  void build_tables() {
    const std::int64_t ord = order_ - 1;
    exp_.assign(2 * ord + 2, 0);
    log_.assign(order_, 0);
    // Smallest element of full order.
    gen_ = 0;
    for (Elem cand = 1; cand < order_; ++cand) {
      Elem x = cand;
      std::int64_t k = 1;
      while (x != 1) {
        x = mul_slow(x, cand);
        ++k;
      }
      if (k == ord) {
        gen_ = cand;
        break;
      }
    }
    if (order_ == 2) gen_ = 1;
    Elem x = 1;
    for (std::int64_t k = 0; k < ord; ++k) {
      exp_[k] = x;
      log_[x] = static_cast<std::uint32_t>(k);
      x = mul_slow(x, gen_);
    }
    for (std::int64_t k = ord; k < 2 * ord + 2; ++k) exp_[k] = exp_[k % ord];
    // zech[k] = log(1 + g^k), or -1 when 1 + g^k = 0.
    zech_.assign(ord, -1);
    for (std::int64_t k = 0; k < ord; ++k) {
      auto d = digits(exp_[k]);
      d[0] = (d[0] + 1) % p_;
      const Elem s = from_digits(d);
      zech_[k] = s == 0 ? -1 : static_cast<std::int32_t>(log_[s]);
    }
    constants_.clear();
    for (Elem a = 0; a < order_; ++a)
      if (a == 0 || pow(a, q_) == a) constants_.push_back(a);
  }

  int p_, e_, ell_, m_;
  std::int64_t q_, order_;
  std::vector<int> modulus_;
  Elem gen_ = 1;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::int32_t> zech_;
  std::vector<Elem> constants_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// Deterministic construction of F_{q^ell}, q = p^e.
inline FieldPtr make_field(int p, int e = 1, int ell = 1) { return std::make_shared<const Field>(p, e, ell); }

/// Field element bundled with its field, for API surfaces where the field is
/// not implied by a container.
struct FqElem {
  FieldPtr field;
  Elem rep = 0;

  bool operator==(const FqElem& o) const { return rep == o.rep && *field == *o.field; }
  FqElem operator+(const FqElem& o) const { return {field, field->add(rep, o.rep)}; }
  FqElem operator-(const FqElem& o) const { return {field, field->sub(rep, o.rep)}; }
  FqElem operator*(const FqElem& o) const { return {field, field->mul(rep, o.rep)}; }
  FqElem operator-() const { return {field, field->neg(rep)}; }
  FqElem inverse() const { return {field, field->inv(rep)}; }
};

inline FqElem frobenius(const FqElem& x, std::int64_t j) { return {x.field, x.field->frobenius(x.rep, j)}; }

// ---------------------------------------------------------------------------
// Text form. Prime-field elements print as integers 0..p-1; otherwise as a
// polynomial in g, the class of x modulo the defining polynomial, e.g. "g^2+2*g+1".

inline std::string format_elem(const Field& f, Elem a) {
  if (f.degree() == 1) return std::to_string(a);
  if (a == 0) return "0";
  const auto d = f.digits(a);
  std::string out;
  for (int i = f.degree() - 1; i >= 0; --i) {
    if (d[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(d[i]);
      continue;
    }
    if (d[i] != 1) out += std::to_string(d[i]) + "*";
    out += "g";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

/// Elements outside the prime subfield are parenthesized when used as factors.
inline bool elem_needs_parens(const Field& f, Elem a) { return f.degree() > 1 && a >= static_cast<Elem>(f.p()); }

inline Elem parse_elem(const Field& f, std::string_view s) {
  std::string t;
  for (char c : s)
    if (c != ' ') t += c;
  if (t.empty()) throw std::invalid_argument("empty field element");
  if (t.size() >= 2 && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
  std::vector<int> d(f.degree(), 0);
  std::size_t pos = 0;
  auto read_int = [&](std::size_t& i) {
    std::size_t st = i;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
    if (st == i) throw std::invalid_argument("malformed field element: " + t);
    return std::stoll(t.substr(st, i - st));
  };
  while (pos < t.size()) {
    int sign = 1;
    if (t[pos] == '+') ++pos;
    else if (t[pos] == '-') {
      sign = -1;
      ++pos;
    }
    std::int64_t coef = 1;
    bool have_coef = false;
    if (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) {
      coef = read_int(pos);
      have_coef = true;
      if (pos < t.size() && t[pos] == '*') ++pos;
    }
    int power = 0;
    if (pos < t.size() && t[pos] == 'g') {
      ++pos;
      power = 1;
      if (pos < t.size() && t[pos] == '^') {
        ++pos;
        power = static_cast<int>(read_int(pos));
      }
    } else if (!have_coef) {
      throw std::invalid_argument("malformed field element: " + t);
    }
    if (power >= f.degree()) throw std::invalid_argument("generator power out of range in: " + t);
    d[power] = static_cast<int>(((d[power] + sign * (coef % f.p())) % f.p() + f.p()) % f.p());
  }
  return f.from_digits(d);
}

}  // namespace ffzeta

#endif  // FFZETA_FIELD_HPP
