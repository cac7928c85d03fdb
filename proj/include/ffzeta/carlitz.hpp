#ifndef FFZETA_CARLITZ_HPP
#define FFZETA_CARLITZ_HPP

// Special values over F_q[θ]: D_n, L_i, Carlitz and Goss factorials, Carlitz
// zeta values, the periods π̃_ℓ, Ω_ℓ and its twists (as values and as
// t-series), Carlitz exponential/logarithm/polylogarithm coefficients and
// values, and Bernoulli-Carlitz numbers.
//
// Every value below except the ξ-twisted Ψ entries has coefficients in F_p,
// so values can be carried in any field F_{q^ell} of the right q, at any
// scale that is a multiple of the natural one.

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ffzeta/field.hpp"
#include "ffzeta/laurent.hpp"
#include "ffzeta/poly.hpp"
#include "ffzeta/tate.hpp"

namespace ffzeta {

namespace detail {

// q^i, saturating at kExact.
inline std::int64_t qpow_sat(std::int64_t q, std::int64_t i) {
  std::int64_t r = 1;
  for (std::int64_t k = 0; k < i; ++k) {
    if (r > kExact / q) return kExact;
    r *= q;
  }
  return r;
}

inline std::int64_t mul_sat(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a >= kExact || b >= kExact || a > kExact / b) return kExact;
  return a * b;
}

// Exact 1 - θ^(-k) = 1 - (-1)^k u^(k·scale), k > 0.
inline Laurent one_minus_inv_theta(const FieldPtr& f, std::int64_t scale, std::int64_t k) {
  const Elem c = (k % 2 == 0) ? f->neg(1) : 1;
  return Laurent::from_terms(f, scale, kExact, {{0, 1}, {k * scale, c}});
}

// ∏_k (1 - θ^(-k)) modulo u^prec. Factors with k·scale >= prec are 1 there.
inline Laurent unit_product(const FieldPtr& f, std::int64_t scale, const std::vector<std::int64_t>& ks, std::int64_t prec) {
  Laurent acc = Laurent::one(f, scale, prec);
  if (prec <= 0) return Laurent(f, scale, prec);
  for (auto k : ks) {
    if (k <= 0) throw std::invalid_argument("unit_product: exponent must be positive");
    if (mul_sat(k, scale) >= prec) continue;
    acc = (acc * one_minus_inv_theta(f, scale, k)).truncate(prec);
  }
  return acc;
}

}  // namespace detail

/// ∏ (θ^a - θ^b)^power over the listed (a, b) pairs (a != b), to absolute
/// u-precision `prec` at the given scale.
inline Laurent theta_binomial_product(const FieldPtr& f, std::int64_t scale, const std::vector<std::pair<std::int64_t, std::int64_t>>& factors,
                                      int power, std::int64_t prec) {
  Elem sign = 1;
  std::int64_t E = 0;
  std::vector<std::int64_t> ks;
  ks.reserve(factors.size());
  for (auto [a, b] : factors) {
    if (a == b) throw std::invalid_argument("theta_binomial_product: zero factor");
    if (a > b) {
      E += a;
      ks.push_back(a - b);
    } else {
      E += b;
      ks.push_back(b - a);
      sign = f->neg(sign);
    }
  }
  // monomial part: sign^power · θ^(E·power) = sign^power (-1)^(E·power) u^(-E·power·scale)
  const std::int64_t Ep = E * power;
  Elem c = f->pow(sign, ((power % 2) + 2) % 2);
  if (Ep % 2 != 0) c = f->neg(c);
  const std::int64_t v = -Ep * scale;
  const std::int64_t rel = prec - v;
  if (rel <= 0) return Laurent(f, scale, prec);
  Laurent unit = detail::unit_product(f, scale, ks, rel);
  if (power < 0) unit = unit.inverse(rel).pow(-power);
  else unit = unit.pow(power).truncate(rel);
  return unit.shifted(v, c);
}

// ---------------------------------------------------------------------------
// Exact polynomials.

/// D_n = ∏_{i<n} (θ^(q^n) - θ^(q^i)).
inline Poly d_poly(const FieldPtr& f, int n) {
  const std::int64_t qn = detail::ipow(f->q(), n);
  Poly r = Poly::one(f);
  for (int i = 0; i < n; ++i) r = r * (Poly::monomial(f, qn) - Poly::monomial(f, detail::ipow(f->q(), i)));
  return r;
}

/// L_i = ∏_{j=1..i} (θ - θ^(q^j)).
inline Poly l_poly(const FieldPtr& f, int i) {
  Poly r = Poly::one(f);
  for (int j = 1; j <= i; ++j) r = r * (Poly::theta(f) - Poly::monomial(f, detail::ipow(f->q(), j)));
  return r;
}

/// Base-q digits of n >= 0, least significant first.
inline std::vector<int> base_q_digits(std::int64_t n, std::int64_t q) {
  std::vector<int> d;
  while (n > 0) {
    d.push_back(static_cast<int>(n % q));
    n /= q;
  }
  return d;
}

/// Carlitz factorial Π(n) = ∏ D_i^(n_i).
inline Poly carlitz_factorial(const FieldPtr& f, std::int64_t n) {
  if (n < 0) throw std::invalid_argument("carlitz_factorial needs n >= 0");
  const auto digits = base_q_digits(n, f->q());
  Poly r = Poly::one(f);
  for (std::size_t i = 0; i < digits.size(); ++i)
    if (digits[i]) r = r * d_poly(f, static_cast<int>(i)).pow(digits[i]);
  return r;
}

/// Γ_{m} = Π(m - 1), the shift used in the Euler-Carlitz relations.
inline Poly gamma_carlitz(const FieldPtr& f, std::int64_t m) {
  if (m < 1) throw std::invalid_argument("gamma_carlitz needs m >= 1");
  return carlitz_factorial(f, m - 1);
}

/// D̄_n = D_n / θ^(deg D_n) = ∏_{i<n} (1 - θ^(q^i - q^n)), modulo u^prec.
inline Laurent dbar(const FieldPtr& f, int n, std::int64_t scale, std::int64_t prec) {
  const std::int64_t q = f->q();
  std::vector<std::int64_t> ks;
  const std::int64_t qn = detail::qpow_sat(q, n);
  for (int i = 0; i < n; ++i) ks.push_back(qn - detail::qpow_sat(q, i));
  return detail::unit_product(f, scale, ks, prec);
}

// ---------------------------------------------------------------------------
// Goss factorial at p-adic rationals.

struct GammaArg {
  std::int64_t a = 0;
  std::int64_t b = 1;

  GammaArg() = default;
  GammaArg(std::int64_t num, std::int64_t den) : a(num), b(den) {
    if (b == 0) throw std::invalid_argument("gamma argument with zero denominator");
    if (b < 0) {
      a = -a;
      b = -b;
    }
    const std::int64_t g = std::gcd(a < 0 ? -a : a, b);
    if (g > 1) {
      a /= g;
      b /= g;
    }
  }
  bool is_integer() const { return b == 1; }
  /// -1 < r < 0
  bool in_canonical_range() const { return a < 0 && -a < b; }
  bool operator==(const GammaArg& o) const { return a == o.a && b == o.b; }
  bool operator<(const GammaArg& o) const { return a * o.b < o.a * b || (a * o.b == o.a * b && b < o.b); }
  std::string str() const { return b == 1 ? std::to_string(a) : std::to_string(a) + "/" + std::to_string(b); }
};

/// q-adic digits of a rational in Z_p: a finite preperiod followed by a
/// repeating period.
struct DigitExpansion {
  std::vector<int> preperiod;
  std::vector<int> period;

  int digit(std::int64_t i) const {
    if (i < static_cast<std::int64_t>(preperiod.size())) return preperiod[static_cast<std::size_t>(i)];
    return period[static_cast<std::size_t>((i - static_cast<std::int64_t>(preperiod.size())) % static_cast<std::int64_t>(period.size()))];
  }
  std::int64_t ell() const { return static_cast<std::int64_t>(period.size()); }
};

namespace detail {
inline std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, a1 = ((a % m) + m) % m;
  while (a1 != 0) {
    const std::int64_t t = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - t * a1);
    std::tie(x, x1) = std::make_pair(x1, x - t * x1);
  }
  if (g != 1) throw std::domain_error("not invertible modulo " + std::to_string(m));
  return ((x % m) + m) % m;
}
}  // namespace detail

inline DigitExpansion digit_expansion(const GammaArg& r, int p, std::int64_t q) {
  if (r.b % p == 0) throw std::domain_error("gamma argument " + r.str() + " has denominator divisible by p = " + std::to_string(p));
  const std::int64_t binv = detail::inv_mod(r.b, q);
  std::map<std::int64_t, std::size_t> seen;
  std::vector<int> digits;
  std::int64_t a = r.a;
  while (!seen.count(a)) {
    seen[a] = digits.size();
    const std::int64_t n0 = (((a % q) + q) % q) * binv % q;
    digits.push_back(static_cast<int>(n0));
    a = (a - n0 * r.b) / q;
  }
  const std::size_t start = seen[a];
  DigitExpansion d;
  d.preperiod.assign(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(start));
  d.period.assign(digits.begin() + static_cast<std::ptrdiff_t>(start), digits.end());
  return d;
}

/// Product ∏_{i<count} D̄_i^(digits_i) for an explicit (finite) digit list.
inline Laurent dbar_digit_product(const FieldPtr& f, const std::vector<int>& digits, std::int64_t scale, std::int64_t prec) {
  Laurent acc = Laurent::one(f, scale, prec);
  const std::int64_t q = f->q();
  for (std::size_t i = 1; i < digits.size(); ++i) {
    if (digits[i] == 0) continue;
    const std::int64_t step = detail::qpow_sat(q, static_cast<std::int64_t>(i)) - detail::qpow_sat(q, static_cast<std::int64_t>(i) - 1);
    if (detail::mul_sat(step, scale) >= prec) break;
    const Laurent di = dbar(f, static_cast<int>(i), scale, prec);
    acc = (acc * (digits[i] > 0 ? di.pow(digits[i]) : di.inverse(prec).pow(-digits[i]))).truncate(prec);
  }
  return acc;
}

/// Goss factorial r! = ∏ D̄_i^(n_i) over the q-adic digits of r, a one-unit,
/// modulo u^prec at the given scale. The factor D̄_i differs from 1 first in
/// u^((q^i - q^(i-1))·scale), which gives the truncation point.
inline Laurent goss_factorial(const FieldPtr& f, const GammaArg& r, std::int64_t scale, std::int64_t prec) {
  const auto de = digit_expansion(r, f->p(), f->q());
  const std::int64_t q = f->q();
  std::vector<int> digits;
  for (std::int64_t i = 0;; ++i) {
    if (i > 0) {
      const std::int64_t step = detail::qpow_sat(q, i) - detail::qpow_sat(q, i - 1);
      if (detail::mul_sat(step, scale) >= prec) break;
    }
    digits.push_back(de.digit(i));
  }
  return dbar_digit_product(f, digits, scale, prec);
}

// ---------------------------------------------------------------------------
// Carlitz zeta values.
//
// For d >= 0 let e_d(z) = ∏_{deg b < d}(z - b) = Σ_i α_i z^(q^i). Summing
// 1/(z + b) over the F_q-space of b gives α_0/e_d(z); expanding at
// z = θ^d + w and using additivity of e_d,
//     S_d(s) := Σ_{a monic, deg d} a^(-s) = (-1)^(s-1) [w^(s-1)] β_0 / (1 + Σ_i β_i w^(q^i)),
// with β_i = α_i / e_d(θ^d) = (-1)^(d-i) / (D_i · L'_(d-i)^(q^i)) and
// L'_m = ∏_{j=1..m} (θ^(q^j) - θ). Since v(β_i) >= 0 and v(β_0) = q + ... + q^d,
// v(S_d(s)) >= max(d·s, q + q^2 + ... + q^d), which bounds the omitted tail.

/// 1/θ-valuation lower bound for S_d(s).
inline std::int64_t zeta_degree_bound(std::int64_t q, std::int64_t s, std::int64_t d) {
  std::int64_t geo = 0;
  for (std::int64_t j = 1; j <= d; ++j) geo = detail::sat_add(geo, detail::qpow_sat(q, j));
  return std::max(detail::mul_sat(d, s), geo);
}

/// Power sum S_d(s) modulo u^prec.
inline Laurent zeta_degree_sum(const FieldPtr& f, std::int64_t s, int d, std::int64_t scale, std::int64_t prec) {
  if (s < 1) throw std::invalid_argument("zeta needs s >= 1");
  const std::int64_t q = f->q();
  if (detail::mul_sat(zeta_degree_bound(q, s, d), scale) >= prec) return Laurent(f, scale, prec);
  int imax = 0;
  while (imax + 1 <= d && detail::qpow_sat(q, imax + 1) <= s - 1) ++imax;
  std::vector<Laurent> beta;
  for (int i = 0; i <= imax; ++i) {
    std::vector<std::pair<std::int64_t, std::int64_t>> fac;
    const std::int64_t qi = detail::qpow_sat(q, i);
    for (int j = 0; j < i; ++j) fac.emplace_back(qi, detail::qpow_sat(q, j));
    for (int j = 1; j <= d - i; ++j) fac.emplace_back(detail::qpow_sat(q, i + j), qi);  // (θ^(q^j) - θ)^(q^i)
    Laurent b = theta_binomial_product(f, scale, fac, -1, prec);
    if ((d - i) % 2 != 0) b = -b;
    beta.push_back(std::move(b));
  }
  // g = 1/(1 + Σ β_i w^(q^i)) through w^(s-1)
  std::vector<Laurent> g;
  g.reserve(static_cast<std::size_t>(s));
  g.push_back(Laurent::one(f, scale));
  for (std::int64_t k = 1; k < s; ++k) {
    Laurent acc(f, scale);
    for (int i = 0; i <= imax; ++i) {
      const std::int64_t qi = detail::qpow_sat(q, i);
      if (qi > k) break;
      acc += beta[i] * g[static_cast<std::size_t>(k - qi)];
    }
    g.push_back((-acc).truncate(prec));
  }
  Laurent r = (beta[0] * g.back()).truncate(prec);
  if ((s - 1) % 2 != 0) r = -r;
  return r;
}

/// Largest degree whose power sum can be nonzero modulo u^prec.
inline int zeta_cutoff_degree(std::int64_t q, std::int64_t s, std::int64_t scale, std::int64_t prec) {
  int d = 0;
  while (detail::mul_sat(zeta_degree_bound(q, s, d + 1), scale) < prec) ++d;
  return d;
}

/// ζ_C(s) = Σ_{a monic} a^(-s) modulo u^prec at the given scale.
/// `extra_degrees` sums further (provably negligible) degrees; used to
/// cross-check the cutoff.
inline Laurent zeta(const FieldPtr& f, std::int64_t s, std::int64_t scale, std::int64_t prec, int extra_degrees = 0) {
  const int D = zeta_cutoff_degree(f->q(), s, scale, prec) + extra_degrees;
  Laurent acc(f, scale, prec);
  for (int d = 0; d <= D; ++d) acc += zeta_degree_sum(f, s, d, scale, prec);
  return acc;
}

// ---------------------------------------------------------------------------
// Periods.

inline std::int64_t natural_scale(const Field& f, int ell) { return detail::ipow(f.q(), ell) - 1; }

namespace detail {
inline std::int64_t root_multiplier(const Field& f, int ell, std::int64_t scale) {
  const std::int64_t nat = natural_scale(f, ell);
  if (ell < 1) throw std::invalid_argument("ell must be >= 1");
  if (scale % nat != 0) throw std::invalid_argument("scale " + std::to_string(scale) + " is not a multiple of q^" + std::to_string(ell) + " - 1");
  return scale / nat;
}
}  // namespace detail

/// π̃_ℓ = θ (-θ)^(1/(q^ℓ-1)) ∏_{i>=1} (1 - θ^(1-q^(ℓi)))^(-1). The root is
/// u^(-m) at scale m(q^ℓ-1), so val π̃_ℓ = -m q^ℓ.
inline Laurent pi_tilde(const FieldPtr& f, int ell, std::int64_t scale, std::int64_t prec) {
  const std::int64_t m = detail::root_multiplier(*f, ell, scale);
  const std::int64_t v = -scale - m;
  const std::int64_t rel = prec - v;
  const std::int64_t Q = detail::qpow_sat(f->q(), ell);
  std::vector<std::int64_t> ks;
  for (std::int64_t Qi = Q; detail::mul_sat(Qi - 1, scale) < rel; Qi = detail::mul_sat(Qi, Q)) ks.push_back(Qi - 1);
  if (rel <= 0) return Laurent(f, scale, prec);
  Laurent unit = detail::unit_product(f, scale, ks, rel).inverse(rel);
  return unit.shifted(v, f->neg(1));  // θ = -u^(-scale)
}

/// Ω_ℓ^(-j)(θ) = (-θ)^(-q^(ℓ-j)/(q^ℓ-1)) ∏_{i>=1} (1 - θ^(1-q^(ℓi-j))), 0 <= j < ℓ.
inline Laurent omega_value(const FieldPtr& f, int ell, int j, std::int64_t scale, std::int64_t prec) {
  if (j < 0 || j >= ell) throw std::invalid_argument("omega_value: need 0 <= j <= ell-1");
  const std::int64_t m = detail::root_multiplier(*f, ell, scale);
  const std::int64_t v = m * detail::qpow_sat(f->q(), ell - j);
  const std::int64_t rel = prec - v;
  std::vector<std::int64_t> ks;
  for (std::int64_t i = 1;; ++i) {
    const std::int64_t Qi = detail::qpow_sat(f->q(), ell * i - j);
    if (detail::mul_sat(Qi - 1, scale) >= rel) break;
    ks.push_back(Qi - 1);
  }
  if (rel <= 0) return Laurent(f, scale, prec);
  return detail::unit_product(f, scale, ks, rel).shifted(v);
}

/// One-unit part ∏_{i>=1} (1 - θ^(1-q^(ℓi-j))) of Ω_ℓ^(-j)(θ). Unlike the
/// value itself it needs no root of -θ, so any scale works.
inline Laurent omega_unit(const FieldPtr& f, int ell, int j, std::int64_t scale, std::int64_t prec) {
  if (j < 0 || j >= ell) throw std::invalid_argument("omega_unit: need 0 <= j <= ell-1");
  std::vector<std::int64_t> ks;
  for (std::int64_t i = 1;; ++i) {
    const std::int64_t Qi = detail::qpow_sat(f->q(), ell * i - j);
    if (detail::mul_sat(Qi - 1, scale) >= prec) break;
    ks.push_back(Qi - 1);
  }
  return detail::unit_product(f, scale, ks, prec);
}

/// The t-series Ω_ℓ^(-j)(t) = u^(m q^(ℓ-j)) ∏_{i>=1} (1 - t/θ^(q^(ℓi-j))) through
/// t^(tdeg-1), each coefficient modulo u^prec. Growth bound:
/// v(c_k) >= m q^(ℓ-j) + k · scale · q^(ℓ-j).
inline TatePoly omega_tate(const FieldPtr& f, int ell, int j, int tdeg, std::int64_t scale, std::int64_t prec) {
  if (j < 0 || j >= ell) throw std::invalid_argument("omega_tate: need 0 <= j <= ell-1");
  if (tdeg < 1) throw std::invalid_argument("omega_tate: tdeg must be >= 1");
  const std::int64_t m = detail::root_multiplier(*f, ell, scale);
  const std::int64_t Qj = detail::qpow_sat(f->q(), ell - j);
  const std::int64_t v = m * Qj;
  const std::int64_t rel = prec - v;
  std::vector<Laurent> c(tdeg, Laurent(f, scale));
  c[0] = Laurent::one(f, scale);
  if (rel > 0) {
    for (std::int64_t i = 1;; ++i) {
      const std::int64_t Q = detail::qpow_sat(f->q(), ell * i - j);
      if (detail::mul_sat(Q, scale) >= rel) break;
      const Laurent x = -Laurent::theta_pow(f, scale, -Q);  // -θ^(-Q)
      for (int k = tdeg - 1; k >= 1; --k) c[k] = (c[k] + x * c[k - 1]).truncate(rel);
    }
  }
  for (auto& x : c) x = x.truncate(std::max<std::int64_t>(rel, 0)).shifted(v);
  return TatePoly(std::move(c), GrowthBound{v, detail::mul_sat(scale, Qj)});
}

// ---------------------------------------------------------------------------
// Exponential, logarithm and polylogarithm coefficients.

/// exp_C(z) = Σ z^(q^h)/D_h: the coefficients 1/D_h for h < terms.
inline std::vector<RatFunc> carlitz_exp_series(const FieldPtr& f, int terms) {
  std::vector<RatFunc> out;
  for (int h = 0; h < terms; ++h) out.push_back(RatFunc(Poly::one(f), d_poly(f, h)));
  return out;
}

/// log^[n]_C(z) = Σ z^(q^i)/L_i^n: the coefficients 1/L_i^n for i < terms.
inline std::vector<RatFunc> polylog_series(const FieldPtr& f, int n, int terms) {
  if (n < 1) throw std::invalid_argument("polylog weight must be >= 1");
  std::vector<RatFunc> out;
  for (int i = 0; i < terms; ++i) out.push_back(RatFunc(Poly::one(f), l_poly(f, i).pow(n)));
  return out;
}

inline std::vector<RatFunc> carlitz_log_series(const FieldPtr& f, int terms) { return polylog_series(f, 1, terms); }

struct PolylogSpec {
  int n = 1;
  RatFunc alpha;

  /// |α| < |θ|^(nq/(q-1)), i.e. (q-1)·deg α < n q.
  bool converges() const {
    if (alpha.is_zero()) return true;
    const std::int64_t q = alpha.field()->q();
    return (q - 1) * alpha.degree() < n * q;
  }
};

/// L_{α,n}(θ) = Σ_i α^(q^i) / L_i^n modulo u^prec. The valuation of term i is
/// scale·(n(q + ... + q^i) - q^i deg α), strictly increasing in i.
inline Laurent polylog_value(const PolylogSpec& spec, std::int64_t scale, std::int64_t prec) {
  const FieldPtr& f = spec.alpha.field();
  if (!spec.converges()) throw std::domain_error("polylog argument violates |α| < |θ|^(nq/(q-1))");
  if (spec.alpha.is_zero()) return Laurent(f, scale);
  const std::int64_t q = f->q();
  const std::int64_t dega = spec.alpha.degree();
  const Laurent alpha_val = embed_rat(spec.alpha, scale, prec + 1);
  Laurent acc(f, scale, prec);
  std::int64_t geo = 0;  // q + ... + q^i
  for (int i = 0;; ++i) {
    const std::int64_t qi = detail::qpow_sat(q, i);
    if (i > 0) geo = detail::sat_add(geo, qi);
    const std::int64_t tv = detail::mul_sat(scale, spec.n * geo - qi * dega);
    if (i > 0 && tv >= prec) break;
    std::vector<std::pair<std::int64_t, std::int64_t>> fac;
    for (int j = 1; j <= i; ++j) fac.emplace_back(1, detail::qpow_sat(q, j));
    const Laurent ai = alpha_val.twist(-i);
    const Laurent invL = theta_binomial_product(f, scale, fac, -spec.n, prec - ai.val());
    acc += (ai * invL).truncate(prec);
  }
  return acc;
}

/// Bernoulli-Carlitz B_n from z/exp_C(z) = Σ B_n z^n / Γ_{n+1}.
inline RatFunc bernoulli_carlitz(const FieldPtr& f, int n) {
  if (n < 0) throw std::invalid_argument("bernoulli_carlitz needs n >= 0");
  const std::int64_t q = f->q();
  // exp_C(z)/z = Σ_h z^(q^h - 1)/D_h
  std::vector<std::pair<std::int64_t, RatFunc>> e;
  for (int h = 1; detail::ipow(q, h) - 1 <= n; ++h) e.emplace_back(detail::ipow(q, h) - 1, RatFunc(Poly::one(f), d_poly(f, h)));
  std::vector<RatFunc> g{RatFunc::one(f)};
  for (int k = 1; k <= n; ++k) {
    RatFunc acc = RatFunc::zero(f);
    for (const auto& [deg, c] : e) {
      if (deg > k) break;
      acc += c * g[k - deg];
    }
    g.push_back(-acc);
  }
  return g[n] * RatFunc(carlitz_factorial(f, n));
}

}  // namespace ffzeta

#endif  // FFZETA_CARLITZ_HPP
