#ifndef FFZETA_RELATIONS_HPP
#define FFZETA_RELATIONS_HPP

// Exact linear-relation search among Laurent values (over F_q and over
// polynomials in θ of bounded degree), recovery of Anderson-Thakur
// coefficients, reduction of gamma monomials to the basis
// {(q^j/(1-q^ℓ))!}_{j<ℓ}, and the transcendence-degree counts.
//
// Relations found at finite precision are candidates; the k-linear search
// re-verifies every candidate at twice the search precision.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ffzeta/carlitz.hpp"
#include "ffzeta/laurent.hpp"
#include "ffzeta/poly.hpp"

namespace ffzeta {

// ---------------------------------------------------------------------------
// Linear algebra over F_p.

/// Row space of a matrix over F_p kept in reduced echelon form, fed one row
/// at a time, so arbitrarily tall systems stream through in O(rank·n) memory.
class FpEchelon {
 public:
  FpEchelon(int p, int ncols) : p_(p), n_(ncols) {}

  int rank() const { return static_cast<int>(rows_.size()); }
  int cols() const { return n_; }
  bool full() const { return rank() == n_; }

  void add(std::vector<int> r) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const int c = r[piv_[i]];
      if (c) axpy(r, rows_[i], p_ - c);
    }
    int lead = -1;
    for (int j = 0; j < n_; ++j)
      if (r[j]) {
        lead = j;
        break;
      }
    if (lead < 0) return;
    scale(r, inv(r[lead]));
    for (auto& row : rows_)
      if (row[lead]) axpy(row, r, p_ - row[lead]);
    rows_.push_back(std::move(r));
    piv_.push_back(lead);
  }

  /// Basis of the right kernel, one vector per free column.
  std::vector<std::vector<int>> kernel() const {
    std::vector<bool> is_piv(n_, false);
    for (int c : piv_) is_piv[c] = true;
    std::vector<std::vector<int>> out;
    for (int fcol = 0; fcol < n_; ++fcol) {
      if (is_piv[fcol]) continue;
      std::vector<int> v(n_, 0);
      v[fcol] = 1;
      for (std::size_t i = 0; i < rows_.size(); ++i) v[piv_[i]] = (p_ - rows_[i][fcol]) % p_;
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  void axpy(std::vector<int>& y, const std::vector<int>& x, int a) const {
    for (int j = 0; j < n_; ++j)
      if (x[j]) y[j] = static_cast<int>((y[j] + static_cast<std::int64_t>(a) * x[j]) % p_);
  }
  void scale(std::vector<int>& y, int a) const {
    for (auto& v : y) v = static_cast<int>(static_cast<std::int64_t>(v) * a % p_);
  }
  int inv(int a) const {
    std::int64_t r = 1, b = a, e = p_ - 2;
    while (e > 0) {
      if (e & 1) r = r * b % p_;
      b = b * b % p_;
      e >>= 1;
    }
    return static_cast<int>(r);
  }

  int p_, n_;
  std::vector<std::vector<int>> rows_;
  std::vector<int> piv_;
};

namespace detail {

// F_p-basis (1, γ, ..., γ^(e-1)) of the constant field F_q inside the carried field.
inline std::vector<Elem> constant_field_basis(const Field& f) {
  const Elem gamma = f.gen_pow((f.order() - 1) / (f.q() - 1));
  std::vector<Elem> b{1};
  for (int k = 1; k < f.e(); ++k) b.push_back(f.mul(b.back(), gamma));
  return b;
}

struct WindowSystem {
  int rows = 0;
  std::vector<std::vector<int>> kernel;
};

// Kernel of Σ_i x_i·cols_i ≡ 0 mod u^prec with x_i ∈ F_q, expanded over F_p.
inline WindowSystem fq_window_kernel(const std::vector<Laurent>& cols, std::int64_t prec) {
  const Field& F = cols.at(0).F();
  const auto basis = constant_field_basis(F);
  const int e = static_cast<int>(basis.size());
  const int n = static_cast<int>(cols.size()) * e;
  std::vector<Laurent> scaled;
  for (const auto& v : cols)
    for (Elem b : basis) scaled.push_back(v.truncate(prec).scaled(b));
  std::int64_t lo = prec;
  for (const auto& v : scaled)
    if (!v.is_zero()) lo = std::min(lo, v.val());
  FpEchelon ech(F.p(), n);
  WindowSystem ws;
  const int m = F.degree();
  for (std::int64_t ex = lo; ex < prec && !ech.full(); ++ex) {
    std::vector<std::vector<int>> rows(m, std::vector<int>(n, 0));
    bool any = false;
    for (int j = 0; j < n; ++j) {
      const Elem c = scaled[j].coeff(ex);
      if (!c) continue;
      any = true;
      const auto d = F.digits(c);
      for (int t = 0; t < m; ++t) rows[t][j] = d[t];
    }
    ws.rows += m;
    if (!any) continue;
    for (auto& r : rows) ech.add(std::move(r));
  }
  ws.kernel = ech.kernel();
  return ws;
}

inline Elem combine_fq(const Field& F, const std::vector<Elem>& basis, const std::vector<int>& x, std::size_t at) {
  Elem c = 0;
  for (std::size_t k = 0; k < basis.size(); ++k) c = F.add(c, F.mul(F.from_int(x[at + k]), basis[k]));
  return c;
}

}  // namespace detail

struct FqRelation {
  std::vector<Elem> coeffs;  // in F_q, first nonzero entry normalized to 1
  std::int64_t prec = 0;
  int kernel_dim = 0;        // dimension over F_q of the relation space at prec
  bool candidate = true;     // always: finite precision cannot prove a relation
};

/// Nonzero c ∈ F_q^n with Σ c_i v_i ≡ 0 mod u^prec, or nullopt.
inline std::optional<FqRelation> find_fq_linear_relation(const std::vector<Laurent>& values, std::int64_t prec) {
  if (values.empty()) throw std::invalid_argument("find_fq_linear_relation: no values");
  for (const auto& v : values) {
    if (v.scale() != values[0].scale() || !(v.F() == values[0].F())) throw std::invalid_argument("find_fq_linear_relation: values differ in field or scale");
    if (v.prec() < prec) throw std::invalid_argument("find_fq_linear_relation: a value is known only to u^" + std::to_string(v.prec()));
  }
  const Field& F = values[0].F();
  const auto ws = detail::fq_window_kernel(values, prec);
  if (ws.kernel.empty()) return std::nullopt;
  const auto basis = detail::constant_field_basis(F);
  FqRelation rel;
  rel.prec = prec;
  rel.kernel_dim = static_cast<int>(ws.kernel.size()) / F.e();
  for (std::size_t i = 0; i < values.size(); ++i) rel.coeffs.push_back(detail::combine_fq(F, basis, ws.kernel[0], i * basis.size()));
  Elem first = 0;
  for (Elem c : rel.coeffs)
    if (c) {
      first = c;
      break;
    }
  const Elem inv = F.inv(first);
  for (auto& c : rel.coeffs) c = F.mul(c, inv);
  return rel;
}

enum class RelationStatus { found, none, underdetermined, unverified };

inline const char* to_string(RelationStatus s) {
  switch (s) {
    case RelationStatus::found: return "found";
    case RelationStatus::none: return "none";
    case RelationStatus::underdetermined: return "underdetermined";
    case RelationStatus::unverified: return "unverified";
  }
  return "?";
}

struct KRelation {
  RelationStatus status = RelationStatus::none;
  std::vector<RatFunc> coeffs;  // Σ h_i v_i = 0, polynomials with gcd 1
  int deg_bound = 0;
  std::int64_t search_prec = 0;
  std::int64_t verify_prec = 0;  // precision at which the combination was re-checked
  int kernel_dim = 0;
};

/// Σ h_i v_i with h_i exact, truncated consistently.
inline Laurent combine_values(const std::vector<RatFunc>& h, const std::vector<Laurent>& values, std::int64_t prec) {
  Laurent acc(values.at(0).field(), values[0].scale(), prec);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (h[i].is_zero()) continue;
    const Laurent v = values[i].truncate(prec);
    const Laurent hv = embed_rat(h[i], v.scale(), prec - std::min<std::int64_t>(v.val(), prec));
    acc += (hv * v).truncate(prec);
  }
  return acc;
}

/// Relation Σ h_i v_i = 0 with h_i ∈ F_q[θ], deg h_i <= deg_bound, found
/// from the values truncated at `prec` and re-verified at 2·prec (so the
/// values must be known to 2·prec).
inline KRelation find_k_linear_relation(const std::vector<Laurent>& values, int deg_bound, std::int64_t prec) {
  if (values.empty()) throw std::invalid_argument("find_k_linear_relation: no values");
  if (deg_bound < 0) throw std::invalid_argument("find_k_linear_relation: negative degree bound");
  KRelation out;
  out.deg_bound = deg_bound;
  out.search_prec = prec;
  const FieldPtr& f = values[0].field();
  const std::int64_t S = values[0].scale();
  for (const auto& v : values)
    if (v.scale() != S || !(v.F() == *f)) throw std::invalid_argument("find_k_linear_relation: values differ in field or scale");
  std::int64_t avail = kExact;
  for (const auto& v : values) avail = std::min(avail, v.prec());
  if (avail < 2 * prec) throw std::invalid_argument("find_k_linear_relation: values known only to u^" + std::to_string(avail) + ", need 2·prec = " + std::to_string(2 * prec));
  // columns θ^j v_i; the window stops where the θ^deg_bound multiples lose precision
  std::vector<Laurent> cols;
  for (const auto& v : values)
    for (int j = 0; j <= deg_bound; ++j) cols.push_back(Laurent::theta_pow(f, S, j) * v.truncate(prec));
  const std::int64_t wprec = prec - static_cast<std::int64_t>(deg_bound) * S;
  const auto& F = *f;
  const int unknowns = static_cast<int>(cols.size()) * F.e();
  std::int64_t lo = wprec;
  for (const auto& c : cols)
    if (!c.is_zero()) lo = std::min(lo, c.val());
  if ((wprec - lo) * F.degree() <= unknowns) {
    out.status = RelationStatus::underdetermined;
    return out;
  }
  const auto ws = detail::fq_window_kernel(cols, wprec);
  out.kernel_dim = static_cast<int>(ws.kernel.size()) / F.e();
  if (ws.kernel.empty()) {
    out.status = RelationStatus::none;
    return out;
  }
  const auto basis = detail::constant_field_basis(F);
  const std::size_t per = static_cast<std::size_t>(deg_bound + 1) * basis.size();
  std::vector<Poly> h;
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::vector<Elem> c;
    for (int j = 0; j <= deg_bound; ++j) c.push_back(detail::combine_fq(F, basis, ws.kernel[0], i * per + j * basis.size()));
    h.emplace_back(f, std::move(c));
  }
  // primitive, first nonzero coefficient monic
  Poly g;
  for (const auto& a : h)
    if (!a.is_zero()) g = g.is_zero() ? a.monic() : gcd(g, a);
  Elem lead = 0;
  for (auto& a : h) {
    if (!a.is_zero()) a = a / g;
    if (!lead && !a.is_zero()) lead = a.lead();
  }
  for (auto& a : h) {
    a = a.scale(F.inv(lead));
    out.coeffs.emplace_back(a.is_zero() ? Poly(f) : a);
  }
  // re-check with everything the values carry (at least 2·prec); multiplying
  // by h_i of degree <= deg_bound costs deg_bound·scale of precision
  const Laurent check = combine_values(out.coeffs, values, avail);
  out.verify_prec = check.is_zero() ? check.prec() : check.val();
  out.status = (check.is_zero() && check.prec() >= 2 * prec - static_cast<std::int64_t>(deg_bound) * S) ? RelationStatus::found : RelationStatus::unverified;
  return out;
}

// ---------------------------------------------------------------------------
// Anderson-Thakur coefficients.

struct ATCert {
  int n = 0;
  std::int64_t q = 0;
  int l = 0;                 // highest power index l_n
  std::vector<RatFunc> h;    // ζ_C(n) = Σ_{i<=l} h_i L_{θ^i,n}(θ)
  int deg_bound = 0;
  std::int64_t scale = 0;
  std::int64_t search_prec = 0;
  std::int64_t residual_prec = 0;  // the combination vanishes modulo u^residual_prec
};

/// Residual ζ_C(n) - Σ h_i L_{θ^i,n}(θ) modulo u^prec.
inline Laurent at_residual(const FieldPtr& f, const ATCert& c, std::int64_t prec) {
  Laurent acc = zeta(f, c.n, c.scale, prec);
  for (int i = 0; i <= c.l; ++i) {
    if (c.h[i].is_zero()) continue;
    const std::int64_t hdeg = std::max<std::int64_t>(c.h[i].degree(), 0);
    const Laurent L = polylog_value(PolylogSpec{c.n, RatFunc(Poly::monomial(f, i))}, c.scale, prec + hdeg * c.scale);
    acc -= (embed_rat(c.h[i], c.scale, prec - std::min(L.val(), prec)) * L).truncate(prec);
  }
  return acc.truncate(prec);
}

struct ATSearchLimits {
  int max_deg_bound = 12;
  std::int64_t max_prec = 4000;
};

/// Finds h with ζ_C(n) = Σ_{i<=l} h_i L_{θ^i,n}(θ) for the smallest l (with
/// l(q-1) < nq) and, for that l, the smallest degree bound; the search runs at
/// `prec` (escalated when underdetermined) and verifies at 2·prec.
inline std::optional<ATCert> anderson_thakur_coeffs(const FieldPtr& f, int n, std::int64_t prec, ATSearchLimits lim = {}) {
  if (n < 1) throw std::invalid_argument("anderson_thakur_coeffs needs n >= 1");
  const std::int64_t q = f->q();
  if (q < 3) throw std::invalid_argument("anderson_thakur_coeffs needs q >= 3");
  const std::int64_t S = q - 1;
  for (std::int64_t P = prec; P <= lim.max_prec; P *= 2) {
    const Laurent z = zeta(f, n, S, 2 * P);
    std::vector<Laurent> Ls;
    bool underdetermined = false;
    for (int l = 0; (q - 1) * l < n * q; ++l) {
      Ls.push_back(polylog_value(PolylogSpec{n, RatFunc(Poly::monomial(f, l))}, S, 2 * P));
      std::vector<Laurent> vals{z};
      vals.insert(vals.end(), Ls.begin(), Ls.end());
      for (int D = 0; D <= lim.max_deg_bound; ++D) {
        const KRelation rel = find_k_linear_relation(vals, D, P);
        if (rel.status == RelationStatus::underdetermined) {
          underdetermined = true;
          break;
        }
        if (rel.status != RelationStatus::found || rel.coeffs[0].is_zero()) continue;
        ATCert c;
        c.n = n;
        c.q = q;
        c.l = l;
        c.deg_bound = D;
        c.scale = S;
        c.search_prec = P;
        const RatFunc inv = rel.coeffs[0].inverse();
        for (int i = 0; i <= l; ++i) c.h.push_back(-(rel.coeffs[i + 1] * inv));
        const Laurent r = at_residual(f, c, 2 * P);
        if (!r.is_zero()) continue;
        c.residual_prec = r.prec();
        return c;
      }
    }
    if (!underdetermined) break;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Gamma monomials.

struct GammaMonomial {
  std::map<GammaArg, std::int64_t> factors;
  std::int64_t pi_exp = 0;

  GammaMonomial& mul(const GammaArg& r, std::int64_t e) {
    if ((factors[r] += e) == 0) factors.erase(r);
    return *this;
  }
  GammaMonomial operator*(const GammaMonomial& o) const {
    GammaMonomial r = *this;
    for (const auto& [a, e] : o.factors) r.mul(a, e);
    r.pi_exp += o.pi_exp;
    return r;
  }
};

/// One factor r!^e rewritten as r0!^e · (∏ D̄_i^(δ_i))^e with r0 = c/(1-q^ℓ),
/// and r0! = ∏_j ((q^j/(1-q^ℓ))!)^(c_j) for the base-q digits c_j of c.
struct ReductionStep {
  GammaArg arg;
  std::int64_t exponent = 0;
  GammaArg reduced;
  std::int64_t c = 0;
  std::vector<int> basis_digits;                 // c_0..c_{ℓ-1}
  std::vector<std::pair<int, int>> translation;  // (i, δ_i), finite support
};

struct ReductionCert {
  std::int64_t q = 0;
  int p = 0;
  int ell = 1;
  std::vector<std::int64_t> exponent_vector;
  std::vector<ReductionStep> steps;
  std::int64_t pi_exp = 0;
  /// unit(π̃) = ((1/(1-q))!)^(q-1) = ∏_j ((q^j/(1-q^ℓ))!)^(q-1)
  std::vector<std::int64_t> pi_vector;
};

enum class Verdict { algebraic, transcendental };
inline const char* to_string(Verdict v) { return v == Verdict::algebraic ? "algebraic" : "transcendental"; }

struct Classification {
  Verdict verdict = Verdict::algebraic;
  ReductionCert cert;
};

/// Multiplicative order of q modulo b (b coprime to q).
inline int mult_order(std::int64_t q, std::int64_t b) {
  if (b == 1) return 1;
  std::int64_t x = q % b;
  for (int k = 1; k <= b; ++k) {
    if (x == 1) return k;
    x = x * q % b;
  }
  throw std::domain_error("q is not invertible modulo " + std::to_string(b));
}

inline Classification classify_gamma_monomial(int p, std::int64_t q, const GammaMonomial& m) {
  Classification out;
  auto& cert = out.cert;
  cert.q = q;
  cert.p = p;
  std::int64_t ell = 1;
  for (const auto& [r, e] : m.factors) {
    if (r.b % p == 0) throw std::domain_error("gamma argument " + r.str() + " has denominator divisible by p = " + std::to_string(p));
    const std::int64_t o = mult_order(q, r.b);
    ell = ell / std::gcd(ell, o) * o;
  }
  if (detail::qpow_sat(q, ell) >= (1LL << 40)) throw std::domain_error("common ℓ too large");
  cert.ell = static_cast<int>(ell);
  const std::int64_t N = detail::ipow(q, cert.ell) - 1;
  cert.exponent_vector.assign(cert.ell, 0);
  for (const auto& [r, e] : m.factors) {
    ReductionStep st;
    st.arg = r;
    st.exponent = e;
    if (r.is_integer()) {
      st.c = r.a >= 0 ? 0 : N;
    } else {
      const std::int64_t fl = (r.a >= 0) ? r.a / r.b : -((-r.a + r.b - 1) / r.b);
      const std::int64_t a0 = r.a - r.b * (fl + 1);  // r0 = a0/b in (-1, 0)
      st.c = -a0 * (N / r.b);
    }
    st.reduced = GammaArg(-st.c, N);
    std::int64_t c = st.c;
    for (int j = 0; j < cert.ell; ++j) {
      st.basis_digits.push_back(static_cast<int>(c % q));
      c /= q;
    }
    if (st.c == N) st.basis_digits.assign(cert.ell, static_cast<int>(q - 1));
    const auto de = digit_expansion(r, p, q);
    const std::int64_t span = static_cast<std::int64_t>(de.preperiod.size()) + cert.ell;
    for (std::int64_t i = 0; i < span; ++i) {
      const int d = de.digit(i) - st.basis_digits[static_cast<std::size_t>(i % cert.ell)];
      if (d) st.translation.emplace_back(static_cast<int>(i), d);
    }
    for (std::int64_t i = span; i < span + cert.ell * static_cast<std::int64_t>(de.period.size()); ++i)
      if (de.digit(i) != st.basis_digits[static_cast<std::size_t>(i % cert.ell)]) throw std::logic_error("digit tails of " + r.str() + " and its translate differ");
    for (int j = 0; j < cert.ell; ++j) cert.exponent_vector[j] += e * st.basis_digits[j];
    cert.steps.push_back(std::move(st));
  }
  cert.pi_exp = m.pi_exp;
  cert.pi_vector.assign(cert.ell, q - 1);
  for (int j = 0; j < cert.ell; ++j) cert.exponent_vector[j] += m.pi_exp * (q - 1);
  const bool zero = std::all_of(cert.exponent_vector.begin(), cert.exponent_vector.end(), [](std::int64_t v) { return v == 0; });
  out.verdict = zero ? Verdict::algebraic : Verdict::transcendental;
  return out;
}

/// One-unit part of π̃_ℓ: ∏_{i>=1} (1 - θ^(1-q^(ℓi)))^(-1), at any scale.
inline Laurent pi_tilde_unit(const FieldPtr& f, int ell, std::int64_t scale, std::int64_t prec) {
  const std::int64_t Q = detail::qpow_sat(f->q(), ell);
  std::vector<std::int64_t> ks;
  for (std::int64_t Qi = Q; detail::mul_sat(Qi - 1, scale) < prec; Qi = detail::mul_sat(Qi, Q)) ks.push_back(Qi - 1);
  return detail::unit_product(f, scale, ks, prec).inverse(prec);
}

namespace detail {
inline Laurent signed_pow(const Laurent& x, std::int64_t e, std::int64_t prec) {
  if (e >= 0) return x.pow(e).truncate(prec);
  return x.inverse(prec).pow(-e).truncate(prec);
}
}  // namespace detail

struct ReplayResult {
  Laurent lhs;  // one-unit part of the monomial, computed factor by factor
  Laurent rhs;  // reconstructed from the certificate
  bool equal = false;
};

/// Evaluates both sides of the reduction: ∏ (r!)^e · unit(π̃)^k against
/// ∏_j Γ_j^(v_j) · ∏ (∏_i D̄_i^(δ_i))^e, modulo u^prec at the given scale.
inline ReplayResult replay_reduction(const FieldPtr& f, const GammaMonomial& m, const ReductionCert& cert, std::int64_t scale, std::int64_t prec) {
  ReplayResult r;
  r.lhs = Laurent::one(f, scale, prec);
  for (const auto& [arg, e] : m.factors) r.lhs = (r.lhs * detail::signed_pow(goss_factorial(f, arg, scale, prec), e, prec)).truncate(prec);
  if (m.pi_exp) r.lhs = (r.lhs * detail::signed_pow(pi_tilde_unit(f, 1, scale, prec), m.pi_exp, prec)).truncate(prec);
  r.rhs = Laurent::one(f, scale, prec);
  const std::int64_t N = detail::ipow(cert.q, cert.ell) - 1;
  for (int j = 0; j < cert.ell; ++j) {
    if (!cert.exponent_vector[j]) continue;
    const Laurent g = goss_factorial(f, GammaArg(detail::ipow(cert.q, j), -N), scale, prec);
    r.rhs = (r.rhs * detail::signed_pow(g, cert.exponent_vector[j], prec)).truncate(prec);
  }
  for (const auto& st : cert.steps) {
    std::vector<int> digits;
    for (const auto& [i, d] : st.translation) {
      if (static_cast<int>(digits.size()) <= i) digits.resize(i + 1, 0);
      digits[i] = d;
    }
    if (digits.empty()) continue;
    r.rhs = (r.rhs * detail::signed_pow(dbar_digit_product(f, digits, scale, prec), st.exponent, prec)).truncate(prec);
  }
  r.equal = r.lhs.equal_at(r.rhs, prec);
  return r;
}

// ---------------------------------------------------------------------------
// Counting.

/// U(s) = {1 <= n <= s : p ∤ n, (q-1) ∤ n}.
inline std::vector<int> u_set(std::int64_t q, int p, int s) {
  std::vector<int> out;
  for (int n = 1; n <= s; ++n)
    if (n % p != 0 && n % (q - 1) != 0) out.push_back(n);
  return out;
}

struct IndependenceProfile {
  std::int64_t q = 0;
  int p = 0;
  int s = 0;
  int ell = 0;
  std::vector<int> u;
  std::int64_t zeta_part = 0;
  std::int64_t expected_trdeg = 0;
  bool q2_branch = false;  // q = 2: every ζ_C(n) is a k-multiple of π̃^n
};

/// s - ⌊s/p⌋ - ⌊s/(q-1)⌋ + ⌊s/(p(q-1))⌋ + ℓ.
inline IndependenceProfile expected_trdeg(std::int64_t q, int p, int s, int ell) {
  if (s < 1 || ell < 1) throw std::invalid_argument("expected_trdeg needs s, ell >= 1");
  IndependenceProfile r;
  r.q = q;
  r.p = p;
  r.s = s;
  r.ell = ell;
  r.u = u_set(q, p, s);
  r.zeta_part = s - s / p - s / (q - 1) + s / (p * (q - 1));
  r.expected_trdeg = r.zeta_part + ell;
  r.q2_branch = (q == 2);
  return r;
}

}  // namespace ffzeta

#endif  // FFZETA_RELATIONS_HPP
