#ifndef FFZETA_TMOTIVE_HPP
#define FFZETA_TMOTIVE_HPP

// Difference-equation data Ψ^(-m) = Φ Ψ for Carlitz motives C_ℓ, tensor powers
// of the Carlitz motive, polylogarithm extensions, and their direct sums.
//
// Everything is checked in forward-twisted form Ψ = Φ^(m) Ψ^(m): forward
// twisting only raises coefficients to q-powers, so it is always defined.
// A block stores Φ^(phi_offset) rather than Φ when Φ itself has entries
// outside A[t] (e.g. α^(-1) = α^(1/q) in the polylogarithm blocks).

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ffzeta/carlitz.hpp"
#include "ffzeta/laurent.hpp"
#include "ffzeta/poly.hpp"
#include "ffzeta/tate.hpp"

namespace ffzeta {

/// Polynomial in t with coefficients in A = F_q[θ] (an element of A[t]).
class TPoly {
 public:
  TPoly() = default;
  explicit TPoly(std::vector<Poly> c) : c_(std::move(c)) { trim(); }
  static TPoly constant(const Poly& a) { return TPoly({a}); }
  /// t - a
  static TPoly t_minus(const Poly& a) { return TPoly({-a, Poly::one(a.field())}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Poly>& coeffs() const { return c_; }
  Poly coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : Poly(); }
  /// Largest θ-degree among the coefficients (-1 for zero).
  std::int64_t theta_degree() const {
    std::int64_t d = -1;
    for (const auto& a : c_) d = std::max(d, a.degree());
    return d;
  }

  TPoly operator+(const TPoly& o) const {
    std::vector<Poly> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = coeff(static_cast<int>(k)) + o.coeff(static_cast<int>(k));
    return TPoly(std::move(r));
  }
  TPoly operator-() const {
    TPoly r(*this);
    for (auto& a : r.c_) a = -a;
    return r;
  }
  TPoly operator-(const TPoly& o) const { return *this + (-o); }
  TPoly operator*(const TPoly& o) const {
    if (is_zero() || o.is_zero()) return TPoly();
    std::vector<Poly> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
    return TPoly(std::move(r));
  }
  TPoly pow(int n) const {
    TPoly r({Poly::one(field_or_throw())});
    for (int i = 0; i < n; ++i) r = r * *this;
    return r;
  }
  bool operator==(const TPoly& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (std::size_t k = 0; k < c_.size(); ++k)
      if (!(c_[k] == o.c_[k])) return false;
    return true;
  }
  /// Forward twist: every coefficient a(θ) -> a^(j) (θ -> θ^(q^j), constants Frobenius-twisted).
  TPoly twist_forward(int j) const {
    TPoly r(*this);
    for (auto& a : r.c_) a = a.twist_forward(j);
    return r;
  }
  /// Value at t = a (a polynomial in θ).
  Poly eval_t(const Poly& a) const {
    Poly r;
    for (int k = degree(); k >= 0; --k) r = r * a + c_[k];
    return r;
  }
  /// Division by the monic linear polynomial t - a; returns quotient and remainder.
  std::pair<TPoly, Poly> divrem_linear(const Poly& a) const {
    if (is_zero()) return {TPoly(), Poly()};
    std::vector<Poly> qc(c_.size() - 1);
    Poly carry;
    for (int k = degree(); k >= 1; --k) {
      carry = carry * a + c_[k];
      qc[k - 1] = carry;
    }
    Poly rem = carry * a + c_[0];
    return {TPoly(std::move(qc)), rem};
  }
  TatePoly to_tate(std::int64_t scale, int tdeg, const FieldPtr& f) const {
    std::vector<Laurent> v(tdeg, Laurent(f, scale));
    for (int k = 0; k < tdeg && k <= degree(); ++k)
      if (!c_[k].is_zero()) v[k] = embed_poly(c_[k], scale);
    return TatePoly(std::move(v));
  }

 private:
  const FieldPtr& field_or_throw() const {
    for (const auto& a : c_)
      if (a.field()) return a.field();
    throw std::logic_error("TPoly without a field");
  }
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Poly> c_;
};

using TPolyMatrix = std::vector<std::vector<TPoly>>;
using TateMatrix = std::vector<std::vector<TatePoly>>;

inline std::string format_tpoly(const TPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    const Poly& a = p.coeffs()[k];
    if (a.is_zero()) continue;
    if (!out.empty()) out += "+";
    std::string as = format_poly(a);
    const bool compound = as.find_first_of("+-") != std::string::npos && a.coeffs().size() > 1;
    if (k == 0) {
      out += as;
      continue;
    }
    if (as != "1") out += (compound ? "(" + as + ")" : as) + "*";
    out += k == 1 ? "t" : "t^" + std::to_string(k);
  }
  return out;
}

/// det = c · ∏ (t - θ^(q^k))^(s_k), or ok = false when no such form exists.
struct DetShape {
  bool ok = false;
  Poly c;
  std::vector<std::pair<int, int>> factors;  // (k, s_k)
  int total_degree() const {
    int s = 0;
    for (const auto& fs : factors) s += fs.second;
    return s;
  }
};

/// Determinant over A[t]. Block-diagonal structure is detected and each
/// connected block is expanded by a dynamic program over column subsets.
inline TPoly determinant(const TPolyMatrix& M) {
  const int n = static_cast<int>(M.size());
  if (n == 0) throw std::invalid_argument("determinant of an empty matrix");
  // connected components of the bipartite row/column graph
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s};
    comp[s] = ncomp;
    while (!stack.empty()) {
      const int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < n; ++j) {
        if (comp[j] >= 0) continue;
        if (!M[i][j].is_zero() || !M[j][i].is_zero()) {
          comp[j] = ncomp;
          stack.push_back(j);
        }
      }
    }
    ++ncomp;
  }
  FieldPtr f;
  for (const auto& row : M)
    for (const auto& e : row)
      for (const auto& a : e.coeffs())
        if (!f && a.field()) f = a.field();
  if (!f) return TPoly();
  TPoly det = TPoly::constant(Poly::one(f));
  for (int c = 0; c < ncomp; ++c) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (comp[i] == c) idx.push_back(i);
    const int m = static_cast<int>(idx.size());
    if (m > 20) throw std::invalid_argument("determinant: connected block too large");
    std::vector<TPoly> dp(std::size_t{1} << m);
    dp[0] = TPoly::constant(Poly::one(f));
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      if (dp[mask].is_zero()) continue;
      const int r = std::popcount(mask);
      if (r == m) continue;
      for (int col = 0; col < m; ++col) {
        if (mask & (1u << col)) continue;
        const TPoly& a = M[idx[r]][idx[col]];
        if (a.is_zero()) continue;
        TPoly term = dp[mask] * a;
        if (std::popcount(mask >> (col + 1)) % 2 != 0) term = -term;
        dp[mask | (1u << col)] = dp[mask | (1u << col)] + term;
      }
    }
    det = det * dp[(1u << m) - 1];
  }
  return det;
}

/// Factors det as c · ∏_k (t - θ^(q^k))^(s_k) for 0 <= k <= kmax.
inline DetShape determinant_shape(const TPoly& det, int kmax) {
  DetShape out;
  if (det.is_zero()) return out;
  const FieldPtr f = det.coeffs().back().field();
  TPoly rest = det;
  for (int k = 0; k <= kmax && rest.degree() > 0; ++k) {
    const Poly root = Poly::monomial(f, detail::ipow(f->q(), k));
    int s = 0;
    while (rest.degree() > 0) {
      auto [quo, rem] = rest.divrem_linear(root);
      if (!rem.is_zero()) break;
      rest = quo;
      ++s;
    }
    if (s) out.factors.emplace_back(k, s);
  }
  if (rest.degree() != 0) return out;
  out.c = rest.coeffs()[0];
  out.ok = true;
  return out;
}

struct MotiveBlock {
  std::string name;
  FieldPtr field;
  std::int64_t scale = 1;
  int tdeg = 1;
  std::int64_t prec = 0;  // requested verification precision
  int twist_order = 1;    // m: the equation is Ψ^(-m) = Φ Ψ
  int phi_offset = 0;     // stored matrix is Φ^(phi_offset)
  TPolyMatrix phi;
  TateMatrix psi;
  DetShape det_shape;     // of the stored matrix

  int size() const { return static_cast<int>(phi.size()); }
};

struct ResidualReport {
  std::vector<std::vector<std::optional<std::int64_t>>> residual_valuation;  // nullopt: zero in the window
  int verified_tdeg = 0;
  std::int64_t verified_prec = 0;
  std::int64_t requested_prec = 0;
  bool pass = false;
};

namespace detail {

inline TPolyMatrix twist_matrix(const TPolyMatrix& M, int j) {
  TPolyMatrix r = M;
  for (auto& row : r)
    for (auto& e : row) e = e.twist_forward(j);
  return r;
}

inline std::int64_t matrix_theta_degree(const TPolyMatrix& M) {
  std::int64_t d = 0;
  for (const auto& row : M)
    for (const auto& e : row) d = std::max(d, e.theta_degree());
  return d;
}

inline int matrix_t_degree(const TPolyMatrix& M) {
  int d = 0;
  for (const auto& row : M)
    for (const auto& e : row) d = std::max(d, e.degree());
  return d;
}

// Precision to build Ψ at so that Φ^(m)·Ψ^(m) is still known modulo u^prec:
// twisting multiplies precision by q^m, and Φ^(m) can lower valuations by
// its θ-degree times the scale.
inline std::int64_t working_prec(std::int64_t prec, std::int64_t q, int m, std::int64_t theta_deg, std::int64_t scale) {
  const std::int64_t Q = ipow(q, m);
  return std::max(prec, ceil_div(prec + theta_deg * scale, Q)) + 1;
}

inline void finish_shape(MotiveBlock& b) {
  b.det_shape = determinant_shape(determinant(b.phi), b.phi_offset + b.twist_order + 1);
}

inline Elem xi_element(const Field& f, int ell) {
  if (f.ell() % ell != 0) throw std::invalid_argument("carried field F_{q^" + std::to_string(f.ell()) + "} does not contain F_{q^" + std::to_string(ell) + "}");
  const std::int64_t big = f.order() - 1;
  const std::int64_t small = ipow(f.q(), ell) - 1;
  return f.gen_pow(big / small);
}

}  // namespace detail

/// Φ_ℓ (companion matrix; (t-θ) when ℓ = 1) with Ψ_ℓ[i][k] = (ξ_ℓ^k Ω_ℓ)^(-i).
/// ξ_ℓ is the carried field's generator raised to (q^ell' - 1)/(q^ℓ - 1), i.e.
/// the generator itself when the carried field is F_{q^ℓ}.
inline MotiveBlock build_carlitz_block(const FieldPtr& f, int ell, int tdeg, std::int64_t prec, std::int64_t scale) {
  if (ell < 1) throw std::invalid_argument("carlitz block needs ell >= 1");
  MotiveBlock b;
  b.name = "carlitz:" + std::to_string(ell);
  b.field = f;
  b.scale = scale;
  b.tdeg = tdeg;
  b.prec = prec;
  b.twist_order = 1;
  b.phi_offset = 0;
  const TPoly t_minus_theta = TPoly::t_minus(Poly::theta(f));
  b.phi.assign(ell, std::vector<TPoly>(ell));
  if (ell == 1) {
    b.phi[0][0] = t_minus_theta;
  } else {
    for (int i = 0; i + 1 < ell; ++i) b.phi[i][i + 1] = TPoly::constant(Poly::one(f));
    b.phi[ell - 1][0] = t_minus_theta;
  }
  const Elem xi = detail::xi_element(*f, ell);
  const std::int64_t pw = detail::working_prec(prec, f->q(), 1, detail::matrix_theta_degree(detail::twist_matrix(b.phi, 1)), scale);
  b.psi.assign(ell, std::vector<TatePoly>());
  for (int i = 0; i < ell; ++i) {
    const TatePoly om = omega_tate(f, ell, i, tdeg, scale, pw);
    for (int k = 0; k < ell; ++k) {
      const Elem c = f->frobenius(f->pow(xi, k), -i);
      b.psi[i].push_back(om.scaled(Laurent::constant(f, scale, c)));
    }
  }
  detail::finish_shape(b);
  return b;
}

/// C^⊗n: Φ = (t-θ)^n, Ψ = Ω^n.
inline MotiveBlock build_tensor_block(const FieldPtr& f, int n, int tdeg, std::int64_t prec, std::int64_t scale) {
  if (n < 1) throw std::invalid_argument("tensor block needs n >= 1");
  MotiveBlock b;
  b.name = "tensor:" + std::to_string(n);
  b.field = f;
  b.scale = scale;
  b.tdeg = tdeg;
  b.prec = prec;
  b.phi = {{TPoly::t_minus(Poly::theta(f)).pow(n)}};
  const std::int64_t pw = detail::working_prec(prec, f->q(), 1, detail::matrix_theta_degree(detail::twist_matrix(b.phi, 1)), scale);
  b.psi = {{omega_tate(f, 1, 0, tdeg, scale, pw).pow(n)}};
  detail::finish_shape(b);
  return b;
}

/// L_{α,n}(t) = α + Σ_{i>=1} α^(q^i) / ∏_{j=1..i} (t - θ^(q^j))^n through t^(tdeg-1),
/// coefficients modulo u^prec. Growth bound v(c_k) >= scale·(q k - deg α).
inline TatePoly polylog_tate(const Poly& alpha, int n, int tdeg, std::int64_t scale, std::int64_t prec) {
  const FieldPtr& f = alpha.field();
  const std::int64_t q = f->q();
  if (alpha.is_zero()) return TatePoly::zero(f, scale, tdeg);
  const std::int64_t dega = alpha.degree();
  if ((q - 1) * dega >= n * q) throw std::domain_error("polylog argument violates |α| < |θ|^(nq/(q-1))");
  // last term index whose valuation can be below prec
  int imax = 0;
  std::int64_t geo = 0;
  for (int i = 1;; ++i) {
    geo += detail::qpow_sat(q, i);
    const std::int64_t tv = detail::mul_sat(scale, n * geo - detail::qpow_sat(q, i) * dega);
    if (tv >= prec) break;
    imax = i;
  }
  const std::int64_t tprec = prec + detail::qpow_sat(q, imax) * std::max<std::int64_t>(dega, 0) * scale;
  const Laurent a = embed_poly(alpha, scale);
  std::vector<Laurent> zero(tdeg, Laurent(f, scale));
  std::vector<Laurent> c0 = zero;
  c0[0] = a;
  TatePoly acc(std::move(c0));
  TatePoly T = TatePoly::constant(Laurent::one(f, scale), tdeg);
  for (int i = 1; i <= imax; ++i) {
    const std::int64_t Q = detail::qpow_sat(q, i);
    std::vector<Laurent> lin;  // 1/(t - θ^Q) = -Σ_k θ^(-Q(k+1)) t^k
    for (int k = 0; k < tdeg; ++k) lin.push_back(-Laurent::theta_pow(f, scale, -Q * (k + 1)));
    const TatePoly inv_lin(std::move(lin));
    for (int r = 0; r < n; ++r) T = (T * inv_lin).truncate(tprec);
    acc = acc + T.scaled(a.twist(-i)).truncate(prec);
  }
  std::vector<Laurent> out = acc.coeffs();
  for (auto& x : out) x = x.truncate(prec);
  return TatePoly(std::move(out), GrowthBound{-scale * dega, scale * q});
}

/// Polylogarithm block for weight n and arguments α_0..α_m in A:
///   Φ = [[(t-θ)^n, 0], [α_j^(-1)(t-θ)^n, I]],  Ψ = [[Ω^n, 0], [Ω^n L_{α_j,n}, I]].
/// Stored as Φ^(1), whose entries α_j (t-θ^q)^n lie in A[t].
inline MotiveBlock build_polylog_block(const FieldPtr& f, int n, const std::vector<Poly>& alphas, int tdeg, std::int64_t prec, std::int64_t scale) {
  if (n < 1) throw std::invalid_argument("polylog block needs n >= 1");
  if (alphas.empty()) throw std::invalid_argument("polylog block needs at least one argument");
  const std::int64_t q = f->q();
  const int sz = static_cast<int>(alphas.size()) + 1;
  MotiveBlock b;
  b.name = "polylog:" + std::to_string(n);
  // spelled as the block-spec grammar reads it back
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const std::string a = format_poly(alphas[i]);
    b.name += (i ? "," : ":") + (a.find('+') != std::string::npos ? "(" + a + ")" : a);
  }
  b.field = f;
  b.scale = scale;
  b.tdeg = tdeg;
  b.prec = prec;
  b.twist_order = 1;
  b.phi_offset = 1;
  const TPoly base = TPoly::t_minus(Poly::monomial(f, q)).pow(n);
  b.phi.assign(sz, std::vector<TPoly>(sz));
  b.phi[0][0] = base;
  std::int64_t maxdeg = 0;
  for (int j = 0; j < sz - 1; ++j) {
    const Poly& a = alphas[j];
    if ((q - 1) * std::max<std::int64_t>(a.degree(), 0) >= n * q) throw std::domain_error("polylog argument " + format_poly(a) + " violates |α| < |θ|^(nq/(q-1))");
    b.phi[j + 1][0] = TPoly::constant(a) * base;
    b.phi[j + 1][j + 1] = TPoly::constant(Poly::one(f));
    maxdeg = std::max<std::int64_t>(maxdeg, a.degree());
  }
  const std::int64_t pw = detail::working_prec(prec, q, 1, detail::matrix_theta_degree(b.phi), scale);
  // Ω^n has valuation n·m·q >= 0 and L has valuation >= -deg α·scale.
  const TatePoly om = omega_tate(f, 1, 0, tdeg, scale, pw + maxdeg * scale).pow(n);
  b.psi.assign(sz, std::vector<TatePoly>(sz, TatePoly::zero(f, scale, tdeg)));
  b.psi[0][0] = om.truncate(pw);
  for (int j = 0; j < sz - 1; ++j) {
    b.psi[j + 1][0] = (om * polylog_tate(alphas[j], n, tdeg, scale, pw)).truncate(pw);
    b.psi[j + 1][j + 1] = TatePoly::constant(Laurent::one(f, scale), tdeg);
  }
  detail::finish_shape(b);
  return b;
}

/// Block-diagonal sum. Blocks with a smaller Φ offset are forward-twisted to
/// the common offset first.
inline MotiveBlock direct_sum(const std::vector<MotiveBlock>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("direct_sum of no blocks");
  const MotiveBlock& b0 = blocks[0];
  int offset = 0;
  std::string name;
  int n = 0;
  for (const auto& b : blocks) {
    if (b.tdeg != b0.tdeg || b.prec != b0.prec || b.twist_order != b0.twist_order || b.scale != b0.scale || !(*b.field == *b0.field))
      throw std::invalid_argument("direct_sum: blocks differ in tdeg, precision, twist order, scale or field");
    offset = std::max(offset, b.phi_offset);
    name += (name.empty() ? "" : "+") + b.name;
    n += b.size();
  }
  if (offset > b0.twist_order) throw std::invalid_argument("direct_sum: Φ offset exceeds twist order");
  MotiveBlock r;
  r.name = name;
  r.field = b0.field;
  r.scale = b0.scale;
  r.tdeg = b0.tdeg;
  r.prec = b0.prec;
  r.twist_order = b0.twist_order;
  r.phi_offset = offset;
  r.phi.assign(n, std::vector<TPoly>(n));
  r.psi.assign(n, std::vector<TatePoly>(n, TatePoly::zero(b0.field, b0.scale, b0.tdeg)));
  int at = 0;
  for (const auto& b : blocks) {
    const TPolyMatrix ph = detail::twist_matrix(b.phi, offset - b.phi_offset);
    for (int i = 0; i < b.size(); ++i)
      for (int j = 0; j < b.size(); ++j) {
        r.phi[at + i][at + j] = ph[i][j];
        r.psi[at + i][at + j] = b.psi[i][j];
      }
    at += b.size();
  }
  detail::finish_shape(r);
  return r;
}

/// Verifies Ψ = Φ^(m) Ψ^(m) coefficientwise. Only t-degrees d < tdeg - deg_t Φ
/// are compared (the sound window), and only modulo u^P where P is the
/// smallest precision on either side; pass also needs P >= the block's
/// requested precision.
inline ResidualReport check_difference_equation(const MotiveBlock& b) {
  ResidualReport rep;
  rep.requested_prec = b.prec;
  const int n = b.size();
  if (b.twist_order < b.phi_offset) throw std::invalid_argument("twist order below Φ offset");
  const TPolyMatrix phiF = detail::twist_matrix(b.phi, b.twist_order - b.phi_offset);
  const int window = b.tdeg - detail::matrix_t_degree(phiF);
  rep.verified_tdeg = std::max(window, 0);
  std::vector<std::vector<TatePoly>> psiF(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) psiF[i].push_back(b.psi[i][j].twist(-b.twist_order));
  std::vector<std::vector<TatePoly>> rhs(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      TatePoly acc = TatePoly::zero(b.field, b.scale, b.tdeg);
      for (int k = 0; k < n; ++k) {
        if (phiF[i][k].is_zero()) continue;
        acc = acc + phiF[i][k].to_tate(b.scale, b.tdeg, b.field) * psiF[k][j];
      }
      rhs[i].push_back(std::move(acc));
    }
  }
  std::int64_t P = kExact;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int d = 0; d < window; ++d) P = std::min({P, b.psi[i][j][d].prec(), rhs[i][j][d].prec()});
  rep.verified_prec = P;
  bool all_zero = true;
  rep.residual_valuation.assign(n, std::vector<std::optional<std::int64_t>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int d = 0; d < window; ++d) {
        const Laurent res = (b.psi[i][j][d] - rhs[i][j][d]).truncate(P);
        if (!res.is_zero()) {
          all_zero = false;
          auto& slot = rep.residual_valuation[i][j];
          slot = slot ? std::min(*slot, res.val()) : res.val();
        }
      }
  rep.pass = all_zero && window >= 1 && P >= b.prec;
  return rep;
}

/// σ̄ = σ^ℓ form of a block with twist order 1: Φ̃ = Φ^(-(ℓ-1)) ⋯ Φ^(-1) Φ,
/// stored forward-twisted as Φ̃^(ℓ-1) = Φ Φ^(1) ⋯ Φ^(ℓ-1); Ψ is unchanged.
inline MotiveBlock sigma_bar_form(const MotiveBlock& b, int ell) {
  if (ell < 1) throw std::invalid_argument("sigma_bar_form needs ell >= 1");
  if (b.twist_order != 1 || b.phi_offset != 0) throw std::invalid_argument("sigma_bar_form needs an untwisted block of twist order 1");
  if (ell == 1) return b;
  const int n = b.size();
  TPolyMatrix acc = b.phi;
  for (int k = 1; k < ell; ++k) {
    const TPolyMatrix tw = detail::twist_matrix(b.phi, k);
    TPolyMatrix prod(n, std::vector<TPoly>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
          if (!acc[i][l].is_zero() && !tw[l][j].is_zero()) prod[i][j] = prod[i][j] + acc[i][l] * tw[l][j];
    acc = std::move(prod);
  }
  MotiveBlock r = b;
  r.name = b.name + ":sigma-bar";
  r.phi = std::move(acc);
  r.phi_offset = ell - 1;
  r.twist_order = ell;
  detail::finish_shape(r);
  return r;
}

/// The diagonal σ̄-data of C_ℓ: Φ̃^(ℓ-1) = diag(t - θ^(q^(ℓ-1-i))), Ψ̃ = diag(Ω_ℓ^(-i)).
inline MotiveBlock carlitz_sigma_bar_block(const FieldPtr& f, int ell, int tdeg, std::int64_t prec, std::int64_t scale) {
  MotiveBlock b;
  b.name = "carlitz-sigma-bar:" + std::to_string(ell);
  b.field = f;
  b.scale = scale;
  b.tdeg = tdeg;
  b.prec = prec;
  b.twist_order = ell;
  b.phi_offset = ell - 1;
  b.phi.assign(ell, std::vector<TPoly>(ell));
  for (int i = 0; i < ell; ++i) b.phi[i][i] = TPoly::t_minus(Poly::monomial(f, detail::ipow(f->q(), ell - 1 - i)));
  const std::int64_t pw = detail::working_prec(prec, f->q(), ell, detail::matrix_theta_degree(detail::twist_matrix(b.phi, 1)), scale);
  b.psi.assign(ell, std::vector<TatePoly>(ell, TatePoly::zero(f, scale, tdeg)));
  for (int i = 0; i < ell; ++i) b.psi[i][i] = omega_tate(f, ell, i, tdeg, scale, pw);
  detail::finish_shape(b);
  return b;
}

/// Copy of the block with one Ψ coefficient changed: u^e is added to
/// Ψ[i][j]'s t^d coefficient. By default e is one past that coefficient's
/// valuation: a change in the leading term alone can be matched by the
/// twisted side (for Ω, c·u^v with c ∈ F_q solves the t^0 equation). A
/// coefficient that vanishes below the requested precision gets u^1 rather
/// than a constant, which twisting would leave fixed.
inline MotiveBlock perturb_psi(const MotiveBlock& b, int i, int j, int d, std::optional<std::int64_t> e = std::nullopt) {
  MotiveBlock r = b;
  std::vector<Laurent> c = r.psi.at(i).at(j).coeffs();
  const Laurent& x = c.at(d);
  const std::int64_t ex = e ? *e : ((x.is_zero() || x.val() + 1 >= b.prec) ? 1 : x.val() + 1);
  c[d] = x + Laurent::monomial(b.field, b.scale, ex);
  r.psi[i][j] = TatePoly(std::move(c), r.psi[i][j].bound());
  return r;
}

}  // namespace ffzeta

#endif  // FFZETA_TMOTIVE_HPP
