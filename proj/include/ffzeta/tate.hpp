#ifndef FFZETA_TATE_HPP
#define FFZETA_TATE_HPP

// Truncated power series in t with Laurent coefficients: the first tdeg
// coefficients of an element of the Tate algebra over K_ell.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ffzeta/laurent.hpp"

namespace ffzeta {

/// Lower bound v(c_m) >= a + b·m valid for every coefficient, including
/// those beyond the truncation. kExact in either slot means "no constraint
/// is needed" (the coefficients are exactly zero from there on).
struct GrowthBound {
  std::int64_t a = 0;
  std::int64_t b = 0;
};

class TatePoly {
 public:
  TatePoly() = default;
  TatePoly(std::vector<Laurent> coeffs, std::optional<GrowthBound> bound = std::nullopt)
      : c_(std::move(coeffs)), bound_(bound) {
    if (c_.empty()) throw std::invalid_argument("TatePoly needs tdeg >= 1");
    for (const auto& x : c_)
      if (x.scale() != c_[0].scale() || !(x.F() == c_[0].F())) throw std::invalid_argument("TatePoly coefficients must share field and scale");
  }

  /// Exact constant c (a polynomial of t-degree 0).
  static TatePoly constant(const Laurent& c, int tdeg) {
    std::vector<Laurent> v(tdeg, Laurent(c.field(), c.scale()));
    v[0] = c;
    GrowthBound g{c.is_exact() ? c.val() : std::min(c.val(), c.prec()), kExact};
    return TatePoly(std::move(v), g);
  }
  static TatePoly zero(const FieldPtr& f, std::int64_t scale, int tdeg) {
    return TatePoly(std::vector<Laurent>(tdeg, Laurent(f, scale)), GrowthBound{kExact, kExact});
  }

  int tdeg() const { return static_cast<int>(c_.size()); }
  const Laurent& operator[](int m) const { return c_.at(m); }
  const std::vector<Laurent>& coeffs() const { return c_; }
  const std::optional<GrowthBound>& bound() const { return bound_; }
  const FieldPtr& field() const { return c_[0].field(); }
  std::int64_t scale() const { return c_[0].scale(); }

  /// Smallest absolute precision among the stored coefficients.
  std::int64_t min_prec() const {
    std::int64_t p = kExact;
    for (const auto& x : c_) p = std::min(p, x.prec());
    return p;
  }

  TatePoly truncate_t(int tdeg) const {
    if (tdeg > this->tdeg()) throw std::invalid_argument("cannot extend a t-truncation");
    return TatePoly(std::vector<Laurent>(c_.begin(), c_.begin() + tdeg), bound_);
  }
  TatePoly truncate(std::int64_t prec) const {
    TatePoly r(*this);
    for (auto& x : r.c_) x = x.truncate(prec);
    return r;
  }

  TatePoly operator+(const TatePoly& o) const {
    const int n = std::min(tdeg(), o.tdeg());
    std::vector<Laurent> v;
    v.reserve(n);
    for (int m = 0; m < n; ++m) v.push_back(c_[m] + o.c_[m]);
    return TatePoly(std::move(v), combine_sum(bound_, o.bound_));
  }
  TatePoly operator-() const {
    TatePoly r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
  }
  TatePoly operator-(const TatePoly& o) const { return *this + (-o); }
  TatePoly operator*(const TatePoly& o) const {
    const int n = std::min(tdeg(), o.tdeg());
    std::vector<Laurent> v;
    v.reserve(n);
    for (int m = 0; m < n; ++m) {
      Laurent acc(field(), scale());
      for (int i = 0; i <= m; ++i) {
        if (c_[i].is_zero() && c_[i].is_exact()) continue;
        if (o.c_[m - i].is_zero() && o.c_[m - i].is_exact()) continue;
        acc += c_[i] * o.c_[m - i];
      }
      v.push_back(std::move(acc));
    }
    std::optional<GrowthBound> g;
    if (bound_ && o.bound_) g = GrowthBound{detail::sat_add(bound_->a, o.bound_->a), std::min(bound_->b, o.bound_->b)};
    return TatePoly(std::move(v), g);
  }
  /// Multiplication by a constant (in t) Laurent series.
  TatePoly scaled(const Laurent& c) const {
    TatePoly r(*this);
    for (auto& x : r.c_) x = x * c;
    if (r.bound_) r.bound_->a = detail::sat_add(r.bound_->a, c.val());
    return r;
  }
  TatePoly pow(int n) const {
    if (n < 0) throw std::invalid_argument("negative TatePoly power");
    TatePoly r = constant(Laurent::one(field(), scale()), tdeg());
    for (int i = 0; i < n; ++i) r = r * *this;
    return r;
  }

  /// Entrywise twist x -> x^(q^-j) on every coefficient.
  TatePoly twist(int j) const {
    TatePoly r(*this);
    for (auto& x : r.c_) x = x.twist(j);
    if (r.bound_) {
      std::int64_t Q = 1;
      for (int i = 0; i < (j < 0 ? -j : j); ++i) Q *= field()->q();
      auto sc = [&](std::int64_t v) {
        if (v >= kExact) return kExact;
        return j < 0 ? v * Q : detail::floor_div(v, Q);
      };
      r.bound_ = GrowthBound{sc(r.bound_->a), sc(r.bound_->b)};
    }
    return r;
  }

  bool equal_at(const TatePoly& o, int tdeg, std::int64_t prec) const {
    for (int m = 0; m < tdeg; ++m)
      if (!c_.at(m).equal_at(o.c_.at(m), prec)) return false;
    return true;
  }

 private:
  static std::optional<GrowthBound> combine_sum(const std::optional<GrowthBound>& x, const std::optional<GrowthBound>& y) {
    if (!x || !y) return std::nullopt;
    return GrowthBound{std::min(x->a, y->a), std::min(x->b, y->b)};
  }

  std::vector<Laurent> c_;
  std::optional<GrowthBound> bound_;
};

/// Σ_{m < tdeg} F_m · at^m, with precision also capped by a valuation bound
/// on the omitted tail: either `tail_prec` from the caller or the stored
/// growth bound (which needs b + v(at) > 0).
inline Laurent tate_eval(const TatePoly& F, const Laurent& at, std::optional<std::int64_t> tail_prec = std::nullopt) {
  if (at.scale() != F.scale()) throw std::invalid_argument("tate_eval: scale mismatch");
  std::int64_t tail;
  if (tail_prec) {
    tail = *tail_prec;
  } else if (F.bound()) {
    const auto& g = *F.bound();
    if (g.b >= kExact) {
      tail = kExact;
    } else if (g.b + at.val() > 0) {
      tail = detail::sat_add(g.a, (g.b + at.val()) * F.tdeg());
    } else {
      throw std::domain_error("tate_eval: growth bound does not control the tail at this point");
    }
  } else {
    throw std::invalid_argument("tate_eval: no tail bound available; pass tail_prec");
  }
  Laurent acc(F.field(), F.scale());
  Laurent power = Laurent::one(F.field(), F.scale());
  for (int m = 0; m < F.tdeg(); ++m) {
    if (!(F[m].is_zero() && F[m].is_exact())) acc += F[m] * power;
    if (m + 1 < F.tdeg()) power *= at;
  }
  return acc.truncate(tail);
}

}  // namespace ffzeta

#endif  // FFZETA_TATE_HPP
