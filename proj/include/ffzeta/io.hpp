#ifndef FFZETA_IO_HPP
#define FFZETA_IO_HPP

// JSON forms of series, rational functions, residual reports and
// certificates. Every to_json has a matching reader where the object is an
// input somewhere (series files, certificate replay).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ffzeta/relations.hpp"
#include "ffzeta/tmotive.hpp"

namespace ffzeta::io {

using json = nlohmann::ordered_json;

inline json field_to_json(const Field& f) { return {{"p", f.p()}, {"e", f.e()}, {"ell", f.ell()}}; }

inline FieldPtr field_from_json(const json& j) { return make_field(j.at("p").get<int>(), j.value("e", 1), j.value("ell", 1)); }

// A series line: {"field":..., "scale": S, "val": v, "prec": P, "terms": [[e, "c"], ...]}.
// Exact series carry "prec": null; the exact zero also has "val": null.
inline json series_to_json(const Laurent& x) {
  json j;
  j["field"] = field_to_json(x.F());
  j["scale"] = x.scale();
  if (x.is_zero() && x.is_exact())
    j["val"] = nullptr;
  else
    j["val"] = x.val();
  if (x.is_exact())
    j["prec"] = nullptr;
  else
    j["prec"] = x.prec();
  json terms = json::array();
  for (const auto& [e, c] : x.terms()) terms.push_back(json::array({e, format_elem(x.F(), c)}));
  j["terms"] = std::move(terms);
  return j;
}

/// Reads a series; the field comes from the object when present, else from `f`.
inline Laurent series_from_json(const json& j, FieldPtr f = nullptr) {
  if (j.contains("field")) {
    auto g = field_from_json(j.at("field"));
    if (f && !(*f == *g)) throw std::invalid_argument("series field does not match the configured field");
    f = g;
  }
  if (!f) throw std::invalid_argument("series without field information");
  const std::int64_t scale = j.at("scale").get<std::int64_t>();
  if (scale < 1) throw std::invalid_argument("series scale must be positive");
  const std::int64_t prec = j.at("prec").is_null() ? kExact : j.at("prec").get<std::int64_t>();
  Laurent::Terms terms;
  for (const auto& t : j.at("terms")) terms.emplace_back(t.at(0).get<std::int64_t>(), parse_elem(*f, t.at(1).get<std::string>()));
  Laurent x = Laurent::from_terms(f, scale, prec, std::move(terms));
  if (j.contains("val") && !j.at("val").is_null() && x.val() != j.at("val").get<std::int64_t>())
    throw std::invalid_argument("series \"val\" disagrees with its terms");
  return x;
}

inline json ratfunc_to_json(const RatFunc& r) { return {{"num", format_poly(r.num())}, {"den", format_poly(r.den())}}; }

inline RatFunc ratfunc_from_json(const FieldPtr& f, const json& j) {
  return RatFunc(parse_poly(f, j.at("num").get<std::string>()), parse_poly(f, j.at("den").get<std::string>()));
}

inline json tate_to_json(const TatePoly& x) {
  json j;
  j["tdeg"] = x.tdeg();
  if (x.bound())
    j["bound"] = {{"a", x.bound()->a >= kExact ? json(nullptr) : json(x.bound()->a)}, {"b", x.bound()->b >= kExact ? json(nullptr) : json(x.bound()->b)}};
  else
    j["bound"] = nullptr;
  json c = json::array();
  for (const auto& s : x.coeffs()) c.push_back(series_to_json(s));
  j["coeffs"] = std::move(c);
  return j;
}

inline json det_shape_to_json(const DetShape& d) {
  json j;
  j["ok"] = d.ok;
  if (d.ok) {
    j["constant"] = format_poly(d.c);
    json fs = json::array();
    for (const auto& [k, s] : d.factors) fs.push_back({{"k", k}, {"mult", s}});
    j["factors"] = std::move(fs);
  }
  return j;
}

/// Header data of a block: everything except the Ψ series.
inline json block_to_json(const MotiveBlock& b, bool with_psi = false) {
  json j;
  j["name"] = b.name;
  j["size"] = b.size();
  j["field"] = field_to_json(*b.field);
  j["scale"] = b.scale;
  j["tdeg"] = b.tdeg;
  j["prec"] = b.prec;
  j["twist_order"] = b.twist_order;
  j["phi_offset"] = b.phi_offset;
  json phi = json::array();
  for (const auto& row : b.phi) {
    json r = json::array();
    for (const auto& e : row) r.push_back(format_tpoly(e));
    phi.push_back(std::move(r));
  }
  j["phi"] = std::move(phi);
  j["det_shape"] = det_shape_to_json(b.det_shape);
  if (with_psi) {
    json psi = json::array();
    for (const auto& row : b.psi) {
      json r = json::array();
      for (const auto& e : row) r.push_back(tate_to_json(e));
      psi.push_back(std::move(r));
    }
    j["psi"] = std::move(psi);
  }
  return j;
}

inline json report_to_json(const ResidualReport& r) {
  json j;
  j["pass"] = r.pass;
  j["verified_tdeg"] = r.verified_tdeg;
  j["verified_prec"] = r.verified_prec;
  j["requested_prec"] = r.requested_prec;
  json rv = json::array();
  for (const auto& row : r.residual_valuation) {
    json jr = json::array();
    for (const auto& v : row) jr.push_back(v ? json(*v) : json(nullptr));
    rv.push_back(std::move(jr));
  }
  j["residual_valuation"] = std::move(rv);
  return j;
}

inline json fq_relation_to_json(const Field& F, const std::optional<FqRelation>& r, std::int64_t prec) {
  json j;
  j["over"] = "fq";
  j["status"] = r ? "found" : "none";
  j["prec"] = prec;
  if (r) {
    json c = json::array();
    for (Elem e : r->coeffs) c.push_back(format_elem(F, e));
    j["coeffs"] = std::move(c);
    j["kernel_dim"] = r->kernel_dim;
    j["candidate"] = r->candidate;
  }
  return j;
}

inline json k_relation_to_json(const KRelation& r) {
  json j;
  j["over"] = "k";
  j["status"] = to_string(r.status);
  j["deg_bound"] = r.deg_bound;
  j["search_prec"] = r.search_prec;
  j["verify_prec"] = r.verify_prec;
  j["kernel_dim"] = r.kernel_dim;
  json c = json::array();
  for (const auto& h : r.coeffs) c.push_back(ratfunc_to_json(h));
  j["coeffs"] = std::move(c);
  return j;
}

inline json at_cert_to_json(const ATCert& c) {
  json j;
  j["n"] = c.n;
  j["q"] = c.q;
  j["l"] = c.l;
  json h = json::array();
  for (const auto& x : c.h) h.push_back(ratfunc_to_json(x));
  j["h"] = std::move(h);
  j["deg_bound"] = c.deg_bound;
  j["scale"] = c.scale;
  j["search_prec"] = c.search_prec;
  j["residual_prec"] = c.residual_prec;
  return j;
}

inline ATCert at_cert_from_json(const FieldPtr& f, const json& j) {
  ATCert c;
  c.n = j.at("n").get<int>();
  c.q = j.at("q").get<std::int64_t>();
  if (c.q != f->q()) throw std::invalid_argument("certificate is for a different q");
  c.l = j.at("l").get<int>();
  for (const auto& h : j.at("h")) c.h.push_back(ratfunc_from_json(f, h));
  if (static_cast<int>(c.h.size()) != c.l + 1) throw std::invalid_argument("certificate needs l+1 coefficients");
  c.deg_bound = j.at("deg_bound").get<int>();
  c.scale = j.at("scale").get<std::int64_t>();
  c.search_prec = j.at("search_prec").get<std::int64_t>();
  c.residual_prec = j.at("residual_prec").get<std::int64_t>();
  return c;
}

inline json reduction_cert_to_json(const ReductionCert& c) {
  json j;
  j["q"] = c.q;
  j["p"] = c.p;
  j["ell"] = c.ell;
  j["exponent_vector"] = c.exponent_vector;
  j["pi_exp"] = c.pi_exp;
  j["pi_vector"] = c.pi_vector;
  json steps = json::array();
  for (const auto& s : c.steps) {
    json t = json::array();
    for (const auto& [i, d] : s.translation) t.push_back(json::array({i, d}));
    steps.push_back({{"arg", s.arg.str()},
                     {"exponent", s.exponent},
                     {"reduced", s.reduced.str()},
                     {"c", s.c},
                     {"basis_digits", s.basis_digits},
                     {"translation", std::move(t)}});
  }
  j["steps"] = std::move(steps);
  return j;
}

inline GammaArg parse_fraction(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return GammaArg(std::stoll(s), 1);
  return GammaArg(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

inline ReductionCert reduction_cert_from_json(const json& j) {
  ReductionCert c;
  c.q = j.at("q").get<std::int64_t>();
  c.p = j.at("p").get<int>();
  c.ell = j.at("ell").get<int>();
  c.exponent_vector = j.at("exponent_vector").get<std::vector<std::int64_t>>();
  c.pi_exp = j.at("pi_exp").get<std::int64_t>();
  c.pi_vector = j.at("pi_vector").get<std::vector<std::int64_t>>();
  for (const auto& s : j.at("steps")) {
    ReductionStep st;
    st.arg = parse_fraction(s.at("arg").get<std::string>());
    st.exponent = s.at("exponent").get<std::int64_t>();
    st.reduced = parse_fraction(s.at("reduced").get<std::string>());
    st.c = s.at("c").get<std::int64_t>();
    st.basis_digits = s.at("basis_digits").get<std::vector<int>>();
    for (const auto& t : s.at("translation")) st.translation.emplace_back(t.at(0).get<int>(), t.at(1).get<int>());
    c.steps.push_back(std::move(st));
  }
  return c;
}

inline json profile_to_json(const IndependenceProfile& r) {
  return {{"q", r.q},
          {"p", r.p},
          {"s", r.s},
          {"ell", r.ell},
          {"u_set", r.u},
          {"zeta_part", r.zeta_part},
          {"expected_trdeg", r.expected_trdeg},
          {"q2_branch", r.q2_branch}};
}

// ---------------------------------------------------------------------------
// Gamma monomials as text, e.g. "(-1/8)!^2 * (1/2)!^-1 * pi^3". The grammar is
// written out in docs/monomial-grammar.md; U+2212 is accepted for '-', and
// "π̃", "π" and "pi" all denote the Carlitz period.

namespace detail {
inline std::string normalize_monomial(std::string_view s) {
  std::string t;
  for (std::size_t i = 0; i < s.size();) {
    if (s[i] == ' ' || s[i] == '\t') {
      ++i;
    } else if (s.substr(i, 3) == "\xE2\x88\x92") {
      t += '-';
      i += 3;
    } else if (s.substr(i, 4) == "\xCF\x80\xCC\x83") {  // π̃
      t += 'P';
      i += 4;
    } else if (s.substr(i, 2) == "\xCF\x80") {
      t += 'P';
      i += 2;
    } else if (s.substr(i, 2) == "pi") {
      t += 'P';
      i += 2;
    } else {
      t += s[i++];
    }
  }
  return t;
}
}  // namespace detail

inline GammaMonomial parse_monomial(std::string_view text) {
  const std::string t = detail::normalize_monomial(text);
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) -> void {
    throw std::invalid_argument("monomial: " + why + " at offset " + std::to_string(pos) + " in \"" + std::string(text) + "\"");
  };
  auto integer = [&]() {
    bool neg = false;
    if (pos < t.size() && t[pos] == '-') {
      neg = true;
      ++pos;
    }
    const std::size_t st = pos;
    while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
    if (st == pos) fail("expected an integer");
    if (pos - st > 15) fail("integer too large");
    const std::int64_t v = std::stoll(t.substr(st, pos - st));
    return neg ? -v : v;
  };
  GammaMonomial m;
  if (t == "1") return m;
  if (t.empty()) fail("empty expression");
  for (;;) {
    bool is_pi = false;
    GammaArg arg;
    if (pos < t.size() && t[pos] == 'P') {
      is_pi = true;
      ++pos;
    } else {
      const bool paren = pos < t.size() && t[pos] == '(';
      if (paren) ++pos;
      const std::int64_t a = integer();
      std::int64_t b = 1;
      if (pos < t.size() && t[pos] == '/') {
        ++pos;
        if (pos < t.size() && t[pos] == '-') fail("denominator must be positive");
        b = integer();
        if (b == 0) fail("zero denominator");
      }
      if (paren) {
        if (pos >= t.size() || t[pos] != ')') fail("expected ')'");
        ++pos;
      }
      if (pos >= t.size() || t[pos] != '!') fail("expected '!'");
      ++pos;
      arg = GammaArg(a, b);
    }
    std::int64_t e = 1;
    if (pos < t.size() && t[pos] == '^') {
      ++pos;
      const bool paren = pos < t.size() && t[pos] == '(';
      if (paren) ++pos;
      e = integer();
      if (paren) {
        if (pos >= t.size() || t[pos] != ')') fail("expected ')'");
        ++pos;
      }
    }
    if (is_pi)
      m.pi_exp += e;
    else
      m.mul(arg, e);
    if (pos == t.size()) break;
    if (t[pos] != '*') fail("expected '*'");
    ++pos;
  }
  return m;
}

inline std::string format_monomial(const GammaMonomial& m) {
  std::string out;
  for (const auto& [r, e] : m.factors) {
    if (!out.empty()) out += " * ";
    out += "(" + r.str() + ")!";
    if (e != 1) out += "^" + std::to_string(e);
  }
  if (m.pi_exp) {
    if (!out.empty()) out += " * ";
    out += "pi";
    if (m.pi_exp != 1) out += "^" + std::to_string(m.pi_exp);
  }
  return out.empty() ? "1" : out;
}

}  // namespace ffzeta::io

#endif  // FFZETA_IO_HPP
