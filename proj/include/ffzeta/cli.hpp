#ifndef FFZETA_CLI_HPP
#define FFZETA_CLI_HPP

// Command-line front end. run() parses argv, dispatches one command and
// writes either text or JSON; it returns the process exit code:
//   0  success / verification passed
//   1  verification failed (or a search hit its resource cap)
//   2  usage or input error

#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ffzeta/io.hpp"

namespace ffzeta::cli {

using io::json;

struct RunConfig {
  std::int64_t q = 3;
  int p = 0;  // 0: derived from q
  int e = 0;
  int ell = 1;
  std::int64_t prec = 200;
  int tdeg = 8;
  std::int64_t scale = 0;  // 0: the natural scale q^ell - 1
  std::string format = "text";
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Outcome {
  json doc;
  std::vector<std::string> text;
  int code = 0;
};

namespace detail {

inline void resolve_characteristic(RunConfig& c) {
  if (c.p) {
    if (!ffzeta::detail::is_prime(c.p)) throw UsageError("--p must be prime");
    if (c.e == 0) c.e = 1;
    if (c.e < 1) throw UsageError("--e must be >= 1");
    c.q = ffzeta::detail::ipow(c.p, c.e);
    return;
  }
  if (c.q < 2) throw UsageError("--q must be a prime power >= 2");
  int p = 2;
  while (c.q % p != 0) ++p;
  std::int64_t x = c.q;
  int e = 0;
  while (x % p == 0) {
    x /= p;
    ++e;
  }
  if (x != 1) throw UsageError("--q " + std::to_string(c.q) + " is not a prime power");
  c.p = p;
  c.e = e;
}

inline json config_json(const RunConfig& c, std::int64_t scale) {
  return {{"q", c.q}, {"p", c.p}, {"e", c.e}, {"ell", c.ell}, {"prec", c.prec}, {"tdeg", c.tdeg}, {"scale", scale}};
}

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) { return a / std::gcd(a, b) * b; }

inline std::int64_t pick_scale(const RunConfig& c, std::int64_t required) {
  if (!c.scale) return required;
  if (c.scale % required != 0) throw UsageError("--scale must be a multiple of " + std::to_string(required));
  return c.scale;
}

// fn(W) computed with growing working precision until `rel` u-digits past the
// valuation are known; the result is cut there so output does not depend on
// how far the escalation went.
template <class Fn>
Laurent relative_value(std::int64_t rel, Fn&& fn) {
  const std::int64_t step = std::max<std::int64_t>(rel, 16);
  Laurent x;
  for (std::int64_t W = step; W <= 64 * step; W += step) {
    x = fn(W);
    if (x.is_exact()) return x;
    if (!x.is_zero() && x.prec() - x.val() >= rel) return x.truncate(x.val() + rel);
  }
  return x;
}

// fn(W) with growing working precision until it is known modulo u^target.
template <class Fn>
Laurent absolute_value(std::int64_t target, std::int64_t step, Fn&& fn) {
  step = std::max<std::int64_t>(step, 16);
  for (std::int64_t W = std::max(target, step); W <= std::max(target, step) + 64 * step; W += step) {
    Laurent x = fn(W);
    if (x.prec() >= target) return x.truncate(target);
  }
  throw std::logic_error("precision target u^" + std::to_string(target) + " not reached");
}

inline json check_json(const std::string& name, std::int64_t scale, std::int64_t target, const Laurent& lhs, const Laurent& rhs, Outcome& out) {
  const Laurent r = lhs - rhs;
  const bool pass = r.zero_at(target);
  json j;
  j["name"] = name;
  j["scale"] = scale;
  j["prec"] = target;
  j["known_prec"] = std::min(r.prec(), kExact - 1);
  if (r.is_exact()) j["known_prec"] = nullptr;
  j["residual_val"] = r.is_zero() ? json(nullptr) : json(r.val());
  j["pass"] = pass;
  std::string line = std::string(pass ? "PASS" : "FAIL") + "  " + name + "  scale=" + std::to_string(scale) + "  mod u^" + std::to_string(target);
  line += r.is_zero() ? "  residual 0" : "  residual valuation " + std::to_string(r.val());
  out.text.push_back(line);
  if (!pass) out.code = 1;
  return j;
}

inline std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

inline int to_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw UsageError("expected an integer for " + what + ", got \"" + s + "\"");
  }
  if (used != s.size()) throw UsageError("expected an integer for " + what + ", got \"" + s + "\"");
  return v;
}

struct BlockRequest {
  std::string kind;
  int arg = 0;
  std::vector<std::string> alphas;
};

// spec := block {"+" block};  block := kind ":" int [":" poly {"," poly}]
inline std::vector<BlockRequest> parse_block_spec(const std::string& spec) {
  std::vector<BlockRequest> out;
  for (const auto& part : split_top(spec, '+')) {
    const auto fields = split_top(part, ':');
    if (fields.size() < 2) throw UsageError("block \"" + part + "\" needs the form kind:arg");
    BlockRequest r;
    r.kind = fields[0];
    r.arg = to_int(fields[1], "block argument");
    if (r.kind == "polylog") {
      if (fields.size() != 3) throw UsageError("polylog block needs polylog:n:alpha[,alpha...]");
      for (auto a : split_top(fields[2], ',')) {
        if (a.size() >= 2 && a.front() == '(' && a.back() == ')') a = a.substr(1, a.size() - 2);
        r.alphas.push_back(a);
      }
    } else if (r.kind == "carlitz" || r.kind == "carlitz-sigma-bar" || r.kind == "tensor") {
      if (fields.size() != 2) throw UsageError("block \"" + part + "\" takes one argument");
    } else {
      throw UsageError("unknown block kind \"" + r.kind + "\" (carlitz, carlitz-sigma-bar, tensor, polylog)");
    }
    if (r.arg < 1) throw UsageError("block argument must be >= 1");
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<int> parse_int_list(const std::string& s, std::size_t n, const std::string& what) {
  std::vector<int> v;
  for (const auto& x : split_top(s, ',')) v.push_back(to_int(x, what));
  if (v.size() != n) throw UsageError(what + " needs " + std::to_string(n) + " comma-separated integers");
  return v;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Commands. Each returns an Outcome; none writes to the streams directly.

inline Outcome value_outcome(const std::string& command, const RunConfig& c, std::int64_t scale, const std::string& label, const Laurent& v) {
  Outcome o;
  o.doc["command"] = command;
  o.doc["config"] = detail::config_json(c, scale);
  o.doc["label"] = label;
  o.doc["value"] = io::series_to_json(v);
  o.text.push_back(label + " = " + format_laurent(v));
  return o;
}

inline Outcome cmd_zeta(const RunConfig& c, int s) {
  if (s < 1) throw UsageError("--s must be >= 1");
  const auto f = make_field(c.p, c.e, c.ell);
  const std::int64_t S = detail::pick_scale(c, natural_scale(*f, c.ell));
  const Laurent v = detail::relative_value(c.prec, [&](std::int64_t W) { return zeta(f, s, S, W); });
  return value_outcome("zeta", c, S, "zeta(" + std::to_string(s) + ")", v);
}

inline Outcome cmd_gamma(const RunConfig& c, std::int64_t a, std::int64_t b) {
  const auto f = make_field(c.p, c.e, c.ell);
  const std::int64_t S = detail::pick_scale(c, natural_scale(*f, c.ell));
  const GammaArg r(a, b);
  if (r.b % c.p == 0) throw UsageError("denominator of " + r.str() + " is divisible by p = " + std::to_string(c.p));
  const Laurent v = detail::relative_value(c.prec, [&](std::int64_t W) { return goss_factorial(f, r, S, W); });
  Outcome o = value_outcome("gamma", c, S, "(" + r.str() + ")!", v);
  const auto de = digit_expansion(r, c.p, c.q);
  o.doc["digits"] = {{"preperiod", de.preperiod}, {"period", de.period}};
  return o;
}

inline Outcome cmd_pi(const RunConfig& c) {
  const auto f = make_field(c.p, c.e, c.ell);
  const std::int64_t S = detail::pick_scale(c, natural_scale(*f, c.ell));
  const Laurent v = detail::relative_value(c.prec, [&](std::int64_t W) { return pi_tilde(f, c.ell, S, W); });
  return value_outcome("pi", c, S, "pi_" + std::to_string(c.ell), v);
}

inline Outcome cmd_omega(const RunConfig& c, int j) {
  const auto f = make_field(c.p, c.e, c.ell);
  const std::int64_t S = detail::pick_scale(c, natural_scale(*f, c.ell));
  if (j < 0 || j >= c.ell) throw UsageError("--j must satisfy 0 <= j <= ell-1");
  const Laurent v = detail::relative_value(c.prec, [&](std::int64_t W) { return omega_value(f, c.ell, j, S, W); });
  return value_outcome("omega", c, S, "Omega_" + std::to_string(c.ell) + "^(-" + std::to_string(j) + ")(theta)", v);
}

inline Outcome cmd_bernoulli(const RunConfig& c, int n) {
  if (n < 0) throw UsageError("--n must be >= 0");
  const auto f = make_field(c.p, c.e, 1);
  const RatFunc B = bernoulli_carlitz(f, n);
  Outcome o;
  o.doc["command"] = "bernoulli";
  o.doc["config"] = detail::config_json(c, 0);
  o.doc["label"] = "B_" + std::to_string(n);
  o.doc["value"] = io::ratfunc_to_json(B);
  o.text.push_back("B_" + std::to_string(n) + " = " + format_ratfunc(B));
  return o;
}

inline Outcome cmd_polylog(const RunConfig& c, int n, const std::string& alpha) {
  if (n < 1) throw UsageError("--n must be >= 1");
  const auto f = make_field(c.p, c.e, c.ell);
  const std::int64_t S = detail::pick_scale(c, natural_scale(*f, c.ell));
  const PolylogSpec spec{n, parse_ratfunc(f, alpha)};
  if (!spec.converges()) throw UsageError("polylog argument violates |alpha| < |theta|^(nq/(q-1))");
  const Laurent v = detail::relative_value(c.prec, [&](std::int64_t W) { return polylog_value(spec, S, W); });
  return value_outcome("polylog", c, S, "L_{" + format_ratfunc(spec.alpha) + "," + std::to_string(n) + "}(theta)", v);
}

inline Outcome verify_outcome(const std::string& command, const RunConfig& c, std::int64_t scale) {
  Outcome o;
  o.doc["command"] = command;
  o.doc["config"] = detail::config_json(c, scale);
  o.doc["checks"] = json::array();
  return o;
}

inline void finish_verify(Outcome& o) {
  o.doc["pass"] = (o.code == 0);
  o.text.push_back(o.code == 0 ? "pass" : "fail");
}

// One-unit parts: unit Ω_ℓ^(-(ℓ-j)) = Γ_j / Γ_{j-1}^q with Γ_j = (q^j/(1-q^ℓ))!,
// indices mod ℓ (j = 0 is the Chowla-Selberg case). Checked at the natural
// scale and at scale 1, where precision 200 reaches much deeper digits.
inline Outcome cmd_verify_chowla_selberg(const RunConfig& c) {
  const auto f = make_field(c.p, c.e, c.ell);
  const int ell = c.ell;
  const std::int64_t nat = natural_scale(*f, ell);
  const std::int64_t S = detail::pick_scale(c, nat);
  Outcome o = verify_outcome("verify chowla-selberg", c, S);
  const std::int64_t N = nat;
  std::vector<std::int64_t> scales{S};
  if (S != 1) scales.push_back(1);
  const std::int64_t P = c.prec;
  for (std::int64_t sc : scales) {
    auto gamma_j = [&](int j) { return goss_factorial(f, GammaArg(ffzeta::detail::ipow(c.q, ((j % ell) + ell) % ell), -N), sc, P); };
    for (int j = 0; j < ell; ++j) {
      const int idx = (ell - j) % ell;  // Ω^(-idx)
      Laurent lhs;
      if (sc == S)
        lhs = detail::absolute_value(P, P, [&](std::int64_t W) { return one_unit_decompose(omega_value(f, ell, idx, sc, W)).unit; });
      else
        lhs = omega_unit(f, ell, idx, sc, P);
      const Laurent rhs = (gamma_j(j) * gamma_j(j - 1).inverse(P).pow(c.q)).truncate(P);
      const std::string name = j == 0 ? "unit Omega_" + std::to_string(ell) + "(theta) = G_0/G_" + std::to_string(ell - 1) + "^q"
                                      : "unit Omega_" + std::to_string(ell) + "^(-" + std::to_string(idx) + ")(theta) = G_" + std::to_string(j) + "/G_" +
                                            std::to_string(j - 1) + "^q";
      o.doc["checks"].push_back(detail::check_json(name, sc, P, lhs, rhs, o));
    }
  }
  finish_verify(o);
  return o;
}

// (c/(1-q^ℓ))! = ∏_i ((q^i/(1-q^ℓ))!)^(c_i) over the base-q digits of c.
inline Outcome cmd_verify_digit_formula(const RunConfig& c, std::optional<std::int64_t> only) {
  const auto f = make_field(c.p, c.e, c.ell);
  const std::int64_t N = natural_scale(*f, c.ell);
  const std::int64_t S = detail::pick_scale(c, N);
  Outcome o = verify_outcome("verify digit-formula", c, S);
  const std::int64_t P = c.prec;
  std::vector<Laurent> basis;
  for (int i = 0; i < c.ell; ++i) basis.push_back(goss_factorial(f, GammaArg(ffzeta::detail::ipow(c.q, i), -N), S, P));
  for (std::int64_t cc = 1; cc < N; ++cc) {
    if (only && *only != cc) continue;
    const Laurent lhs = goss_factorial(f, GammaArg(cc, -N), S, P);
    Laurent rhs = Laurent::one(f, S, P);
    const auto d = base_q_digits(cc, c.q);
    for (std::size_t i = 0; i < d.size(); ++i) rhs = (rhs * basis[i].pow(d[i])).truncate(P);
    o.doc["checks"].push_back(detail::check_json("(" + GammaArg(cc, -N).str() + ")! digit product", S, P, lhs, rhs, o));
  }
  if (only && (*only < 1 || *only >= N)) throw UsageError("--c must satisfy 0 < c < q^ell - 1");
  finish_verify(o);
  return o;
}

inline Outcome cmd_verify_omega_period(const RunConfig& c) {
  const auto f = make_field(c.p, c.e, c.ell);
  const std::int64_t S = detail::pick_scale(c, natural_scale(*f, c.ell));
  Outcome o = verify_outcome("verify omega-period", c, S);
  const std::int64_t P = c.prec;
  const Laurent lhs = detail::absolute_value(P, P, [&](std::int64_t W) {
    const std::int64_t extra = 2 * S * c.q + W;
    return (omega_value(f, c.ell, 0, S, extra) * pi_tilde(f, c.ell, S, W)).truncate(W);
  });
  o.doc["checks"].push_back(detail::check_json("Omega_" + std::to_string(c.ell) + "(theta) * pi_" + std::to_string(c.ell) + " = -1", S, P, lhs,
                                               Laurent::constant(f, S, f->neg(1)), o));
  finish_verify(o);
  return o;
}

// ζ(n)·Γ_{n+1} = B_n·π̃^n for (q-1) | n, compared to `prec` digits past the
// valuation of the left side.
inline Outcome cmd_verify_euler_carlitz(const RunConfig& c, int n) {
  if (n < 1 || n % (c.q - 1) != 0) throw UsageError("--n must be a positive multiple of q-1 = " + std::to_string(c.q - 1));
  const auto f = make_field(c.p, c.e, c.ell);
  const std::int64_t S = detail::pick_scale(c, natural_scale(*f, c.ell));
  Outcome o = verify_outcome("verify euler-carlitz", c, S);
  const Poly G = gamma_carlitz(f, n + 1);
  const RatFunc B = bernoulli_carlitz(f, n);
  const std::int64_t T = c.prec - G.degree() * S;
  const Laurent lhs = detail::absolute_value(T, c.prec, [&](std::int64_t W) { return zeta(f, n, S, W) * embed_poly(G, S); });
  const Laurent rhs = detail::absolute_value(T, c.prec, [&](std::int64_t W) { return embed_rat(B, S, W) * pi_tilde(f, 1, S, W).pow(n); });
  o.doc["bernoulli"] = io::ratfunc_to_json(B);
  o.doc["gamma"] = format_poly(G);
  o.text.push_back("B_" + std::to_string(n) + " = " + format_ratfunc(B));
  o.text.push_back("Gamma_" + std::to_string(n + 1) + " = " + format_poly(G));
  o.doc["checks"].push_back(detail::check_json("zeta(" + std::to_string(n) + ")*Gamma_" + std::to_string(n + 1) + " = B_" + std::to_string(n) + "*pi^" + std::to_string(n),
                                               S, T, lhs, rhs, o));
  finish_verify(o);
  return o;
}

inline Outcome cmd_verify_frobenius(const RunConfig& c, int n, int m) {
  if (n < 1 || m < 0) throw UsageError("need --n >= 1 and --m >= 0");
  const std::int64_t pm = ffzeta::detail::ipow(c.p, m);
  const auto f = make_field(c.p, c.e, c.ell);
  const std::int64_t S = detail::pick_scale(c, natural_scale(*f, c.ell));
  Outcome o = verify_outcome("verify frobenius", c, S);
  const std::int64_t P = c.prec;
  const Laurent lhs = zeta(f, pm * n, S, P);
  const Laurent rhs = zeta(f, n, S, P).pow(pm).truncate(P);
  o.doc["checks"].push_back(detail::check_json("zeta(" + std::to_string(pm * n) + ") = zeta(" + std::to_string(n) + ")^" + std::to_string(pm), S, P, lhs, rhs, o));
  finish_verify(o);
  return o;
}

inline MotiveBlock build_blocks(const RunConfig& c, const std::string& spec, std::int64_t& scale_out) {
  const auto reqs = detail::parse_block_spec(spec);
  int ell = c.ell;
  for (const auto& r : reqs)
    if (r.kind == "carlitz" || r.kind == "carlitz-sigma-bar") ell = std::lcm(ell, r.arg);
  const auto f = make_field(c.p, c.e, ell);
  std::int64_t req = c.q - 1;
  for (const auto& r : reqs)
    if (r.kind == "carlitz" || r.kind == "carlitz-sigma-bar") req = detail::lcm64(req, natural_scale(*f, r.arg));
  const std::int64_t S = detail::pick_scale(c, req);
  scale_out = S;
  std::vector<MotiveBlock> blocks;
  for (const auto& r : reqs) {
    if (r.kind == "carlitz") blocks.push_back(build_carlitz_block(f, r.arg, c.tdeg, c.prec, S));
    if (r.kind == "carlitz-sigma-bar") blocks.push_back(carlitz_sigma_bar_block(f, r.arg, c.tdeg, c.prec, S));
    if (r.kind == "tensor") blocks.push_back(build_tensor_block(f, r.arg, c.tdeg, c.prec, S));
    if (r.kind == "polylog") {
      std::vector<Poly> alphas;
      for (const auto& a : r.alphas) alphas.push_back(parse_poly(f, a));
      blocks.push_back(build_polylog_block(f, r.arg, alphas, c.tdeg, c.prec, S));
    }
  }
  return blocks.size() == 1 ? blocks[0] : direct_sum(blocks);
}

inline Outcome cmd_verify_motive(const RunConfig& c, const std::string& spec, const std::string& perturb, bool with_psi) {
  if (c.tdeg < 1) throw UsageError("--tdeg must be >= 1");
  std::int64_t S = 0;
  MotiveBlock b = build_blocks(c, spec, S);
  Outcome o = verify_outcome("verify motive", c, S);
  if (!perturb.empty()) {
    const auto v = detail::parse_int_list(perturb, 3, "--perturb");
    if (v[0] < 0 || v[0] >= b.size() || v[1] < 0 || v[1] >= b.size() || v[2] < 0 || v[2] >= b.tdeg) throw UsageError("--perturb index out of range");
    b = perturb_psi(b, v[0], v[1], v[2]);
    o.doc["perturbed"] = v;
  }
  const ResidualReport rep = check_difference_equation(b);
  o.doc["block"] = io::block_to_json(b, with_psi);
  o.doc["report"] = io::report_to_json(rep);
  o.text.push_back("block " + b.name + "  size " + std::to_string(b.size()) + "  scale " + std::to_string(S) + "  twist order " + std::to_string(b.twist_order));
  o.text.push_back("sound window t^0..t^" + std::to_string(rep.verified_tdeg - 1) + "  verified mod u^" + std::to_string(rep.verified_prec) + " (requested " +
                   std::to_string(rep.requested_prec) + ")");
  for (int i = 0; i < b.size(); ++i)
    for (int j = 0; j < b.size(); ++j)
      if (rep.residual_valuation[i][j]) o.text.push_back("  residual at (" + std::to_string(i) + "," + std::to_string(j) + "): valuation " + std::to_string(*rep.residual_valuation[i][j]));
  if (!rep.pass) o.code = 1;
  finish_verify(o);
  return o;
}

inline std::vector<Laurent> read_series_file(const std::string& path, const FieldPtr& f) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::vector<Laurent> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(io::series_from_json(json::parse(line), f));
    } catch (const std::exception& e) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (out.empty()) throw UsageError(path + " holds no series");
  return out;
}

inline Outcome cmd_relation_find(const RunConfig& c, const std::string& path, const std::string& over, int deg_bound) {
  const auto f0 = make_field(c.p, c.e, c.ell);
  const auto values = read_series_file(path, nullptr);
  const FieldPtr f = values[0].field();
  if (f->q() != f0->q()) throw UsageError("series field has q = " + std::to_string(f->q()) + ", configured q = " + std::to_string(c.q));
  std::int64_t avail = kExact;
  for (const auto& v : values) avail = std::min(avail, v.prec());
  Outcome o;
  o.doc["command"] = "relation find";
  o.doc["config"] = detail::config_json(c, values[0].scale());
  json inputs;
  inputs["file"] = path;
  inputs["count"] = values.size();
  json precs = json::array();
  for (const auto& v : values) precs.push_back(v.is_exact() ? json(nullptr) : json(v.prec()));
  inputs["precisions"] = std::move(precs);
  o.doc["inputs"] = std::move(inputs);
  if (over == "fq") {
    const std::int64_t P = std::min(c.prec, avail);
    const auto rel = find_fq_linear_relation(values, P);
    o.doc["relation"] = io::fq_relation_to_json(*f, rel, P);
    if (!rel) {
      o.text.push_back("no F_q-linear relation modulo u^" + std::to_string(P));
    } else {
      std::string s;
      for (std::size_t i = 0; i < rel->coeffs.size(); ++i) s += (i ? ", " : "") + format_elem(*f, rel->coeffs[i]);
      o.text.push_back("candidate F_q-relation modulo u^" + std::to_string(P) + ": (" + s + ")  kernel dimension " + std::to_string(rel->kernel_dim));
    }
  } else {
    if (deg_bound < 0) throw UsageError("--deg-bound must be >= 0");
    const std::int64_t P = std::min(c.prec, avail >= kExact ? c.prec : avail / 2);
    const KRelation rel = find_k_linear_relation(values, deg_bound, P);
    o.doc["relation"] = io::k_relation_to_json(rel);
    std::string line = std::string(to_string(rel.status)) + " (degree bound " + std::to_string(deg_bound) + ", search mod u^" + std::to_string(P) + ")";
    if (!rel.coeffs.empty()) {
      line += ":";
      for (const auto& h : rel.coeffs) line += "  [" + format_ratfunc(h) + "]";
    }
    o.text.push_back(line);
  }
  return o;
}

inline Outcome cmd_relation_at(const RunConfig& c, int n, int max_deg) {
  if (n < 1) throw UsageError("--n must be >= 1");
  if (c.q < 3) throw UsageError("anderson-thakur needs q >= 3");
  const auto f = make_field(c.p, c.e, 1);
  ATSearchLimits lim;
  lim.max_deg_bound = max_deg;
  lim.max_prec = std::max<std::int64_t>(lim.max_prec, c.prec);
  const auto cert = anderson_thakur_coeffs(f, n, c.prec, lim);
  Outcome o;
  o.doc["command"] = "relation anderson-thakur";
  o.doc["config"] = detail::config_json(c, c.q - 1);
  if (!cert) {
    o.doc["status"] = "cap-reached";
    o.text.push_back("no certificate within degree bound " + std::to_string(max_deg) + " and precision cap " + std::to_string(lim.max_prec));
    o.code = 1;
    return o;
  }
  o.doc["status"] = "found";
  o.doc["certificate"] = io::at_cert_to_json(*cert);
  std::string line = "zeta(" + std::to_string(n) + ") =";
  for (int i = 0; i <= cert->l; ++i) line += std::string(i ? " +" : "") + " [" + format_ratfunc(cert->h[i]) + "]*L_{theta^" + std::to_string(i) + "," + std::to_string(n) + "}";
  o.text.push_back(line);
  o.text.push_back("l = " + std::to_string(cert->l) + ", degree bound " + std::to_string(cert->deg_bound) + ", residual 0 mod u^" + std::to_string(cert->residual_prec));
  return o;
}

inline Outcome cmd_classify(const RunConfig& c, const std::string& expr, bool replay) {
  GammaMonomial m;
  try {
    m = io::parse_monomial(expr);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  for (const auto& [r, e] : m.factors)
    if (r.b % c.p == 0) throw UsageError("denominator of " + r.str() + " is divisible by p = " + std::to_string(c.p));
  const Classification cl = classify_gamma_monomial(c.p, c.q, m);
  Outcome o;
  o.doc["command"] = "classify";
  o.doc["config"] = detail::config_json(c, 0);
  o.doc["monomial"] = io::format_monomial(m);
  o.doc["verdict"] = to_string(cl.verdict);
  o.doc["certificate"] = io::reduction_cert_to_json(cl.cert);
  std::string vec;
  for (auto v : cl.cert.exponent_vector) vec += (vec.empty() ? "" : ", ") + std::to_string(v);
  o.text.push_back(io::format_monomial(m) + ": " + to_string(cl.verdict));
  o.text.push_back("ell = " + std::to_string(cl.cert.ell) + ", exponent vector (" + vec + ")");
  if (replay) {
    const auto f = make_field(c.p, c.e, 1);
    const ReplayResult rr = replay_reduction(f, m, cl.cert, 1, c.prec);
    o.doc["replay"] = {{"scale", 1}, {"prec", c.prec}, {"equal", rr.equal}};
    o.text.push_back(std::string("replay mod u^") + std::to_string(c.prec) + ": " + (rr.equal ? "unit parts agree" : "MISMATCH"));
    if (!rr.equal) o.code = 1;
  }
  return o;
}

inline Outcome cmd_trdeg(const RunConfig& c, int s) {
  if (s < 1 || c.ell < 1) throw UsageError("--s and --ell must be >= 1");
  const IndependenceProfile r = expected_trdeg(c.q, c.p, s, c.ell);
  Outcome o;
  o.doc["command"] = "trdeg";
  o.doc["config"] = detail::config_json(c, 0);
  o.doc["profile"] = io::profile_to_json(r);
  o.text.push_back(std::to_string(r.expected_trdeg));
  return o;
}

// ---------------------------------------------------------------------------

inline void emit(const Outcome& o, const RunConfig& c, std::ostream& out) {
  if (c.format == "series") {
    if (!o.doc.contains("value") || !o.doc["value"].contains("terms")) throw UsageError("--format series applies to zeta, gamma, pi, omega and polylog");
    out << o.doc["value"].dump() << "\n";
  } else if (c.format == "json") {
    out << o.doc.dump(2) << "\n";
  } else {
    for (const auto& l : o.text) out << l << "\n";
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact special values over F_q[theta]: zeta, gamma, periods, t-motives, relations.", "ffzeta"};
  app.require_subcommand(1);
  app.add_option("--q", cfg.q, "field size q (a prime power)")->capture_default_str();
  app.add_option("--p", cfg.p, "characteristic (alternative to --q)");
  app.add_option("--e", cfg.e, "extension degree with --p");
  app.add_option("--ell", cfg.ell, "degree ell of the constant extension")->capture_default_str();
  app.add_option("--prec", cfg.prec, "u-adic precision")->capture_default_str();
  app.add_option("--tdeg", cfg.tdeg, "t-truncation degree for Tate-algebra data")->capture_default_str();
  app.add_option("--scale", cfg.scale, "u-scale S (theta = -u^-S); default q^ell - 1");
  app.add_option("--format", cfg.format, "output format; series: one-line series JSON for value commands")->check(CLI::IsMember({"text", "json", "series"}))->capture_default_str();

  auto sub = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    CLI::App* s = parent->add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  int s_arg = 1, n_arg = 1, m_arg = 1, j_arg = 0, deg_bound = 0, max_deg = 12;
  std::int64_t num = -1, den = 1;
  std::optional<std::int64_t> c_arg;
  std::string alpha, block, perturb, values, over = "k", monomial;
  bool with_psi = false, replay = false;

  auto* zeta_cmd = sub(&app, "zeta", "Carlitz zeta value zeta_C(s)");
  zeta_cmd->add_option("--s", s_arg, "argument s >= 1")->required();
  auto* gamma_cmd = sub(&app, "gamma", "Goss factorial (A/B)! at a p-adic rational");
  gamma_cmd->add_option("--num", num, "numerator A")->required();
  gamma_cmd->add_option("--den", den, "denominator B (prime to p)")->required();
  auto* pi_cmd = sub(&app, "pi", "Carlitz period pi_ell");
  auto* omega_cmd = sub(&app, "omega", "Omega_ell^(-j)(theta)");
  omega_cmd->add_option("--j", j_arg, "twist index 0 <= j < ell")->capture_default_str();
  auto* bern_cmd = sub(&app, "bernoulli", "Bernoulli-Carlitz number B_n (exact)");
  bern_cmd->add_option("--n", n_arg, "index n >= 0")->required();
  auto* poly_cmd = sub(&app, "polylog", "Carlitz polylogarithm L_{alpha,n}(theta)");
  poly_cmd->add_option("--n", n_arg, "weight n >= 1")->required();
  poly_cmd->add_option("--alpha", alpha, "argument in F_q(theta), e.g. theta or (theta+1)/theta")->required();

  auto* verify = sub(&app, "verify", "check an identity; exit 0 on pass, 1 on fail");
  verify->require_subcommand(1);
  auto* v_cs = sub(verify, "chowla-selberg", "unit Omega_ell^(-i)(theta) against Goss factorial quotients");
  auto* v_digit = sub(verify, "digit-formula", "(c/(1-q^ell))! as a product of the basis factorials");
  v_digit->add_option("--c", c_arg, "a single 0 < c < q^ell - 1 (default: all)");
  auto* v_op = sub(verify, "omega-period", "Omega_ell(theta) * pi_ell = -1");
  auto* v_ec = sub(verify, "euler-carlitz", "zeta(n) Gamma_{n+1} = B_n pi^n for (q-1) | n");
  v_ec->add_option("--n", n_arg, "n, a multiple of q-1")->required();
  auto* v_fr = sub(verify, "frobenius", "zeta(p^m n) = zeta(n)^(p^m)");
  v_fr->add_option("--n", n_arg, "n >= 1")->required();
  v_fr->add_option("--m", m_arg, "m >= 0")->capture_default_str();
  auto* v_mo = sub(verify, "motive", "difference equation Psi^(-m) = Phi Psi for a block");
  v_mo->add_option("--block", block, "block spec, e.g. carlitz:2+tensor:1+polylog:2:1,theta")->required();
  v_mo->add_option("--perturb", perturb, "I,J,D: disturb Psi[I][J] at t^D before checking");
  v_mo->add_flag("--with-psi", with_psi, "include the Psi series in JSON output");

  auto* rel = sub(&app, "relation", "relation search");
  rel->require_subcommand(1);
  auto* r_find = sub(rel, "find", "linear relation among series read from a file (one series JSON per line)");
  r_find->add_option("--values", values, "file of series JSON lines")->required();
  r_find->add_option("--over", over, "coefficients in F_q or in k = F_q(theta)")->check(CLI::IsMember({"fq", "k"}))->capture_default_str();
  r_find->add_option("--deg-bound", deg_bound, "theta-degree bound for k-coefficients")->capture_default_str();
  auto* r_at = sub(rel, "anderson-thakur", "zeta(n) as a k-combination of L_{theta^i,n}(theta)");
  r_at->add_option("--n", n_arg, "n >= 1")->required();
  r_at->add_option("--max-deg-bound", max_deg, "largest degree bound tried")->capture_default_str();

  auto* cls = sub(&app, "classify", "algebraic/transcendental verdict for a gamma monomial");
  cls->add_option("--monomial", monomial, "e.g. \"(-1/8)!^2 * pi\"")->required();
  cls->add_flag("--replay", replay, "re-evaluate the reduction numerically (scale 1)");
  auto* trd = sub(&app, "trdeg", "expected transcendence degree of zeta values with a gamma tower");
  trd->add_option("--s", s_arg, "s >= 1")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    detail::resolve_characteristic(cfg);
    if (cfg.ell < 1) throw UsageError("--ell must be >= 1");
    if (cfg.prec < 1) throw UsageError("--prec must be >= 1");
    if (cfg.scale < 0) throw UsageError("--scale must be positive");
    Outcome o;
    if (*zeta_cmd) o = cmd_zeta(cfg, s_arg);
    else if (*gamma_cmd) o = cmd_gamma(cfg, num, den);
    else if (*pi_cmd) o = cmd_pi(cfg);
    else if (*omega_cmd) o = cmd_omega(cfg, j_arg);
    else if (*bern_cmd) o = cmd_bernoulli(cfg, n_arg);
    else if (*poly_cmd) o = cmd_polylog(cfg, n_arg, alpha);
    else if (*v_cs) o = cmd_verify_chowla_selberg(cfg);
    else if (*v_digit) o = cmd_verify_digit_formula(cfg, c_arg);
    else if (*v_op) o = cmd_verify_omega_period(cfg);
    else if (*v_ec) o = cmd_verify_euler_carlitz(cfg, n_arg);
    else if (*v_fr) o = cmd_verify_frobenius(cfg, n_arg, m_arg);
    else if (*v_mo) o = cmd_verify_motive(cfg, block, perturb, with_psi);
    else if (*r_find) o = cmd_relation_find(cfg, values, over, deg_bound);
    else if (*r_at) o = cmd_relation_at(cfg, n_arg, max_deg);
    else if (*cls) o = cmd_classify(cfg, monomial, replay);
    else if (*trd) o = cmd_trdeg(cfg, s_arg);
    std::ostringstream buf;
    emit(o, cfg, buf);
    out << buf.str();
    return o.code;
  } catch (const UsageError& e) {
    err << "ffzeta: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "ffzeta: invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "ffzeta: outside the domain: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "ffzeta: error: " << e.what() << "\n";
    return 2;
  }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"ffzeta"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace ffzeta::cli

#endif  // FFZETA_CLI_HPP
