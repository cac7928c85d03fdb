#include <gtest/gtest.h>

#include <random>

#include "ffzeta/relations.hpp"

using namespace ffzeta;

namespace {

GammaMonomial mono(std::initializer_list<std::tuple<std::int64_t, std::int64_t, std::int64_t>> fs, std::int64_t pi = 0) {
  GammaMonomial m;
  for (auto [a, b, e] : fs) m.mul(GammaArg(a, b), e);
  m.pi_exp = pi;
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// F_q-linear relations

TEST(FqRelations, RecoversAPlantedRelation) {
  auto f = make_field(3, 1, 2);
  const std::int64_t S = 8;
  const Laurent a = zeta(f, 1, S, 200), b = zeta(f, 2, S, 200), c = pi_tilde(f, 1, S, 200);
  // 2a + b + 0c + ... with a planted dependent column
  const Laurent d = a * Laurent::constant(f, S, 2) + b;
  const auto rel = find_fq_linear_relation({a, b, c, d}, 200);
  ASSERT_TRUE(rel.has_value());
  EXPECT_EQ(rel->kernel_dim, 1);
  // normalized: first nonzero entry is 1, so (1, 2, 0, 1)·(a, b, c, 2a+b) = 0 with entries in F_3
  Laurent check(f, S, 200);
  const std::vector<Laurent> v{a, b, c, d};
  for (std::size_t i = 0; i < v.size(); ++i) check += v[i] * Laurent::constant(f, S, rel->coeffs[i]);
  EXPECT_TRUE(check.zero_at(200));
  EXPECT_EQ(rel->coeffs[2], 0u);
}

// For q = 3 none of 1, π̃, ζ(1), ζ(2), Ω_2(θ), Ω_2^(-1)(θ) are F_q-dependent:
// the identities of the exact checks relate them only multiplicatively or over k.
TEST(FqRelations, NoRelationAmongPeriodsAndZetaValues) {
  auto f = make_field(3, 1, 2);
  const std::int64_t S = 8, P = 200;
  const std::vector<Laurent> v{Laurent::one(f, S), pi_tilde(f, 1, S, P), zeta(f, 1, S, P), zeta(f, 2, S, P), omega_value(f, 2, 0, S, P),
                               omega_value(f, 2, 1, S, P)};
  EXPECT_FALSE(find_fq_linear_relation(v, P).has_value());
}

// ---------------------------------------------------------------------------
// k-linear relations

TEST(KRelations, QTwoZetaOneIsARationalMultipleOfPi) {
  auto f = make_field(2);
  const std::int64_t S = 1, P = 200;
  const std::vector<Laurent> v{zeta(f, 1, S, 2 * P), pi_tilde(f, 1, S, 2 * P)};
  KRelation rel;
  for (int D = 0; D <= 4 && rel.status != RelationStatus::found; ++D) rel = find_k_linear_relation(v, D, P);
  ASSERT_EQ(rel.status, RelationStatus::found);
  // h0 ζ(1) + h1 π̃ = 0, so ζ(1)/π̃ = -h1/h0; it is exactly 1/(θ^2 + θ) for q = 2
  const RatFunc ratio = -(rel.coeffs[1] / rel.coeffs[0]);
  EXPECT_EQ(ratio, RatFunc(Poly::one(f), parse_poly(f, "θ^2+θ")));
  // multiply back at full precision
  EXPECT_TRUE((v[0] - embed_rat(ratio, S, 2 * P) * v[1]).zero_at(2 * P - 10));
}

TEST(KRelations, NegativeIntegerFactorialOverPiIsInK) {
  for (int q : {3, 5}) {
    auto f = make_field(q);
    const std::int64_t S = q - 1, P = 200;
    // (-1)! is a one-unit; π̃ carries (-θ)^(1/(q-1)), so compare (q-1)-th powers
    const Laurent g = goss_factorial(f, GammaArg(-1, 1), S, 2 * P).pow(q - 1);
    const Laurent pi = pi_tilde(f, 1, S, 2 * P + 2 * q * (q - 1)).pow(q - 1).truncate(2 * P);
    const auto ratio = g * pi.inverse();
    for (const auto& [e, c] : ratio.terms()) EXPECT_EQ(e % (q - 1), 0) << "q=" << q << " e=" << e;
    KRelation rel;
    for (int D = 0; D <= q && rel.status != RelationStatus::found; ++D) rel = find_k_linear_relation({g, pi}, D, P);
    ASSERT_EQ(rel.status, RelationStatus::found) << "q=" << q;
    // the ratio is -1/θ^q: (-1)! is exactly the inverse one-unit part of π̃
    EXPECT_EQ(-(rel.coeffs[1] / rel.coeffs[0]), RatFunc(Poly::constant(f, f->neg(1)), Poly::monomial(f, q)));
  }
}

TEST(KRelations, IndependentValuesGiveNone) {
  auto f = make_field(3);
  const std::int64_t S = 2, P = 200;
  const std::vector<Laurent> v{zeta(f, 1, S, 2 * P), pi_tilde(f, 1, S, 2 * P)};
  for (int D = 0; D <= 3; ++D) EXPECT_EQ(find_k_linear_relation(v, D, P).status, RelationStatus::none) << D;
}

TEST(KRelations, RejectsShortValues) {
  auto f = make_field(3);
  EXPECT_THROW(find_k_linear_relation({zeta(f, 1, 2, 100), zeta(f, 2, 2, 100)}, 1, 200), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Anderson-Thakur

TEST(AndersonThakur, CertificatesReplay) {
  auto f = make_field(3);
  for (int n : {1, 2, 4}) {
    const auto cert = anderson_thakur_coeffs(f, n, 300);
    ASSERT_TRUE(cert.has_value()) << n;
    EXPECT_LT(cert->l * 2, n * 3) << n;  // l(q-1) < nq
    EXPECT_EQ(static_cast<int>(cert->h.size()), cert->l + 1);
    EXPECT_TRUE(at_residual(f, *cert, 600).zero_at(600)) << n;
    // perturbing a coefficient breaks the replay
    ATCert bad = *cert;
    bad.h[0] += RatFunc::one(f);
    EXPECT_FALSE(at_residual(f, bad, 600).zero_at(600)) << n;
  }
  // for n <= q the single term h_0 = 1 suffices: ζ(n) = L_{1,n}(θ)
  const auto c1 = anderson_thakur_coeffs(f, 2, 300);
  EXPECT_EQ(c1->l, 0);
  EXPECT_EQ(c1->h[0], RatFunc::one(f));
  EXPECT_THROW(anderson_thakur_coeffs(make_field(2), 1, 100), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Gamma monomials

TEST(Classification, Examples) {
  const auto c = classify_gamma_monomial(3, 3, mono({{-1, 8, 1}}));
  EXPECT_EQ(c.verdict, Verdict::transcendental);
  EXPECT_EQ(c.cert.ell, 2);
  EXPECT_EQ(c.cert.exponent_vector, (std::vector<std::int64_t>{1, 0}));

  // (-1)!/π̃ is algebraic
  EXPECT_EQ(classify_gamma_monomial(3, 3, mono({{-1, 1, 1}}, -1)).verdict, Verdict::algebraic);
  // the empty monomial
  const auto one = classify_gamma_monomial(3, 3, GammaMonomial{});
  EXPECT_EQ(one.verdict, Verdict::algebraic);
  EXPECT_EQ(one.cert.ell, 1);
  // Γ_1 Γ_0^(-q): the quasi-period ratio is transcendental with vector (-3, 1)
  const auto qp = classify_gamma_monomial(3, 3, mono({{-3, 8, 1}, {-1, 8, -3}}));
  EXPECT_EQ(qp.verdict, Verdict::transcendental);
  EXPECT_EQ(qp.cert.exponent_vector, (std::vector<std::int64_t>{-3, 1}));
  // integer translates only change the D̄ factors
  EXPECT_EQ(classify_gamma_monomial(3, 3, mono({{7, 8, 1}})).cert.exponent_vector, c.cert.exponent_vector);
  EXPECT_THROW(classify_gamma_monomial(3, 3, mono({{1, 3, 1}})), std::domain_error);
}

TEST(Classification, ExponentVectorIsAHomomorphism) {
  std::mt19937 rng(41);
  const std::int64_t q = 3;
  const std::vector<std::int64_t> dens{2, 4, 8};  // all divide q^2 - 1
  for (int trial = 0; trial < 200; ++trial) {
    auto random_mono = [&] {
      GammaMonomial m;
      for (int k = 0; k < 3; ++k) {
        const std::int64_t b = dens[rng() % dens.size()];
        m.mul(GammaArg(static_cast<std::int64_t>(rng() % 40) - 20, b), static_cast<std::int64_t>(rng() % 7) - 3);
      }
      m.pi_exp = static_cast<std::int64_t>(rng() % 5) - 2;
      return m;
    };
    GammaMonomial a = random_mono(), b = random_mono();
    a.mul(GammaArg(-5, 8), 1);
    b.mul(GammaArg(-3, 8), 1);
    const auto va = classify_gamma_monomial(3, q, a).cert.exponent_vector;
    const auto vb = classify_gamma_monomial(3, q, b).cert.exponent_vector;
    const auto vab = classify_gamma_monomial(3, q, a * b).cert.exponent_vector;
    ASSERT_EQ(va.size(), 2u);
    ASSERT_EQ(vb.size(), 2u);
    EXPECT_EQ(vab, (std::vector<std::int64_t>{va[0] + vb[0], va[1] + vb[1]}));
  }
}

TEST(Classification, CertificatesReplay) {
  std::mt19937 rng(42);
  auto f = make_field(3);
  for (int trial = 0; trial < 20; ++trial) {
    GammaMonomial m;
    const std::int64_t b = trial % 2 ? 8 : 26;
    for (int k = 0; k < 2; ++k) m.mul(GammaArg(static_cast<std::int64_t>(rng() % 60) - 30, b), static_cast<std::int64_t>(rng() % 5) - 2);
    m.pi_exp = static_cast<std::int64_t>(rng() % 3) - 1;
    const auto c = classify_gamma_monomial(3, 3, m);
    const auto r = replay_reduction(f, m, c.cert, 1, 200);
    EXPECT_TRUE(r.equal) << trial;
  }
}

// ---------------------------------------------------------------------------
// Counting

TEST(Counting, SmallCases) {
  EXPECT_EQ(u_set(3, 3, 6), (std::vector<int>{1, 5}));
  EXPECT_EQ(expected_trdeg(3, 3, 10, 2).expected_trdeg, 5);
  EXPECT_TRUE(expected_trdeg(2, 2, 10, 1).q2_branch);
  EXPECT_THROW(expected_trdeg(3, 3, 0, 1), std::invalid_argument);
}

TEST(Counting, InclusionExclusionMatchesEnumeration) {
  for (auto [q, p] : {std::pair<std::int64_t, int>{3, 3}, {4, 2}, {5, 5}})
    for (int s = 1; s <= 200; ++s) {
      int count = 0;
      for (int n = 1; n <= s; ++n) count += (n % p != 0 && n % (q - 1) != 0);
      const auto prof = expected_trdeg(q, p, s, 1);
      EXPECT_EQ(prof.zeta_part, count) << "q=" << q << " s=" << s;
      EXPECT_EQ(static_cast<int>(prof.u.size()), count);
    }
}
