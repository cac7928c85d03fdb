#include <gtest/gtest.h>

#include <random>

#include "ffzeta/laurent.hpp"

using namespace ffzeta;

namespace {

// Exact Laurent polynomial with random coefficients on [lo, hi).
Laurent random_exact(const FieldPtr& f, std::int64_t scale, std::mt19937& rng, std::int64_t lo, std::int64_t hi, bool constants_only = true) {
  Laurent::Terms t;
  const auto& consts = f->constants();
  for (std::int64_t e = lo; e < hi; ++e) {
    if (rng() % 3 == 0) continue;
    Elem c = constants_only ? consts[rng() % consts.size()] : static_cast<Elem>(rng() % f->order());
    if (c) t.emplace_back(e, c);
  }
  return Laurent::from_terms(f, scale, kExact, std::move(t));
}

// Claimed precision must be honest: the truncated computation agrees with the
// exact computation everywhere below it.
void expect_sound(const Laurent& approx, const Laurent& exact) {
  ASSERT_FALSE(approx.is_exact());
  EXPECT_TRUE(approx.equal_at(exact.truncate(approx.prec()), approx.prec()));
}

}  // namespace

TEST(LaurentPrecision, SumAndProductAreSoundAndSharp) {
  std::mt19937 rng(21);
  auto f = make_field(3);
  for (int trial = 0; trial < 300; ++trial) {
    const Laurent A = random_exact(f, 2, rng, -6, 20), B = random_exact(f, 2, rng, -4, 20);
    if (A.is_zero() || B.is_zero()) continue;
    const std::int64_t pa = A.val() + 1 + static_cast<std::int64_t>(rng() % 15);
    const std::int64_t pb = B.val() + 1 + static_cast<std::int64_t>(rng() % 15);
    const Laurent a = A.truncate(pa), b = B.truncate(pb);
    expect_sound(a + b, A + B);
    EXPECT_EQ((a + b).prec(), std::min(pa, pb));
    expect_sound(a * b, A * B);
    EXPECT_EQ((a * b).prec(), std::min(pa + b.val(), pb + a.val()));
    expect_sound(a - b, A - B);
  }
}

TEST(LaurentPrecision, RingLawsAtCommonPrecision) {
  std::mt19937 rng(22);
  auto f = make_field(2, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const Laurent a = random_exact(f, 3, rng, -3, 12, false).truncate(14);
    const Laurent b = random_exact(f, 3, rng, 0, 12, false).truncate(13);
    const Laurent c = random_exact(f, 3, rng, 1, 12, false).truncate(15);
    const auto P = [](const Laurent& x, const Laurent& y) { return std::min(x.prec(), y.prec()); };
    EXPECT_TRUE((a * b).equal_at(b * a, P(a * b, b * a)));
    EXPECT_TRUE(((a * b) * c).equal_at(a * (b * c), P((a * b) * c, a * (b * c))));
    EXPECT_TRUE((a * (b + c)).equal_at(a * b + a * c, P(a * (b + c), a * b + a * c)));
    EXPECT_TRUE((a - a).zero_at(a.prec()));
  }
}

TEST(LaurentPrecision, InverseAgainstExactProduct) {
  std::mt19937 rng(23);
  auto f = make_field(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Laurent A = random_exact(f, 1, rng, -3, 25);
    if (A.is_zero()) continue;
    const std::int64_t pa = A.val() + 2 + static_cast<std::int64_t>(rng() % 20);
    const Laurent a = A.truncate(pa);
    const Laurent ai = a.inverse();
    EXPECT_EQ(ai.prec(), pa - 2 * A.val());
    // exact inverse to a deep cap, then truncated
    const Laurent Ai = A.inverse(pa + 40);
    expect_sound(ai, Ai);
    EXPECT_TRUE((a * ai).equal_at(Laurent::one(f, 1), (a * ai).prec()));
  }
}

TEST(LaurentPrecision, PowerMatchesRepeatedProduct) {
  std::mt19937 rng(24);
  auto f = make_field(3);
  for (int trial = 0; trial < 60; ++trial) {
    const Laurent a = random_exact(f, 2, rng, -2, 10).truncate(12);
    if (a.is_zero()) continue;
    Laurent acc = Laurent::one(f, 2);
    for (int n = 0; n <= 5; ++n) {
      const Laurent pw = a.pow(n);
      EXPECT_TRUE(pw.equal_at(acc, std::min(pw.prec(), acc.prec())));
      acc *= a;
    }
  }
}

TEST(LaurentTwist, RoundTripsAndMultiplicativity) {
  std::mt19937 rng(25);
  for (auto f : {make_field(3), make_field(3, 1, 2), make_field(2, 2)}) {
    for (int trial = 0; trial < 100; ++trial) {
      const Laurent a = random_exact(f, 8, rng, -5, 15, false).truncate(16);
      const Laurent b = random_exact(f, 8, rng, 0, 15, false).truncate(17);
      for (int j = 1; j <= 2; ++j) {
        const Laurent fa = a.twist(-j);
        EXPECT_EQ(fa.prec(), a.prec() * detail::ipow(f->q(), j));
        const Laurent back = fa.twist(j);
        EXPECT_EQ(back.prec(), a.prec());
        EXPECT_TRUE(back.equal_at(a, a.prec()));
        const Laurent lhs = (a * b).twist(-j), rhs = a.twist(-j) * b.twist(-j);
        EXPECT_TRUE(lhs.equal_at(rhs, std::min(lhs.prec(), rhs.prec())));
      }
    }
  }
}

TEST(LaurentTwist, ForwardTwistOfThetaPolynomial) {
  auto f = make_field(3);
  std::mt19937 rng(26);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Elem> c(1 + rng() % 5);
    for (auto& x : c) x = static_cast<Elem>(rng() % 3);
    const Poly a(f, c);
    EXPECT_TRUE(embed_poly(a, 2).twist(-1).equal_at(embed_poly(a.twist_forward(1), 2), kExact - 1) || a.is_zero());
    EXPECT_EQ(format_laurent(embed_poly(a, 2).twist(-1)), format_laurent(embed_poly(a.pow(3), 2)));
  }
}

TEST(LaurentTwist, InverseTwistRejectsNonDivisibleExponents) {
  auto f = make_field(3);
  const Laurent x = Laurent::monomial(f, 1, 2);
  EXPECT_THROW(x.twist(1), std::domain_error);
}

TEST(LaurentUnits, RecomposeAndEmbedRat) {
  std::mt19937 rng(27);
  auto f = make_field(3, 1, 2);
  for (int trial = 0; trial < 100; ++trial) {
    const Laurent a = random_exact(f, 4, rng, -9, 30, false).truncate(31);
    if (a.is_zero()) continue;
    const auto d = one_unit_decompose(a);
    EXPECT_EQ(d.unit.val(), 0);
    EXPECT_EQ(d.unit.lead(), 1u);
    EXPECT_TRUE(recombine(d).equal_at(a, a.prec()));
  }
  auto g = make_field(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Elem> nc(1 + rng() % 5), dc(1 + rng() % 4);
    for (auto& x : nc) x = static_cast<Elem>(rng() % 3);
    for (auto& x : dc) x = static_cast<Elem>(rng() % 3);
    const Poly n(g, nc), dd(g, dc);
    if (dd.is_zero() || n.is_zero()) continue;
    const RatFunc r(n, dd);
    const Laurent e = embed_rat(r, 2, 60);
    // multiply back by the (exact) denominator
    const Laurent back = e * embed_poly(r.den(), 2);
    EXPECT_TRUE(back.equal_at(embed_poly(r.num(), 2), back.prec()));
    EXPECT_GE(back.prec(), 60 - 2 * r.den().degree());
  }
}

TEST(LaurentUnits, ThetaImages) {
  auto f = make_field(3);
  EXPECT_EQ(format_laurent(Laurent::theta_pow(f, 2, 1)), "2*u^-2");
  EXPECT_EQ(format_laurent(Laurent::theta_pow(f, 2, 2)), "1*u^-4");
  // 1/(θ - 1) = -u^S/(1 + u^S) = -(u^S - u^2S + ...) at S = 1
  const Laurent x = embed_rat(RatFunc(Poly::one(f), parse_poly(f, "θ-1")), 1, 5);
  EXPECT_EQ(format_laurent(x), "2*u^1 + 1*u^2 + 2*u^3 + 1*u^4 + O(u^5)");
}

TEST(LaurentText, RoundTrip) {
  std::mt19937 rng(28);
  for (auto f : {make_field(3), make_field(2, 2), make_field(3, 1, 2)}) {
    for (int trial = 0; trial < 50; ++trial) {
      Laurent a = random_exact(f, 2, rng, -4, 12, false);
      if (trial % 2) a = a.truncate(10);
      const Laurent b = parse_laurent(f, 2, format_laurent(a));
      EXPECT_EQ(b.prec(), a.prec());
      EXPECT_EQ(b.terms(), a.terms());
    }
  }
}

TEST(LaurentRescale, CommutesWithArithmetic) {
  std::mt19937 rng(29);
  auto f = make_field(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Laurent a = random_exact(f, 2, rng, -3, 10).truncate(11), b = random_exact(f, 2, rng, 0, 10).truncate(12);
    const Laurent l = (a * b).rescale(4), r = a.rescale(4) * b.rescale(4);
    EXPECT_EQ(l.prec(), r.prec());
    EXPECT_TRUE(l.equal_at(r, l.prec()));
    EXPECT_EQ(a.rescale(4).scale(), 8);
  }
}
