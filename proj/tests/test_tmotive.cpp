#include <gtest/gtest.h>

#include <numeric>

#include "ffzeta/tmotive.hpp"

using namespace ffzeta;

namespace {

constexpr int kTdeg = 8;
constexpr std::int64_t kPrec = 200;

// One field and scale that carry every block of the full sum: F_{q^6} holds
// F_{q^ℓ} for ℓ = 1, 2, 3, and the scale is divisible by each q^ℓ - 1.
struct Setting {
  FieldPtr f;
  std::int64_t scale;
};

Setting common_setting(int p, int e) {
  auto f = make_field(p, e, 6);
  std::int64_t S = f->q() - 1;
  for (int ell = 1; ell <= 3; ++ell) S = std::lcm(S, natural_scale(*f, ell));
  return {f, S};
}

std::vector<MotiveBlock> all_blocks(const Setting& s) {
  std::vector<MotiveBlock> out;
  for (int ell = 1; ell <= 3; ++ell) out.push_back(build_carlitz_block(s.f, ell, kTdeg, kPrec, s.scale));
  for (int n = 1; n <= 3; ++n) out.push_back(build_tensor_block(s.f, n, kTdeg, kPrec, s.scale));
  for (int n = 1; n <= 2; ++n) out.push_back(build_polylog_block(s.f, n, {Poly::one(s.f), Poly::theta(s.f)}, kTdeg, kPrec, s.scale));
  return out;
}

}  // namespace

TEST(Motive, CommonScale) {
  EXPECT_EQ(common_setting(3, 1).scale, 104);
  EXPECT_EQ(common_setting(2, 2).scale, 315);
}

TEST(Motive, EveryBlockAndTheirSumPass) {
  for (auto [p, e] : {std::pair{3, 1}, std::pair{2, 2}}) {
    const Setting s = common_setting(p, e);
    const auto blocks = all_blocks(s);
    for (const auto& b : blocks) {
      const ResidualReport rep = check_difference_equation(b);
      EXPECT_TRUE(rep.pass) << b.name << " q=" << s.f->q();
      EXPECT_GE(rep.verified_prec, kPrec) << b.name;
      EXPECT_GE(rep.verified_tdeg, 1) << b.name;
    }
    const MotiveBlock sum = direct_sum(blocks);
    int total = 0;
    for (const auto& b : blocks) total += b.size();
    EXPECT_EQ(sum.size(), total);
    EXPECT_TRUE(check_difference_equation(sum).pass) << "q=" << s.f->q();
  }
}

TEST(Motive, PerturbationFlipsTheVerdict) {
  const Setting s = common_setting(3, 1);
  for (const auto& b : all_blocks(s)) {
    const int last = b.size() - 1;
    for (int d = 0; d < b.tdeg - 3; ++d) {
      const ResidualReport rep = check_difference_equation(perturb_psi(b, last, 0, d));
      EXPECT_FALSE(rep.pass) << b.name << " d=" << d;
      EXPECT_TRUE(rep.residual_valuation[last][0].has_value()) << b.name;
    }
    // a change far beyond the verified precision is invisible
    EXPECT_TRUE(check_difference_equation(perturb_psi(b, 0, 0, 0, 100000)).pass) << b.name;
  }
}

TEST(Motive, SigmaBarForms) {
  for (int q : {3, 4}) {
    for (int ell = 1; ell <= 3; ++ell) {
      auto f = q == 3 ? make_field(3, 1, ell) : make_field(2, 2, ell);
      const std::int64_t S = natural_scale(*f, ell);
      const MotiveBlock diag = carlitz_sigma_bar_block(f, ell, kTdeg, kPrec, S);
      EXPECT_EQ(diag.twist_order, ell);
      EXPECT_TRUE(check_difference_equation(diag).pass) << "q=" << q << " ell=" << ell;
      const MotiveBlock folded = sigma_bar_form(build_carlitz_block(f, ell, kTdeg, kPrec, S), ell);
      EXPECT_TRUE(check_difference_equation(folded).pass) << "q=" << q << " ell=" << ell;
    }
  }
}

TEST(Motive, DeterminantShapes) {
  const Setting s = common_setting(3, 1);
  const MotiveBlock t3 = build_tensor_block(s.f, 3, kTdeg, kPrec, s.scale);
  ASSERT_TRUE(t3.det_shape.ok);
  EXPECT_EQ(t3.det_shape.factors, (std::vector<std::pair<int, int>>{{0, 3}}));
  EXPECT_EQ(t3.det_shape.c, Poly::one(s.f));
  // polylog blocks are stored twisted once: det = (t - θ^q)^n
  const MotiveBlock pl = build_polylog_block(s.f, 2, {Poly::one(s.f)}, kTdeg, kPrec, s.scale);
  ASSERT_TRUE(pl.det_shape.ok);
  EXPECT_EQ(pl.det_shape.factors, (std::vector<std::pair<int, int>>{{1, 2}}));
  for (int ell = 1; ell <= 3; ++ell) {
    const MotiveBlock c = build_carlitz_block(s.f, ell, kTdeg, kPrec, s.scale);
    ASSERT_TRUE(c.det_shape.ok) << ell;
    EXPECT_EQ(c.det_shape.total_degree(), 1) << ell;
  }
}

TEST(Motive, SoundWindowShrinksWithPhiDegree) {
  const Setting s = common_setting(3, 1);
  EXPECT_EQ(check_difference_equation(build_tensor_block(s.f, 3, kTdeg, kPrec, s.scale)).verified_tdeg, kTdeg - 3);
  // nothing left to compare: the verdict is a failure, not a vacuous pass
  EXPECT_FALSE(check_difference_equation(build_tensor_block(s.f, 3, 3, kPrec, s.scale)).pass);
}

TEST(Motive, RejectsBadInput) {
  auto f = make_field(3, 1, 2);
  EXPECT_THROW(build_carlitz_block(f, 3, kTdeg, kPrec, 26), std::invalid_argument);
  EXPECT_THROW(build_tensor_block(f, 0, kTdeg, kPrec, 8), std::invalid_argument);
  EXPECT_THROW(build_polylog_block(f, 1, {Poly::monomial(f, 2)}, kTdeg, kPrec, 8), std::domain_error);
}

// TPoly arithmetic: division by t - a and evaluation agree.
TEST(TPolyTest, LinearDivision) {
  auto f = make_field(3);
  const TPoly x = TPoly::t_minus(Poly::theta(f)).pow(3) + TPoly::constant(Poly::monomial(f, 2));
  const auto [quo, rem] = x.divrem_linear(Poly::theta(f));
  EXPECT_EQ(rem, x.eval_t(Poly::theta(f)));
  EXPECT_EQ(quo * TPoly::t_minus(Poly::theta(f)) + TPoly::constant(rem), x);
  EXPECT_EQ(format_tpoly(TPoly::t_minus(Poly::theta(f))), "t+2*θ");
}
