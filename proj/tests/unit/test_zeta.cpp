#include <gtest/gtest.h>

#include <random>

#include "zmoment/zeta.hpp"

using namespace zmoment;

namespace {

Real R(const char* s) {
  PrecisionGuard g(320);
  return Real(s);
}

Complex C(double re, double im) { return Complex(Real(re), Real(im)); }

const char* const kZetaHalf = "-1.460354508809586812889499152515298012467229331012581490542886";
const char* const kFirstZero = "14.13472514173469379045725198356247027078425711569924317568556";

}  // namespace

TEST(ZetaEM, ClosedForms) {
  const PrecisionContext ctx(192);
  PrecisionGuard g(256);
  const auto z2 = zeta_em(Complex(Real(2)), ctx);
  const Real pi = const_pi();
  EXPECT_LE(abs(z2.value.re - pi * pi / 6), z2.abs_error_bound + Real(1e-50));
  EXPECT_LT(abs(z2.value.im).to_double(), 1e-50);
  EXPECT_LT(z2.abs_error_bound.to_double(), 1e-50);
  EXPECT_EQ(z2.method, ZetaMethod::EulerMaclaurin);

  const auto z0 = zeta_em(Complex(Real(0)), ctx);
  EXPECT_LE(abs(z0.value.re + Real(1) / 2), z0.abs_error_bound + Real(1e-50));

  const auto zh = zeta_em(Complex(Real(1) / 2), ctx);
  EXPECT_LE(abs(zh.value.re - R(kZetaHalf)), zh.abs_error_bound + Real(1e-50));
}

TEST(ZetaEM, TwoPrecisionsAgree) {
  const auto lo = zeta_em(C(0.75, 123.4), PrecisionContext(128));
  const auto hi = zeta_em(C(0.75, 123.4), PrecisionContext(256));
  PrecisionGuard g(320);
  EXPECT_LE(abs(lo.value - hi.value), lo.abs_error_bound + hi.abs_error_bound);
  EXPECT_LT(lo.abs_error_bound.to_double(), 1e-30);
}

TEST(ZetaEM, PoleIsReported) {
  try {
    zeta_em(Complex(Real(1)), PrecisionContext(128));
    FAIL() << "expected a pole error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::pole);
  }
}

TEST(ZetaEM, LineEvaluatorMatches) {
  const PrecisionContext ctx(128);
  const EulerMaclaurinLine line(Real(0.75), ctx, 500);
  for (const double t : {0.0, 3.5, 77.7, 499.0}) {
    const auto a = line(Real(t));
    const auto b = zeta_em(C(0.75, t), ctx);
    PrecisionGuard g(192);
    EXPECT_LE(abs(a.value - b.value), a.abs_error_bound + b.abs_error_bound) << t;
  }
  EXPECT_THROW(line(Real(500.5)), Error);
  EXPECT_THROW(EulerMaclaurinLine(Real(1), ctx, 10), Error);
}

TEST(ZetaRS, AgreesWithEulerMaclaurinWithinBound) {
  const PrecisionContext ctx(256);
  const auto rs = zeta_rs(Real(100), 4, ctx);
  const auto em = zeta_em(C(0.5, 100), ctx);
  EXPECT_EQ(rs.method, ZetaMethod::RiemannSiegel);
  ASSERT_TRUE(rs.hardy_z.has_value());
  PrecisionGuard g(320);
  EXPECT_LE(abs(abs(rs.value) - abs(em.value)), rs.abs_error_bound + em.abs_error_bound);
  EXPECT_LE(abs(rs.value - em.value), rs.abs_error_bound + em.abs_error_bound);
}

TEST(ZetaRS, CorrectionTermsImproveAccuracy) {
  const PrecisionContext ctx(128);
  for (const double t : {2000.3, 5000.7}) {
    const auto em = zeta_em(C(0.5, t), ctx);
    const ThetaValue th = theta(Real(t), ctx);
    PrecisionGuard g(192);
    Real s, c;
    sin_cos(th.value, s, c);
    const Real z_ref = em.value.re * c - em.value.im * s;
    double last = 1.0;
    for (int k = 0; k <= kMaxRiemannSiegelTerms; ++k) {
      const RiemannSiegel rs(ctx, k, t);
      const auto v = rs.hardy_z(Real(t));
      const double err = abs(v.z - z_ref).to_double();
      EXPECT_LE(err, v.error_bound.to_double()) << "t=" << t << " terms=" << k;
      EXPECT_LT(err, last) << "t=" << t << " terms=" << k;
      last = err;
    }
  }
}

TEST(ZetaRS, TruncationFollowsAsymptoticOrder) {
  // |R_4(t)| (t/2pi)^{11/4} stays of one size from the first zero upward
  const PrecisionContext ctx(128);
  const HardyZ exact(ctx, 150);
  const RiemannSiegel rs(ctx, 4, 200);
  double lo = 1e300, hi = 0;
  for (const double t : {14.1347, 20.0, 30.0, 50.0, 100.0}) {
    const double err = abs(exact(Real(t)).z - rs.hardy_z(Real(t)).z).to_double();
    const double scaled = err * std::pow(t / (2 * M_PI), 2.75);
    lo = std::min(lo, scaled);
    hi = std::max(hi, scaled);
  }
  EXPECT_LT(hi, 10 * lo);
}

TEST(ZetaRS, CrossMethodAgreementRandomHeights) {
  const PrecisionContext ctx(128);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(20.0, 5000.0);
  const RiemannSiegel rs(ctx, 4, 5000);
  for (int i = 0; i < 50; ++i) {
    const double t = dist(rng);
    const auto v = rs.hardy_z(Real(t));
    const auto em = zeta_em(C(0.5, t), ctx);
    PrecisionGuard g(192);
    EXPECT_LE(abs(abs(v.z) - abs(em.value)), v.error_bound + em.abs_error_bound) << "t=" << t;
  }
}

TEST(ZetaRS, NearFirstZero) {
  const PrecisionContext ctx(192);
  const auto v = zeta_rs(R(kFirstZero), 4, ctx);
  // the four-term series itself is only good to a few 1e-6 this low
  EXPECT_LE(abs(*v.hardy_z), v.abs_error_bound);
  EXPECT_LT(abs(*v.hardy_z).to_double(), 1e-5);
  const auto below = zeta_rs(Real(14.1), 4, ctx);
  const auto above = zeta_rs(Real(14.2), 4, ctx);
  EXPECT_LT(below.hardy_z->sign() * above.hardy_z->sign(), 0);
}

TEST(ZetaRS, RejectsLowHeightsAndBadTerms) {
  const PrecisionContext ctx(128);
  EXPECT_THROW(zeta_rs(Real(9.5), 4, ctx), Error);
  EXPECT_THROW(zeta_rs(Real(100), 5, ctx), Error);
}

TEST(HardyZ, ContinuousAcrossCrossover) {
  const PrecisionContext ctx(128);
  const HardyZ Z(ctx, 300);
  for (const double t : {199.9, 200.0, 200.1}) {
    const auto v = Z(Real(t));
    const auto em = zeta_em(C(0.5, t), ctx);
    PrecisionGuard g(192);
    EXPECT_LE(abs(abs(v.z) - abs(em.value)), v.error_bound + em.abs_error_bound) << t;
  }
  EXPECT_THROW(Z(Real(300.5)), Error);
  EXPECT_THROW(Z(Real(-1)), Error);
}

TEST(HardyZ, RealValuedAtLowHeights) {
  const PrecisionContext ctx(128);
  const HardyZ Z(ctx, 50);
  // Z(0) = zeta(1/2)
  PrecisionGuard g(192);
  const auto z0 = Z(Real(0));
  EXPECT_LT(abs(z0.z - R(kZetaHalf)).to_double(), 1e-30);
  const auto z = Z(R(kFirstZero));
  EXPECT_LT(abs(z.z).to_double(), 1e-30);
}

TEST(Chi, UnitModulusOnCriticalLine) {
  const PrecisionContext ctx(192);
  const Complex x = chi(C(0.5, 25), ctx);
  PrecisionGuard g(256);
  EXPECT_LT(abs(abs(x) - 1).to_double(), 1e-25);
}

TEST(Chi, RealPositiveOnUnitInterval) {
  const PrecisionContext ctx(128);
  for (const double s : {0.1, 0.5, 0.9}) {
    const Complex x = chi(Complex(Real(s)), ctx);
    EXPECT_GT(x.re, 0);
    EXPECT_LT(abs(x.im).to_double(), 1e-30);
  }
}

TEST(Chi, FunctionalEquation) {
  const PrecisionContext ctx(192);
  const Complex s = C(0.75, 20);
  const auto lhs = zeta_em(Complex(Real(1)) - s, ctx);
  const auto rhs = zeta_em(s, ctx);
  const Complex x = chi(s, ctx);
  PrecisionGuard g(256);
  const Real gap = abs(lhs.value * x - rhs.value);
  EXPECT_LE(gap, abs(x) * lhs.abs_error_bound + rhs.abs_error_bound + Real(1e-45));
}

TEST(Chi, SingularPointsRaise) {
  const PrecisionContext ctx(128);
  for (const long n : {1L, 3L, 0L, -2L}) {
    try {
      chi(Complex(Real(n)), ctx);
      FAIL() << "expected a singularity error at " << n;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::singularity);
    }
  }
}

TEST(Gamma, Identities) {
  const PrecisionContext ctx(192);
  PrecisionGuard g(256);
  const Real g14 = gamma(Real(1) / 4, ctx);
  const Real g34 = gamma(Real(3) / 4, ctx);
  EXPECT_LT(abs(g14 * g34 - const_pi() * sqrt(Real(2))).to_double(), 1e-30);
  EXPECT_LT(abs(gamma(Real(5) / 4, ctx) - g14 / 4).to_double(), 1e-50);
  EXPECT_LT(abs(gamma(Real(1), ctx) - 1).to_double(), 1e-50);
  const Complex gi = gamma(C(0.5, 10), ctx);
  // |Gamma(1/2 + it)|^2 = pi / cosh(pi t)
  EXPECT_LT(abs(norm(gi) / (const_pi() / cosh(const_pi() * 10)) - 1).to_double(), 1e-40);
  EXPECT_THROW(gamma(Complex(Real(-3)), ctx), Error);
}

TEST(StirlingCheck, ErrorShrinksAndScaledErrorBounded) {
  const PrecisionContext ctx(192);
  const auto rows = gamma_quarter_stirling_check(0.5, {10, 100, 1000}, ctx);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_GT(rows[0].relative_error, rows[1].relative_error);
  EXPECT_GT(rows[1].relative_error, rows[2].relative_error);
  for (const auto& r : rows) EXPECT_LT(r.scaled_error, 0.16);
  const auto a = gamma_quarter_stirling_check(0.0, {50}, ctx);
  const auto b = gamma_quarter_stirling_check(1.0, {50}, ctx);
  EXPECT_LT(a[0].scaled_error, 0.16);
  EXPECT_LT(b[0].scaled_error, 0.16);
  EXPECT_THROW(gamma_quarter_stirling_check(1.5, {10}, ctx), Error);
  EXPECT_THROW(gamma_quarter_stirling_check(0.5, {0}, ctx), Error);
}

TEST(ConvexityCheck, BoundedAndStableUnderRefinement) {
  const PrecisionContext ctx(128);
  std::vector<Complex> coarse, fine;
  for (const double s : {0.5, 0.75, 1.0}) {
    for (const double t : {10.0, 100.0, 1000.0}) {
      coarse.push_back(C(s, t));
      fine.push_back(C(s, t));
      fine.push_back(C(s, t * 1.5));
    }
  }
  const auto a = convexity_bound_check(coarse, ctx);
  const auto b = convexity_bound_check(fine, ctx);
  EXPECT_TRUE(std::isfinite(a.fitted_constant));
  EXPECT_GT(a.fitted_constant, 0);
  EXPECT_LE(b.fitted_constant, 2 * a.fitted_constant);
  const auto one = convexity_bound_check({C(1.0, 100)}, ctx);
  const double direct = abs(zeta_em(C(1.0, 100), ctx).value).to_double() / std::log(102.0);
  EXPECT_NEAR(one.fitted_constant, direct, 1e-12);
  EXPECT_THROW(convexity_bound_check({C(0.4, 10)}, ctx), Error);
}
