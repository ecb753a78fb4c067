#include <gtest/gtest.h>

#include <random>

#include "zmoment/moments.hpp"
#include "zmoment/verify/oracles.hpp"

using namespace zmoment;

namespace {

const PrecisionContext& ctx() {
  static const PrecisionContext c(128);
  return c;
}

const ModelConstants& constants() {
  static const ModelConstants mc = model_constants(ctx(), 10'000);
  return mc;
}

double rel(const Real& a, const Real& b) {
  PrecisionGuard g(192);
  return (abs(a - b) / abs(b)).to_double();
}

}  // namespace

TEST(Quadrature, GaussLegendreIsExactOnPolynomials) {
  PrecisionGuard g(192);
  const GaussLegendre rule(10);
  MomentOptions opts;
  auto f = [](const Real& t) -> Sample { return {pow(t, 19L), Real(0)}; };
  const auto r = integrate_panel(rule, f, Real(0), Real(2), opts);
  const Real exact = pow(Real(2), 20L) / 20;
  EXPECT_LT(abs(r.value - exact).to_double(), 1e-30);
}

TEST(Quadrature, AdaptivePanelMeetsTolerance) {
  PrecisionGuard g(192);
  const GaussLegendre rule(10);
  MomentOptions opts;
  auto f = [](const Real& t) -> Sample { return {1 / (1 + 100 * t * t), Real(0)}; };
  const auto r = integrate_panel(rule, f, Real(-1), Real(1), opts);
  EXPECT_LT(abs(r.value - atan(Real(10)) / 5).to_double(), 1e-9);
  EXPECT_LT(r.error.to_double(), 1e-9);
  EXPECT_GT(r.evaluations, 30);
}

TEST(Quadrature, SimpsonWithRichardsonEstimate) {
  PrecisionGuard g(192);
  auto f = [](const Real& t) -> Sample { return {exp(t), Real(0)}; };
  const auto r = simpson(f, Real(0), Real(1), 1e-2);
  const Real exact = exp(Real(1)) - 1;
  EXPECT_LT(abs(r.value - exact).to_double(), 1e-9);
  EXPECT_LE(abs(r.value - exact), 2 * r.error);
}

TEST(Zeros, FirstThree) {
  const auto zs = locate_zeros(10, 30, ctx());
  ASSERT_EQ(zs.ordinates.size(), 3u);
  const double expected[] = {14.134725141734693, 21.022039638771555, 25.010857580145689};
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(zs.ordinates[static_cast<std::size_t>(i)].to_double(), expected[i], 1e-11);
  EXPECT_TRUE(zs.warnings.empty());
}

TEST(Zeros, CountsToHundred) {
  const auto zs = locate_zeros(0, 100, ctx());
  EXPECT_EQ(zs.ordinates.size(), 29u);
  EXPECT_TRUE(zs.warnings.empty());
  for (std::size_t i = 1; i < zs.ordinates.size(); ++i) EXPECT_LT(zs.ordinates[i - 1], zs.ordinates[i]);
}

TEST(Zeros, SignFlipsAcrossEachZero) {
  const HardyZ Z(ctx(), 60);
  const auto zs = locate_zeros(Z, 10, 60);
  PrecisionGuard g(192);
  for (const auto& z : zs.ordinates) {
    const Real lo = z - Real(1e-6);
    const Real hi = z + Real(1e-6);
    EXPECT_LT(Z(lo).z.sign() * Z(hi).z.sign(), 0) << to_decimal(z, 15);
  }
}

TEST(Zeros, EmptyAndInvalidRanges) {
  EXPECT_TRUE(locate_zeros(14.134725141734693, 14.134725141734693, ctx()).ordinates.empty());
  EXPECT_THROW(locate_zeros(20, 10, ctx()), Error);
  EXPECT_THROW(locate_zeros(-1, 10, ctx()), Error);
}

TEST(FirstMoment, MatchesSimpsonOracle) {
  const auto m = first_moment_sharp(20, ctx(), constants());
  const HardyZ Z(ctx(), 20);
  const auto o = oracle::simpson_moments(Z, 0, 20);
  EXPECT_LT(std::fabs((m.value - o.first).to_double()), 1e-6);
  EXPECT_LT(m.quadrature_error.to_double(), 1e-6);
  EXPECT_EQ(m.kind, MomentKind::FirstSharp);
  EXPECT_EQ(m.model_predictions.count("paper"), 1u);
  EXPECT_EQ(m.model_predictions.count("cg"), 1u);
}

TEST(FirstMoment, MatchesSimpsonOracleAcrossTheCrossover) {
  // [150, 250] covers the change from Euler-Maclaurin to Riemann-Siegel Z at 200
  const auto ms = first_moment_profile({150, 250}, ctx(), constants());
  const HardyZ Z(ctx(), 250);
  const auto o = oracle::simpson_moments(Z, 150, 250);
  PrecisionGuard g(192);
  EXPECT_LT(rel(ms[1].value - ms[0].value, o.first), 1e-6);
}

TEST(FirstMoment, ProfileIsIncreasingAndConsistent) {
  const auto ms = first_moment_profile({40, 80, 120}, ctx(), constants());
  ASSERT_EQ(ms.size(), 3u);
  EXPECT_LT(ms[0].value, ms[1].value);
  EXPECT_LT(ms[1].value, ms[2].value);
  const auto single = first_moment_sharp(80, ctx(), constants());
  EXPECT_LT(rel(ms[1].value, single.value), 1e-9);
  EXPECT_THROW(first_moment_sharp(10, ctx(), constants()), Error);
}

TEST(FirstMoment, IndependentOfJobs) {
  MomentOptions a, b;
  b.jobs = 4;
  const auto x = first_moment_sharp(150, ctx(), constants(), a);
  const auto y = first_moment_sharp(150, ctx(), constants(), b);
  EXPECT_EQ(to_decimal(x.value, 35), to_decimal(y.value, 35));
  EXPECT_EQ(to_decimal(x.quadrature_error, 10), to_decimal(y.quadrature_error, 10));
}

TEST(SecondMoment, MatchesSimpsonOracleAndCauchySchwarz) {
  const auto m = second_moment_sharp(100, ctx());
  const HardyZ Z(ctx(), 100);
  const auto o = oracle::simpson_moments(Z, 0, 100);
  EXPECT_LT(std::fabs((m.value - o.second).to_double()), 1e-6);
  const auto f = first_moment_sharp(100, ctx(), constants());
  PrecisionGuard g(192);
  EXPECT_GE(m.value, f.value * f.value / 100);
  EXPECT_EQ(m.model_predictions.count("classical"), 1u);
}

TEST(SecondMoment, CloseToClassicalModel) {
  const auto m = second_moment_sharp(500, ctx());
  PrecisionGuard g(192);
  EXPECT_LT((abs(m.value - m.model_predictions.at("classical")) / 500).to_double(), 0.05);
}

TEST(Laplace, MatchesSimpsonOracle) {
  const auto m = first_moment_laplace(0.1, ctx(), constants());
  const HardyZ Z(ctx(), 500);
  // e^{-0.1 t} weighting by Simpson between zeros; beyond t = 300 the
  // integrand is below e^{-30} |Z| and contributes under 1e-11
  PrecisionGuard g(192);
  Real total;
  {
    const double h = 2e-3;
    std::vector<Real> cuts{Real(0)};
    const auto zs = locate_zeros(Z, 0, 300);
    for (const auto& z : zs.ordinates) cuts.push_back(z);
    cuts.emplace_back(300);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      long n = static_cast<long>(std::ceil(((cuts[k + 1] - cuts[k]) / Real(h)).to_double()));
      n = std::max(2L, n + (n % 2));
      const Real dh = (cuts[k + 1] - cuts[k]) / n;
      Real s;
      for (long i = 0; i <= n; ++i) {
        const Real t = cuts[k] + dh * i;
        const long w = (i == 0 || i == n) ? 1 : (i % 2 == 1 ? 4 : 2);
        s += w * exp(-Real(0.1) * t) * abs(Z(t).z);
      }
      total += s * dh / 3;
    }
  }
  EXPECT_LT(std::fabs((m.value - total).to_double()), 1e-6);
  const auto sharp = first_moment_sharp(500, ctx(), constants());
  EXPECT_LE(m.value, sharp.value);
}

TEST(Laplace, BudgetAndDomain) {
  try {
    first_moment_laplace(1e-4, ctx(), constants());
    FAIL() << "expected a resource error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::resource);
  }
  EXPECT_THROW(first_moment_laplace(0.2, ctx(), constants()), Error);
  EXPECT_THROW(first_moment_laplace(0, ctx(), constants()), Error);
}

TEST(OffLine, RatioNearMeanValue) {
  const auto table = sieve_coeffs(FractionalOrder(1, 2), 100'000);
  const auto m = fractional_moment_offline(0.75, 300, ctx(), table);
  PrecisionGuard g(192);
  const double ratio = (m.value / m.model_predictions.at("mean_value")).to_double();
  EXPECT_GT(ratio, 0.9);
  EXPECT_LT(ratio, 1.1);
  EXPECT_LT((m.quadrature_error / m.value).to_double(), 1e-8);
  EXPECT_THROW(fractional_moment_offline(0.5, 300, ctx(), table), Error);
  EXPECT_THROW(fractional_moment_offline(0.75, 50, ctx(), table), Error);
}

TEST(Lemma4, CutoffAndStieltjesAgreement) {
  const std::uint32_t N = lemma4_cutoff(Real(1e-6));
  const double x = M_PI * std::sin(4e-6);
  EXPECT_GT(x * std::pow(N, 4), 46.0);
  EXPECT_LE(x * std::pow(N - 1, 4), 46.0);
  EXPECT_EQ(N, 44u);
  for (const double d : {1e-3, 1e-4}) {
    const auto m = lemma4_sum(Real(d), ctx(), constants());
    const Real other = oracle::lemma4_stieltjes(Real(d), ctx());
    EXPECT_LT(rel(m.value, other), 1e-10) << d;
    EXPECT_EQ(m.model_predictions.count("lemma4"), 1u);
  }
  EXPECT_THROW(lemma4_sum(Real(0.06), ctx(), constants()), Error);
  EXPECT_THROW(lemma4_sum(Real(0), ctx(), constants()), Error);
}

TEST(Fit, ExactSyntheticData) {
  PrecisionGuard g(192);
  std::vector<std::pair<Real, Real>> data;
  for (const double T : {500.0, 1000.0, 2000.0, 5000.0}) {
    const Real t(T);
    data.emplace_back(t, 3 * t * pow(log(t), Real(1) / 4));
  }
  const auto fit = fit_constant(data, constants());
  EXPECT_LT(abs(fit.c_hat - 3).to_double(), 1e-30);
  for (const auto& r : fit.residuals) EXPECT_LT(abs(r).to_double(), 1e-25);
  EXPECT_LT(abs(fit.reference_paper - sqrt(Real(2)) * fit.reference_cg).to_double(), 1e-30);
}

TEST(Fit, NoisySyntheticData) {
  PrecisionGuard g(192);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> noise(-0.01, 0.01);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::pair<Real, Real>> data;
    for (const double T : {500.0, 1000.0, 2000.0, 5000.0}) {
      const Real t(T);
      data.emplace_back(t, 3 * t * pow(log(t), Real(1) / 4) * Real(1 + noise(rng)));
    }
    const auto fit = fit_constant(data, constants());
    EXPECT_LT(std::fabs(fit.c_hat.to_double() / 3 - 1), 0.015);
  }
}

TEST(Fit, DegenerateInputs) {
  PrecisionGuard g(192);
  auto expect_degenerate = [](const std::vector<std::pair<Real, Real>>& d) {
    try {
      fit_constant(d, constants());
      FAIL() << "expected a degenerate_fit error";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::degenerate_fit);
    }
  };
  expect_degenerate({{Real(100), Real(1)}, {Real(2000), Real(2)}});
  expect_degenerate({{Real(100), Real(1)}, {Real(50), Real(2)}, {Real(2000), Real(3)}});
  expect_degenerate({{Real(100), Real(1)}, {Real(200), Real(2)}, {Real(300), Real(3)}});
}

TEST(Models, KnownValues) {
  PrecisionGuard g(192);
  const auto& mc = constants();
  const Real T(1000);
  EXPECT_LT(abs(model_first_paper(T, mc) - sqrt(Real(2)) * model_first_cg(T, mc)).to_double(), 1e-25);
  // T log(T/2pi) + (2 gamma - 1) T at T = 2pi e
  const Real Te = 2 * const_pi() * exp(Real(1));
  EXPECT_LT(abs(model_second(Te) - Te * 2 * const_euler()).to_double(), 1e-30);
  EXPECT_NEAR(riemann_von_mangoldt(100), 29.0023, 1e-3);
}
