#include <gtest/gtest.h>

#include "zmoment/products.hpp"
#include "zmoment/zeta.hpp"

using namespace zmoment;

namespace {

// Prime-zeta evaluations of the full infinite products, 40 digits.
const char* const kC0 = "0.9883590825750497440110552755486309770795";
const char* const kCHalf = "1.090419661898779704453586365260647170654";
const char* const kCQuarter = "1.026827849672941122529742621187488708494";
const char* const kG2 = "1.130750020228401436979779168929228155298";
const char* const kG3 = "1.046767205752311895140529040994886489850";
// sum_{m<=30} d_{1/2}(2^m)^2 4^{-m} by direct summation.
const char* const kLocal2 = "1.073182007149364375049926687142220215344";

Real R(const char* s) {
  PrecisionGuard g(256);
  return Real(s);
}

EulerProductSpec spec_with(std::uint32_t P, int bits = 192) {
  EulerProductSpec s;
  s.prime_cutoff = P;
  s.precision = PrecisionContext(bits);
  return s;
}

double log_gap(const Real& a, const Real& b) {
  PrecisionGuard g(256);
  return abs(log(a) - log(b)).to_double();
}

}  // namespace

TEST(LocalFactor, PrimeTwoAtTwo) {
  const PrecisionContext ctx(200);
  PrecisionGuard g(256);
  const Real v = local_factor_g(2, Real(2), FractionalOrder(1, 2), 30, PrecisionContext(200, -40));
  EXPECT_LT(abs(v - R(kLocal2)).to_double(), 1e-30);
  // M = 30 drops about 4^{-31}; a 200-bit target needs more terms.
  EXPECT_THROW(local_factor_g(2, Real(2), FractionalOrder(1, 2), 30, ctx), Error);
  EXPECT_NO_THROW(local_factor_g(2, Real(2), FractionalOrder(1, 2), 120, ctx));
}

TEST(LocalFactor, FlagsShallowDepthAtOne) {
  const PrecisionContext ctx(128);
  try {
    local_factor_g(2, Real(1), FractionalOrder(1, 1), 20, ctx);
    FAIL() << "expected a convergence error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::convergence);
  }
}

TEST(LocalFactor, TendsToOneForLargeS) {
  const PrecisionContext ctx(128);
  PrecisionGuard g(192);
  const Real v = local_factor_g(7, Real(60), FractionalOrder(1, 2), 8, ctx);
  EXPECT_LT(abs(v - 1).to_double(), 1e-40);
}

TEST(LocalFactor, RejectsHalfPlane) {
  const PrecisionContext ctx(128);
  EXPECT_THROW(local_factor_g(3, Real(0.5), FractionalOrder(1, 2), 50, ctx), Error);
  EXPECT_THROW(local_factor_g(3, Real(2), FractionalOrder(1, 2), 0, ctx), Error);
}

TEST(C0, SinglePrime) {
  const auto v = C0(spec_with(2));
  PrecisionGuard g(256);
  const Real local = local_factor_g(2, Real(1), FractionalOrder(1, 2), kMaxFactorDepth, PrecisionContext(192));
  const Real expected = pow(Real(1) / 2, Real(1) / 4) * local;
  EXPECT_LT(abs(v.value - expected).to_double(), 1e-50);
  EXPECT_EQ(v.prime_cutoff, 2u);
}

TEST(C0, AgreesWithPrimeZetaOracle) {
  for (const std::uint32_t P : {100'000u, 1'000'000u}) {
    const auto v = C0(spec_with(P));
    const double gap = log_gap(v.value, R(kC0));
    EXPECT_LE(gap, v.tail_bound.to_double()) << "P=" << P;
    // the bound is rigorous but loose; the true truncation is far smaller
    EXPECT_LT(gap, 1e-7) << "P=" << P;
  }
}

TEST(C0, CutoffsAgreeWithinTails) {
  const auto a = C0(spec_with(100'000));
  const auto b = C0(spec_with(1'000'000));
  EXPECT_LT(b.tail_bound, a.tail_bound);
  EXPECT_LE(log_gap(a.value, b.value), (a.tail_bound + b.tail_bound).to_double());
}

TEST(C0, IndependentOfJobs) {
  auto s1 = spec_with(100'000, 128);
  auto s4 = s1;
  s4.jobs = 4;
  const auto a = C0(s1);
  const auto b = C0(s4);
  EXPECT_EQ(to_decimal(a.value, 40), to_decimal(b.value, 40));
  EXPECT_EQ(to_decimal(a.tail_bound, 20), to_decimal(b.tail_bound, 20));
}

TEST(ConreyGhosh, HalfMatchesC0OverGamma) {
  const auto spec = spec_with(100'000);
  const auto c = conrey_ghosh_ck(FractionalOrder(1, 2), spec);
  const auto c0 = C0(spec);
  PrecisionGuard g(256);
  const Real expected = c0.value / gamma(Real(5) / 4, spec.precision);
  EXPECT_LT(abs(c.value - expected).to_double(), 1e-50);
  EXPECT_LE(log_gap(c.value, R(kCHalf)), c.tail_bound.to_double());
}

TEST(ConreyGhosh, QuarterMatchesOracle) {
  const auto c = conrey_ghosh_ck(FractionalOrder(1, 4), spec_with(100'000));
  EXPECT_LE(log_gap(c.value, R(kCQuarter)), c.tail_bound.to_double());
}

TEST(ConreyGhosh, OneIsExactlyOne) {
  const auto c = conrey_ghosh_ck(FractionalOrder(1, 1), spec_with(1000));
  PrecisionGuard g(256);
  EXPECT_LT(abs(c.value - 1).to_double(), 1e-50);
}

TEST(ConreyGhosh, NestedCutoffsRefine) {
  const auto a = conrey_ghosh_ck(FractionalOrder(1, 2), spec_with(2));
  const auto b = conrey_ghosh_ck(FractionalOrder(1, 2), spec_with(3));
  EXPECT_LT(b.tail_bound, a.tail_bound);
  EXPECT_LE(log_gap(a.value, b.value), (a.tail_bound + b.tail_bound).to_double());
}

TEST(ConreyGhosh, RejectsOrdersAboveOne) {
  EXPECT_THROW(conrey_ghosh_ck(FractionalOrder(3, 2), spec_with(100)), Error);
}

TEST(LocalSeries, ConreyGhoshHalfEqualsC0Termwise) {
  for (const std::uint32_t p : {2u, 3u, 5u, 7u}) {
    const auto a = ck_local_series_terms(FractionalOrder(1, 2), p, 20);
    const auto b = c0_local_series_terms(p, 20);
    ASSERT_EQ(a.size(), 20u);
    for (std::size_t m = 0; m < 20; ++m) EXPECT_EQ(a[m], b[m]) << "p=" << p << " m=" << m;
  }
  EXPECT_EQ(c0_local_series_terms(2, 3)[2], mpq_class(9, 256));
}

TEST(LocalSeries, HAndKCoefficients) {
  const auto h = h_local_coeffs(6);
  EXPECT_EQ(h[0], mpq_class(1));
  EXPECT_EQ(h[1], mpq_class(0));
  EXPECT_EQ(h[2], mpq_class(9, 64) - mpq_class(1, 16));
  const auto k = k_local_coeffs(6);
  EXPECT_EQ(k[0], mpq_class(1));
  EXPECT_EQ(k[1], mpq_class(0));
  for (const auto& c : h) EXPECT_LE(abs(c), 1);
  for (std::size_t j = 1; j < k.size(); ++j) EXPECT_LE(abs(k[j]), mpq_class(1, 4));
}

TEST(HkRatio, EqualsC0AtOne) {
  const auto spec = spec_with(100'000);
  const auto a = C0(spec);
  const auto b = hk_ratio(Real(1), spec);
  EXPECT_LE(log_gap(a.value, b.value), (a.tail_bound + b.tail_bound).to_double());
  EXPECT_LT(log_gap(a.value, b.value), 1e-25);
}

TEST(HkRatio, TimesZetaQuarterIsG) {
  const auto spec = spec_with(100'000);
  for (const auto& [s, g] : {std::pair{2, kG2}, std::pair{3, kG3}}) {
    const auto hk = hk_ratio(Real(s), spec);
    PrecisionGuard guard(256);
    const Real z = zeta_em(Complex(Real(s)), spec.precision).value.re;
    const Real v = hk.value * pow(z, Real(1) / 4);
    EXPECT_LE(log_gap(v, R(g)), hk.tail_bound.to_double() + 1e-40) << "s=" << s;
    EXPECT_LT(log_gap(v, R(g)), 1e-12) << "s=" << s;
  }
}

TEST(HkRatio, TendsToOne) {
  const auto v = hk_ratio(Real(80), spec_with(1000, 128));
  PrecisionGuard g(192);
  EXPECT_LT(abs(v.value - 1).to_double(), 1e-20);
}

TEST(HkRatio, RejectsHalfPlane) {
  EXPECT_THROW(hk_ratio(Real(0.5), spec_with(100)), Error);
}

TEST(GSeries, Basics) {
  const PrecisionContext ctx(128);
  const auto a = sieve_coeffs(FractionalOrder(1, 2), 1000);
  PrecisionGuard g(192);
  EXPECT_EQ(to_decimal(g_series(Real(3), a, 1, ctx).value, 30), to_decimal(Real(1), 30));
  const auto v = g_series(Real(4), a, 1000, ctx);
  EXPECT_LT(v.tail_bound.to_double(), 1e-9);
  EXPECT_THROW(g_series(Real(1), a, 1000, ctx), Error);
  EXPECT_THROW(g_series(Real(2), a, 1001, ctx), Error);
  const auto d1 = sieve_coeffs(FractionalOrder(1, 1), 10);
  EXPECT_THROW(g_series(Real(2), d1, 10, ctx), Error);
}

TEST(GSeries, MatchesLocalFactorProduct) {
  const PrecisionContext ctx(192);
  const auto a = sieve_coeffs(FractionalOrder(1, 2), 1'000'000);
  const auto series = g_series(Real(2), a, 1'000'000, ctx);
  PrecisionGuard g(256);
  Real prod = 1;
  for (const auto p : primes_up_to(1000)) prod *= local_factor_g(p, Real(2), FractionalOrder(1, 2), 100, ctx);
  // primes above 1000 contribute about sum_{p>1000} p^{-2}/4 < 1e-4
  const Real primes_tail(1e-4);
  EXPECT_LT(abs(series.value - prod), series.tail_bound + primes_tail * prod);
  // the series lower-bounds g(2); the true gap is the dropped tail
  EXPECT_LT(series.value, R(kG2));
  EXPECT_LT(R(kG2) - series.value, series.tail_bound);
}

TEST(GSeries, IndependentOfJobs) {
  const PrecisionContext ctx(128);
  const auto a = sieve_coeffs(FractionalOrder(1, 2), 100'000);
  const auto x = g_series(Real(1.5), a, 100'000, ctx, 1);
  const auto y = g_series(Real(1.5), a, 100'000, ctx, 3);
  EXPECT_EQ(to_decimal(x.value, 40), to_decimal(y.value, 40));
}
