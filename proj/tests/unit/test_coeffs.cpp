#include <gtest/gtest.h>

#include <sstream>

#include "zmoment/coeffs.hpp"

using namespace zmoment;

namespace {

// d_k(n) from the power series of (1 - x)^{-k} expanded one prime at a time,
// with no use of the sieve or the closed form for d_k(p^r).
mpq_class brute_dk(const mpq_class& k, std::uint32_t n) {
  mpq_class out = 1;
  for (std::uint32_t p = 2; n > 1; ++p) {
    int r = 0;
    while (n % p == 0) {
      n /= p;
      ++r;
    }
    if (r == 0) continue;
    // coefficient of x^r in exp(k * sum x^j / j), built term by term
    std::vector<mpq_class> c(static_cast<std::size_t>(r) + 1, mpq_class(0));
    c[0] = 1;
    for (int m = 1; m <= r; ++m) {
      mpq_class acc = 0;
      for (int j = 1; j <= m; ++j) acc += k * c[static_cast<std::size_t>(m - j)];
      c[static_cast<std::size_t>(m)] = acc / m;
    }
    out *= c[static_cast<std::size_t>(r)];
  }
  return out;
}

}  // namespace

TEST(PrimePowerCoeff, HalfOrderValues) {
  const FractionalOrder half(1, 2);
  EXPECT_EQ(prime_power_coeff(half, 0), mpq_class(1));
  EXPECT_EQ(prime_power_coeff(half, 1), mpq_class(1, 2));
  EXPECT_EQ(prime_power_coeff(half, 2), mpq_class(3, 8));
  EXPECT_EQ(prime_power_coeff(half, 3), mpq_class(5, 16));
  EXPECT_EQ(prime_power_coeff(FractionalOrder(1, 1), 5), mpq_class(1));
}

TEST(PrimePowerCoeff, RejectsBadInput) {
  EXPECT_THROW(prime_power_coeff(FractionalOrder(1, 2), -1), Error);
  EXPECT_THROW(FractionalOrder(0, 1), Error);
  EXPECT_THROW(FractionalOrder::parse("abc"), Error);
  EXPECT_EQ(FractionalOrder::parse("2/4").str(), "1/2");
}

TEST(SieveCoeffs, SmallTable) {
  const auto t = sieve_coeffs(FractionalOrder(1, 2), 12);
  EXPECT_EQ(t[1], mpq_class(1));
  EXPECT_EQ(t[12], mpq_class(3, 16));
  EXPECT_EQ(t.at(4), mpq_class(3, 8));
  EXPECT_THROW(t.at(13), Error);
  EXPECT_THROW(t.at(0), Error);
}

TEST(SieveCoeffs, MatchesIndependentExpansion) {
  for (const auto& k : {mpq_class(1, 2), mpq_class(1, 3), mpq_class(3, 2), mpq_class(2)}) {
    const auto t = sieve_coeffs(FractionalOrder(k), 400);
    for (std::uint32_t n = 1; n <= 400; ++n) ASSERT_EQ(t[n], brute_dk(k, n)) << "k=" << k << " n=" << n;
  }
}

TEST(SieveCoeffs, HalfOrderEntriesInUnitInterval) {
  const auto t = sieve_coeffs(FractionalOrder(1, 2), 100);
  for (std::uint32_t n = 1; n <= 100; ++n) {
    EXPECT_GT(t[n], 0);
    EXPECT_LE(t[n], 1);
  }
}

TEST(SieveCoeffs, IndependentOfJobs) {
  SieveOptions one, many;
  many.jobs = 4;
  const auto a = sieve_coeffs(FractionalOrder(1, 2), 70'000, one);
  const auto b = sieve_coeffs(FractionalOrder(1, 2), 70'000, many);
  for (std::uint32_t n = 1; n <= 70'000; ++n) ASSERT_EQ(a[n], b[n]);
}

TEST(SieveCoeffs, BudgetIsEnforced) {
  SieveOptions small;
  small.max_entries = 1000;
  try {
    sieve_coeffs(FractionalOrder(1, 2), 1001, small);
    FAIL() << "expected a resource error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::resource);
  }
  EXPECT_THROW(sieve_coeffs(FractionalOrder(1, 2), 0), Error);
}

TEST(DirichletConvolve, SquareRootSquaresToOne) {
  const auto a = sieve_coeffs(FractionalOrder(1, 2), 100'000);
  const auto one = dirichlet_convolve(a, a, 100'000);
  EXPECT_EQ(one.order(), FractionalOrder(1, 1));
  for (std::uint32_t n = 1; n <= 100'000; ++n) ASSERT_EQ(one[n], mpq_class(1)) << n;
}

TEST(DirichletConvolve, DivisorCount) {
  const auto d1 = sieve_coeffs(FractionalOrder(1, 1), 100);
  const auto tau = dirichlet_convolve(d1, d1, 100);
  EXPECT_EQ(tau[12], mpq_class(6));
  EXPECT_EQ(tau[97], mpq_class(2));
  EXPECT_EQ(tau[64], mpq_class(7));
  const auto d2 = sieve_coeffs(FractionalOrder(2, 1), 100);
  for (std::uint32_t n = 1; n <= 100; ++n) EXPECT_EQ(tau[n], d2[n]);
}

TEST(DirichletConvolve, RangeChecked) {
  const auto a = sieve_coeffs(FractionalOrder(1, 2), 10);
  EXPECT_THROW(dirichlet_convolve(a, a, 11), Error);
}

TEST(PartialSumSquares, SmallValues) {
  const auto a = sieve_coeffs(FractionalOrder(1, 2), 1000);
  EXPECT_EQ(partial_sum_squares(a, 1), mpq_class(1));
  EXPECT_EQ(partial_sum_squares(a, 4), mpq_class(105, 64));
  EXPECT_THROW(partial_sum_squares(a, 1001), Error);
  const auto c = cumulative_squares(a);
  EXPECT_EQ(c[0], mpq_class(0));
  EXPECT_EQ(c[4], mpq_class(105, 64));
  EXPECT_EQ(c[1000], partial_sum_squares(a, 1000));
}

TEST(WriteCsv, ExactRationals) {
  const auto a = sieve_coeffs(FractionalOrder(1, 2), 4);
  std::ostringstream os;
  write_csv(os, a);
  EXPECT_EQ(os.str(), "n,num,den\n1,1,1\n2,1,2\n3,1,2\n4,3,8\n");
}
