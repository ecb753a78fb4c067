#pragma once

// Fractional divisor coefficients d_k(n): the Dirichlet coefficients of
// zeta(s)^k, held as exact rationals.  d_{1/2}(n) is the coefficient sequence
// of the principal square root of zeta.

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "zmoment/core/errors.hpp"
#include "zmoment/core/parallel.hpp"
#include "zmoment/core/sieve.hpp"

namespace zmoment {

/// Positive rational exponent k of zeta(s)^k.
class FractionalOrder {
 public:
  explicit FractionalOrder(mpq_class k) : k_(std::move(k)) {
    k_.canonicalize();
    if (k_ <= 0) fail(ErrorKind::domain, "fractional order must be positive, got " + k_.get_str());
  }
  FractionalOrder(long num, long den) : FractionalOrder(mpq_class(num, den)) {}
  static FractionalOrder parse(std::string_view text) {
    mpq_class q;
    if (q.set_str(std::string(text), 10) != 0) fail(ErrorKind::domain, "not a rational: " + std::string(text));
    if (q.get_den() == 0) fail(ErrorKind::domain, "zero denominator: " + std::string(text));
    return FractionalOrder(q);
  }

  const mpq_class& value() const { return k_; }
  std::string str() const { return k_.get_str(); }

  friend bool operator==(const FractionalOrder& a, const FractionalOrder& b) { return a.k_ == b.k_; }

 private:
  mpq_class k_;
};

/// d_k(p^r) = prod_{j<r} (k + j)/(j + 1), the same for every prime p.
inline mpq_class prime_power_coeff(const FractionalOrder& k, int r) {
  if (r < 0) fail(ErrorKind::domain, "prime power exponent must be >= 0");
  mpq_class out = 1;
  for (int j = 0; j < r; ++j) {
    out *= (k.value() + j) / mpq_class(j + 1);
  }
  out.canonicalize();
  return out;
}

struct SieveOptions {
  /// Largest table the sieve agrees to build.
  std::uint64_t max_entries = 100'000'000;
  int jobs = 1;
};

class CoefficientTable {
 public:
  const FractionalOrder& order() const { return order_; }
  std::uint32_t limit() const { return limit_; }
  /// d_k(n) for 1 <= n <= limit.
  const mpq_class& operator[](std::uint32_t n) const { return values_[n]; }
  const mpq_class& at(std::uint32_t n) const {
    if (n < 1 || n > limit_) fail(ErrorKind::range, "coefficient index " + std::to_string(n) + " outside table");
    return values_[n];
  }
  const std::vector<std::uint32_t>& spf() const { return spf_; }

 private:
  CoefficientTable(FractionalOrder order, std::uint32_t limit, std::vector<mpq_class> values,
                   std::vector<std::uint32_t> spf)
      : order_(std::move(order)), limit_(limit), values_(std::move(values)), spf_(std::move(spf)) {}

  friend CoefficientTable sieve_coeffs(const FractionalOrder&, std::uint64_t, const SieveOptions&);
  friend CoefficientTable dirichlet_convolve(const CoefficientTable&, const CoefficientTable&, std::uint64_t);

  FractionalOrder order_;
  std::uint32_t limit_;
  std::vector<mpq_class> values_;  // index 0 unused
  std::vector<std::uint32_t> spf_;
};

namespace detail {
inline void check_table_size(std::uint64_t n, std::uint64_t budget) {
  if (n < 1) fail(ErrorKind::domain, "table limit must be >= 1");
  if (n > budget) {
    fail(ErrorKind::resource,
         "table limit " + std::to_string(n) + " exceeds the budget of " + std::to_string(budget) + " entries");
  }
  if (n > 0xFFFFFFFEull) fail(ErrorKind::resource, "table limit exceeds 32-bit indexing");
}
}  // namespace detail

/// Table of d_k(n), n <= N, from a smallest-prime-factor sieve.  Entries are
/// produced in fixed blocks, so the result is identical for any `jobs`.
inline CoefficientTable sieve_coeffs(const FractionalOrder& k, std::uint64_t N, const SieveOptions& opts = {}) {
  detail::check_table_size(N, opts.max_entries);
  const auto limit = static_cast<std::uint32_t>(N);
  auto spf = smallest_prime_factors(limit);

  int max_exp = 0;
  for (std::uint64_t v = 1; v * 2 <= N; v *= 2) ++max_exp;
  std::vector<mpq_class> pp(static_cast<std::size_t>(max_exp) + 1);
  for (int r = 0; r <= max_exp; ++r) pp[static_cast<std::size_t>(r)] = prime_power_coeff(k, r);

  constexpr std::uint32_t block = 1u << 14;
  const std::size_t blocks = (static_cast<std::size_t>(limit) + block) / block;
  auto chunks = parallel_map(blocks, opts.jobs, [&](std::size_t b) {
    const std::uint64_t lo = std::max<std::uint64_t>(1, b * block);
    const std::uint64_t hi = std::min<std::uint64_t>(limit, (b + 1) * block - 1);
    std::vector<mpq_class> part;
    part.reserve(hi >= lo ? hi - lo + 1 : 0);
    for (std::uint64_t n = lo; n <= hi; ++n) {
      mpq_class v = 1;
      std::uint32_t m = static_cast<std::uint32_t>(n);
      while (m > 1) {
        const std::uint32_t p = spf[m];
        int e = 0;
        while (m % p == 0) {
          m /= p;
          ++e;
        }
        v *= pp[static_cast<std::size_t>(e)];
      }
      part.push_back(std::move(v));
    }
    return part;
  });

  std::vector<mpq_class> values(static_cast<std::size_t>(limit) + 1);
  std::size_t n = 1;
  for (auto& part : chunks) {
    for (auto& v : part) values[n++] = std::move(v);
  }
  return CoefficientTable(k, limit, std::move(values), std::move(spf));
}

/// (A * B)(n) = sum_{d | n} A(d) B(n/d) for n <= N.  Since A and B are d_a and
/// d_b tables the product is the d_{a+b} table.
inline CoefficientTable dirichlet_convolve(const CoefficientTable& A, const CoefficientTable& B, std::uint64_t N) {
  if (N < 1) fail(ErrorKind::domain, "convolution limit must be >= 1");
  if (N > A.limit() || N > B.limit()) fail(ErrorKind::range, "convolution limit exceeds an input table");
  const auto limit = static_cast<std::uint32_t>(N);
  std::vector<mpq_class> out(static_cast<std::size_t>(limit) + 1, mpq_class(0));
  mpq_class term;
  for (std::uint32_t d = 1; d <= limit; ++d) {
    const mpq_class& a = A[d];
    for (std::uint32_t m = 1, n = d; n <= limit; ++m, n += d) {
      mpq_mul(term.get_mpq_t(), a.get_mpq_t(), B[m].get_mpq_t());
      out[n] += term;
    }
  }
  return CoefficientTable(FractionalOrder(A.order().value() + B.order().value()), limit, std::move(out),
                          smallest_prime_factors(limit));
}

/// sum_{n <= x} d_k(n)^2, exact.
inline mpq_class partial_sum_squares(const CoefficientTable& T, std::uint64_t x) {
  if (x > T.limit()) {
    fail(ErrorKind::range, "partial sum up to " + std::to_string(x) + " exceeds table limit " +
                               std::to_string(T.limit()));
  }
  mpq_class sum = 0;
  mpq_class sq;
  for (std::uint32_t n = 1; n <= x; ++n) {
    mpq_mul(sq.get_mpq_t(), T[n].get_mpq_t(), T[n].get_mpq_t());
    sum += sq;
  }
  return sum;
}

/// Cumulative sums C(x) = sum_{n <= x} d_k(n)^2 for every x <= T.limit(); C[0] = 0.
inline std::vector<mpq_class> cumulative_squares(const CoefficientTable& T) {
  std::vector<mpq_class> c(static_cast<std::size_t>(T.limit()) + 1, mpq_class(0));
  mpq_class sq;
  for (std::uint32_t n = 1; n <= T.limit(); ++n) {
    mpq_mul(sq.get_mpq_t(), T[n].get_mpq_t(), T[n].get_mpq_t());
    c[n] = c[n - 1] + sq;
  }
  return c;
}

/// CSV export, header `n,num,den`.
inline void write_csv(std::ostream& os, const CoefficientTable& T) {
  os << "n,num,den\n";
  for (std::uint32_t n = 1; n <= T.limit(); ++n) {
    os << n << ',' << T[n].get_num().get_str() << ',' << T[n].get_den().get_str() << '\n';
  }
}

}  // namespace zmoment
