#pragma once

#include <gmpxx.h>

#include <cmath>
#include <mutex>
#include <vector>

#include "zmoment/core/errors.hpp"

namespace zmoment {

/// Largest k for which bernoulli_even(k) = B_{2k} is available.
inline constexpr int kMaxBernoulliIndex = 300;

namespace detail {
// Tangent-number recurrence (Brent & Harvey); integer arithmetic only.
inline std::vector<mpq_class> compute_even_bernoulli(int n) {
  std::vector<mpz_class> t(static_cast<std::size_t>(n) + 1);
  t[1] = 1;
  for (int k = 2; k <= n; ++k) t[k] = (k - 1) * t[k - 1];
  for (int k = 2; k <= n; ++k) {
    for (int j = k; j <= n; ++j) t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j];
  }
  std::vector<mpq_class> b(static_cast<std::size_t>(n) + 1);
  b[0] = 1;
  for (int k = 1; k <= n; ++k) {
    mpz_class four_k;
    mpz_ui_pow_ui(four_k.get_mpz_t(), 4, static_cast<unsigned long>(k));
    mpq_class v(2 * k * t[k], four_k * (four_k - 1));
    v.canonicalize();
    b[k] = (k % 2 == 1) ? v : mpq_class(-v);
  }
  return b;
}
}  // namespace detail

/// B_{2k} exactly.  The table is built once on first use and is read-only after.
inline const mpq_class& bernoulli_even(int k) {
  static std::once_flag once;
  static std::vector<mpq_class> table;
  std::call_once(once, [] { table = detail::compute_even_bernoulli(kMaxBernoulliIndex); });
  if (k < 0 || k > kMaxBernoulliIndex) fail(ErrorKind::precision, "Bernoulli index beyond cache");
  return table[static_cast<std::size_t>(k)];
}

/// log |B_{2k}| in double precision (B_0 = 1 gives 0).
inline double log_abs_bernoulli_even(int k) {
  static std::once_flag once;
  static std::vector<double> table;
  std::call_once(once, [] {
    table.resize(kMaxBernoulliIndex + 1);
    for (int j = 0; j <= kMaxBernoulliIndex; ++j) {
      const mpq_class& b = bernoulli_even(j);
      // log|num| - log|den| via mpz sizes keeps this finite far beyond double range.
      long en = 0, ed = 0;
      const double fn = mpz_get_d_2exp(&en, b.get_num_mpz_t());
      const double fd = mpz_get_d_2exp(&ed, b.get_den_mpz_t());
      table[static_cast<std::size_t>(j)] =
          std::log(std::fabs(fn)) - std::log(std::fabs(fd)) + static_cast<double>(en - ed) * std::log(2.0);
    }
  });
  if (k < 0 || k > kMaxBernoulliIndex) fail(ErrorKind::precision, "Bernoulli index beyond cache");
  return table[static_cast<std::size_t>(k)];
}

}  // namespace zmoment
