#pragma once

// Euler products over the fractional divisor coefficients:
//
//   C0       = prod_p (1 - 1/p)^{1/4} sum_m d_{1/2}(p^m)^2 p^{-m}
//   c_k      = Gamma(k^2 + 1)^{-1} prod_p (1 - 1/p)^{k^2} sum_m d_k(p^m)^2 p^{-m}
//   h(s)/k(s) with h(s) = prod_p (1 - p^{-s}/4) g(s), g(s) = sum_n d_{1/2}(n)^2 n^{-s},
//            prod_p (1 - p^{-s})^{-1/4} = k(s) prod_p (1 - p^{-s}/4)^{-1}.
//
// Products are accumulated in log space over ascending primes.  Every value
// carries a bound on |log(truncated) - log(full)| that covers both the primes
// above the cutoff and the truncation of each local series.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "zmoment/coeffs.hpp"
#include "zmoment/core/errors.hpp"
#include "zmoment/core/parallel.hpp"
#include "zmoment/core/precision.hpp"
#include "zmoment/core/real.hpp"
#include "zmoment/core/sieve.hpp"
#include "zmoment/zeta/gamma.hpp"

namespace zmoment {

inline constexpr int kMaxFactorDepth = 512;

struct EulerProductSpec {
  std::uint32_t prime_cutoff = 100'000;
  /// Terms per local factor; 0 selects the smallest depth with p^{-Ms} below
  /// the working precision, capped at kMaxFactorDepth.
  int factor_depth = 0;
  PrecisionContext precision{192};
  int jobs = 1;

  void validate() const {
    if (prime_cutoff < 2) fail(ErrorKind::domain, "prime cutoff must be >= 2");
    if (factor_depth < 0) fail(ErrorKind::domain, "factor depth must be >= 1 (or 0 for automatic)");
    precision.validate();
  }
};

struct ProductValue {
  std::string name;
  Real value;
  std::uint32_t prime_cutoff = 0;
  /// Rigorous bound on |log(value) - log(full product)|.
  Real tail_bound;
  int precision_bits = 0;
};

/// Truncated real series value together with a bound on what was dropped.
struct SeriesValue {
  Real value;
  Real tail_bound;
};

namespace detail {

inline int auto_depth(std::uint32_t p, double s, int bits) {
  const double m = std::ceil((bits + 16) * std::log(2.0) / (s * std::log(static_cast<double>(p))));
  return static_cast<int>(std::clamp(m, 1.0, static_cast<double>(kMaxFactorDepth)));
}

inline int depth_for(const EulerProductSpec& spec, std::uint32_t p, double s) {
  return spec.factor_depth > 0 ? spec.factor_depth : auto_depth(p, s, spec.precision.bits);
}

inline void check_half_plane(double s) {
  if (!(s > 0.5)) fail(ErrorKind::convergence, "Euler product needs s > 1/2");
}

/// sum_{j<=M} c_j x^j by Horner.
inline Real horner(const std::vector<Real>& c, int M, const Real& x) {
  Real acc;
  for (int j = M; j >= 0; --j) {
    acc *= x;
    acc += c[static_cast<std::size_t>(j)];
  }
  return acc;
}

/// Bound on the primes above P: the normalised local factor is 1 + E with
/// |E| <= u = 2x^2/(1-x), x = p^{-s}, so |log| <= u/(1-u) <= c_P p^{-2s}, where
/// c_P uses x at P + 1 since every such p >= P + 1.  Summed with
/// pi(x) <= 1.3 x / log x by partial summation.
inline Real prime_tail_bound(std::uint32_t P, const Real& s) {
  const Real Pr(static_cast<unsigned long>(P));
  const Real x = pow(Pr + 1, -s);
  const Real u = 2 * x * x / (1 - x);
  if (u >= 1) fail(ErrorKind::convergence, "prime cutoff too small for the tail bound");
  const Real cP = 2 / ((1 - x) * (1 - u));
  return cP * Real(13) / 10 * 2 * s * pow(Pr, 1 - 2 * s) / ((2 * s - 1) * log(Pr));
}

/// Bound on sum_{j>M} |c_j| x^j given |c_{M+1}| <= lead and |c_{j+1}/c_j| <= ratio
/// for j > M.  Infinite (returned as -1) when the geometric majorant diverges.
inline Real local_tail(const Real& lead, const Real& ratio, const Real& x, int M) {
  const Real rho = ratio * x;
  if (rho >= 1) return Real(-1);
  return lead * pow(x, static_cast<long>(M) + 1) / (1 - rho);
}

struct LogBlock {
  Real log_sum;
  Real truncation;
};

/// Log-space product over primes, in fixed blocks so the reduction order does
/// not depend on the number of threads.
template <class Factor>
LogBlock log_product(const std::vector<std::uint32_t>& primes, int jobs, Factor&& factor) {
  constexpr std::size_t block = 2048;
  const std::size_t blocks = (primes.size() + block - 1) / block;
  auto parts = parallel_map(blocks, jobs, [&](std::size_t b) {
    LogBlock acc;
    const std::size_t hi = std::min(primes.size(), (b + 1) * block);
    for (std::size_t i = b * block; i < hi; ++i) {
      LogBlock f = factor(primes[i]);
      acc.log_sum += f.log_sum;
      acc.truncation += f.truncation;
    }
    return acc;
  });
  LogBlock total;
  for (auto& p : parts) {
    total.log_sum += p.log_sum;
    total.truncation += p.truncation;
  }
  return total;
}

/// Exact coefficients d_k(p^m)^2, m = 0..depth.
inline std::vector<mpq_class> squared_prime_power_coeffs(const FractionalOrder& k, int depth) {
  std::vector<mpq_class> c;
  c.reserve(static_cast<std::size_t>(depth) + 2);
  for (int m = 0; m <= depth + 1; ++m) {
    mpq_class a = prime_power_coeff(k, m);
    c.push_back(a * a);
  }
  return c;
}

inline std::vector<Real> to_reals(const std::vector<mpq_class>& q) {
  std::vector<Real> out;
  out.reserve(q.size());
  for (const auto& v : q) out.emplace_back(v);
  return out;
}

/// Bound on d_k(p^{m+1})^2 / d_k(p^m)^2 for m >= M.
inline Real coefficient_ratio_bound(const FractionalOrder& k, int M) {
  const mpq_class r = (k.value() + M) / mpq_class(M + 1);
  const Real rr(r);
  return r <= 1 ? Real(1) : rr * rr;
}

/// prod_p (1 - 1/p)^{alpha} sum_m d_k(p^m)^2 p^{-m}; shared by C0 and c_k.
inline ProductValue normalised_square_product(const std::string& name, const FractionalOrder& k,
                                              const mpq_class& alpha, const EulerProductSpec& spec) {
  spec.validate();
  if (k.value() > 1) fail(ErrorKind::domain, "tail bounds are only established for 0 < k <= 1");
  const int wp = spec.precision.bits + kGuardBits;
  PrecisionGuard guard(wp);
  const auto primes = primes_up_to(spec.prime_cutoff);
  const auto coeffs_q = squared_prime_power_coeffs(k, kMaxFactorDepth);
  const auto coeffs = to_reals(coeffs_q);
  const Real alpha_r(alpha);
  const LogBlock lp = log_product(primes, spec.jobs, [&](std::uint32_t p) {
    const int M = depth_for(spec, p, 1.0);
    const Real x = 1 / Real(static_cast<unsigned long>(p));
    const Real g = horner(coeffs, M, x);
    const Real tail = local_tail(coeffs[static_cast<std::size_t>(M) + 1], Real(1), x, M);
    return LogBlock{alpha_r * log1p(-x) + log(g), tail / g};
  });
  ProductValue out;
  out.name = name;
  out.prime_cutoff = spec.prime_cutoff;
  out.precision_bits = spec.precision.bits;
  out.value = exp(lp.log_sum);
  out.tail_bound = prime_tail_bound(spec.prime_cutoff, Real(1)) + lp.truncation;
  return out;
}

}  // namespace detail

/// Local factor sum_{m<=M} d_k(p^m)^2 p^{-ms}.  Throws a convergence error when
/// s <= 1/2 or when the dropped tail is not below ctx.target().
inline Real local_factor_g(std::uint32_t p, const Real& s, const FractionalOrder& k, int M,
                           const PrecisionContext& ctx) {
  detail::check_half_plane(s.to_double());
  if (M < 1) fail(ErrorKind::domain, "local factor depth must be >= 1");
  PrecisionGuard guard(ctx.bits + kGuardBits);
  const Real x = pow(Real(static_cast<unsigned long>(p)), -s);
  const auto c = detail::to_reals(detail::squared_prime_power_coeffs(k, M));
  const Real value = detail::horner(c, M, x);
  const Real tail = detail::local_tail(c[static_cast<std::size_t>(M) + 1], detail::coefficient_ratio_bound(k, M), x, M);
  if (tail < 0 || tail > ctx.target()) {
    fail(ErrorKind::convergence, "local factor depth " + std::to_string(M) + " leaves a tail above the target");
  }
  return value;
}

/// C0 = prod_p (1 - 1/p)^{1/4} (1 + p^{-1}/4 + (3/8)^2 p^{-2} + ...).
inline ProductValue C0(const EulerProductSpec& spec) {
  return detail::normalised_square_product("C0", FractionalOrder(1, 2), mpq_class(1, 4), spec);
}

/// Conrey-Ghosh constant c_k for 0 < k <= 1.
inline ProductValue conrey_ghosh_ck(const FractionalOrder& k, const EulerProductSpec& spec) {
  const mpq_class k2 = k.value() * k.value();
  ProductValue out = detail::normalised_square_product("c_" + k.str(), k, k2, spec);
  PrecisionGuard guard(spec.precision.bits + kGuardBits);
  out.value /= gamma(Real(k2) + 1, spec.precision);
  return out;
}

/// Coefficients of the local factor of h(s): (1 - x/4) sum_m a(p^m)^2 x^m, i.e.
/// b_0 = 1, b_1 = 0, b_j = a(p^j)^2 - a(p^{j-1})^2 / 4.
inline std::vector<mpq_class> h_local_coeffs(int depth) {
  const auto a2 = detail::squared_prime_power_coeffs(FractionalOrder(1, 2), depth);
  std::vector<mpq_class> b(static_cast<std::size_t>(depth) + 2);
  b[0] = 1;
  for (std::size_t j = 1; j < b.size(); ++j) b[j] = a2[j] - a2[j - 1] / 4;
  return b;
}

/// Coefficients of the local factor of k(s): (1 - x)^{-1/4} (1 - x/4).
inline std::vector<mpq_class> k_local_coeffs(int depth) {
  const FractionalOrder quarter(1, 4);
  std::vector<mpq_class> kappa(static_cast<std::size_t>(depth) + 2);
  for (std::size_t j = 0; j < kappa.size(); ++j) kappa[j] = prime_power_coeff(quarter, static_cast<int>(j));
  std::vector<mpq_class> c(kappa.size());
  c[0] = 1;
  for (std::size_t j = 1; j < c.size(); ++j) c[j] = kappa[j] - kappa[j - 1] / 4;
  return c;
}

/// h(s)/k(s) as prod_p h_p(s) / k_p(s), each local factor summed from its exact
/// rational series.  At s = 1 this equals C0.
inline ProductValue hk_ratio(const Real& s, const EulerProductSpec& spec) {
  spec.validate();
  detail::check_half_plane(s.to_double());
  const int wp = spec.precision.bits + kGuardBits;
  PrecisionGuard guard(wp);
  const double sd = s.to_double();
  const auto primes = primes_up_to(spec.prime_cutoff);
  const auto hc = detail::to_reals(h_local_coeffs(kMaxFactorDepth));
  const auto kc = detail::to_reals(k_local_coeffs(kMaxFactorDepth));
  const detail::LogBlock lp = detail::log_product(primes, spec.jobs, [&](std::uint32_t p) {
    const int M = detail::depth_for(spec, p, sd);
    const Real x = pow(Real(static_cast<unsigned long>(p)), -s);
    const Real h = detail::horner(hc, M, x);
    const Real k = detail::horner(kc, M, x);
    // |b_j| <= 1 and |k_j| <= 1/4 for all j.
    const Real xm = pow(x, static_cast<long>(M) + 1) / (1 - x);
    const Real trunc = xm / (abs(h) - xm) + xm / 4 / (abs(k) - xm / 4);
    return detail::LogBlock{log(h) - log(k), trunc};
  });
  ProductValue out;
  out.name = "h/k(" + to_decimal(s, 12) + ")";
  out.prime_cutoff = spec.prime_cutoff;
  out.precision_bits = spec.precision.bits;
  out.value = exp(lp.log_sum);
  out.tail_bound = detail::prime_tail_bound(spec.prime_cutoff, s) + lp.truncation;
  return out;
}

/// g(s) = sum_{n<=N} a(n)^2 n^{-s} from a d_{1/2} table, s > 1.  The tail bound
/// uses a(n)^2 <= 1: sum_{n>N} n^{-s} <= N^{1-s}/(s-1).
inline SeriesValue g_series(const Real& s, const CoefficientTable& table, std::uint32_t N,
                            const PrecisionContext& ctx, int jobs = 1) {
  if (!(s > 1)) fail(ErrorKind::convergence, "g(s) series needs s > 1");
  if (!(table.order() == FractionalOrder(1, 2))) fail(ErrorKind::domain, "g(s) needs the d_{1/2} table");
  if (N < 1 || N > table.limit()) fail(ErrorKind::range, "g(s) cutoff outside the coefficient table");
  const int wp = ctx.bits + kGuardBits;
  PrecisionGuard guard(wp);
  constexpr std::uint32_t block = 1u << 14;
  const std::size_t blocks = (static_cast<std::size_t>(N) + block - 1) / block;
  auto parts = parallel_map(blocks, jobs, [&](std::size_t b) {
    Real acc;
    mpq_class sq;
    const std::uint32_t lo = static_cast<std::uint32_t>(b * block) + 1;
    const std::uint32_t hi = std::min<std::uint32_t>(N, static_cast<std::uint32_t>((b + 1) * block));
    const Real neg_s = -s;
    for (std::uint32_t n = lo; n <= hi; ++n) {
      mpq_mul(sq.get_mpq_t(), table[n].get_mpq_t(), table[n].get_mpq_t());
      acc += Real(sq) * pow_ui(n, neg_s);
    }
    return acc;
  });
  SeriesValue out;
  for (auto& p : parts) out.value += p;
  const Real Nr(static_cast<unsigned long>(N));
  out.tail_bound = pow(Nr, 1 - s) / (s - 1);
  return out;
}

/// Leading terms of the c_k local series, (Gamma(k+m)/(m! Gamma(k)))^2 p^{-m},
/// via the Pochhammer form.
inline std::vector<mpq_class> ck_local_series_terms(const FractionalOrder& k, std::uint32_t p, int count) {
  std::vector<mpq_class> out;
  mpz_class pm = 1;
  for (int m = 0; m < count; ++m) {
    mpq_class a = prime_power_coeff(k, m);
    mpq_class term = a * a / mpq_class(pm);
    term.canonicalize();
    out.push_back(term);
    pm *= p;
  }
  return out;
}

/// Leading terms of the C0 local series, (1*3*...*(2m-1) / (2^m m!))^2 p^{-m}.
inline std::vector<mpq_class> c0_local_series_terms(std::uint32_t p, int count) {
  std::vector<mpq_class> out;
  mpz_class odd = 1;   // 1*3*...*(2m-1)
  mpz_class den = 1;   // 2^m m!
  mpz_class pm = 1;
  for (int m = 0; m < count; ++m) {
    if (m > 0) {
      odd *= 2 * m - 1;
      den *= 2 * m;
    }
    mpq_class term(odd * odd, den * den * pm);
    term.canonicalize();
    out.push_back(term);
    pm *= p;
  }
  return out;
}

}  // namespace zmoment
