#pragma once

#include <cmath>

#include "zmoment/core/bernoulli.hpp"
#include "zmoment/core/precision.hpp"
#include "zmoment/core/real.hpp"

namespace zmoment {

/// Guard bits added on top of the caller's precision inside the evaluators.
inline constexpr int kGuardBits = 32;

namespace detail {

inline bool is_nonpositive_integer(const Complex& z) {
  return z.im.is_zero() && z.re <= 0 && floor(z.re) == z.re;
}

/// Stirling series for log Gamma(w) with Re w > 0 and |w| large.  Returns false
/// if `max_terms` terms do not bring the remainder under `target`.
inline bool stirling_log_gamma(const Complex& w, const Real& target, int max_terms, Complex& out, Real& bound) {
  const Real aw = abs(w);
  const Real cos_half = sqrt((1 + w.re / aw) / 2);  // cos(arg(w)/2) > 0 for Re w > 0
  const Real sec2 = 1 / (cos_half * cos_half);
  const Complex logw = log(w);
  Complex sum = (w - Complex(Real(1) / 2)) * logw - w;
  sum.re += log(2 * const_pi()) / 2;
  const Complex w2 = w * w;
  Complex wpow = w;  // w^{2k-1}
  Real secpow = sec2 * sec2;
  Real aw_pow = aw * aw * aw;  // |w|^{2k+1}
  for (int k = 1; k <= max_terms; ++k) {
    const Real bk(bernoulli_even(k));
    sum += Complex(bk / (2L * k * (2L * k - 1))) / wpow;
    // Remainder after k terms.
    const Real bnext(bernoulli_even(k + 1));
    bound = abs(bnext) / ((2L * k + 2) * (2L * k + 1)) / aw_pow * secpow;
    if (bound < target) {
      out = std::move(sum);
      return true;
    }
    wpow *= w2;
    aw_pow *= aw * aw;
    secpow *= sec2;
  }
  return false;
}

}  // namespace detail

/// Principal branch of log Gamma(z): analytic on C minus (-inf, 0] and real on
/// the positive axis.  Absolute error of the result is below ctx.target().
inline Complex log_gamma(const Complex& z, const PrecisionContext& ctx) {
  if (detail::is_nonpositive_integer(z)) fail(ErrorKind::pole, "Gamma has a pole at " + to_decimal(z.re, 20));
  PrecisionGuard guard(ctx.bits + kGuardBits);
  const Real target = ldexp2(ctx.target_log2 - 2);
  // Shift right until the Stirling remainder is small enough, then undo the
  // shift with the recurrence.
  double radius = std::max(8.0, 0.25 * (ctx.bits + kGuardBits));
  for (int attempt = 0; attempt < 8; ++attempt, radius *= 1.5) {
    long shift = 0;
    const double re = z.re.to_double();
    const double im = z.im.to_double();
    if (std::hypot(std::max(re, 0.0), im) < radius || re < 1.0) {
      const double need = std::sqrt(std::max(radius * radius - im * im, 0.0));
      shift = static_cast<long>(std::ceil(std::max(need, 1.0) - re));
      if (shift < 0) shift = 0;
    }
    const Complex w = z + shift;
    Complex value;
    Real bound;
    if (!detail::stirling_log_gamma(w, target, kMaxBernoulliIndex - 1, value, bound)) continue;
    for (long j = 0; j < shift; ++j) value -= log(z + j);
    return value;
  }
  fail(ErrorKind::precision, "log Gamma did not converge");
}

/// Gamma(z) = exp(log Gamma(z)).
inline Complex gamma(const Complex& z, const PrecisionContext& ctx) {
  PrecisionGuard guard(ctx.bits + kGuardBits);
  return exp(log_gamma(z, ctx));
}

/// Real-argument convenience; z must not be a non-positive integer.
inline Real gamma(const Real& x, const PrecisionContext& ctx) { return gamma(Complex(x), ctx).re; }

}  // namespace zmoment
