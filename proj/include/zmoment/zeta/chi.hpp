#pragma once

#include "zmoment/core/errors.hpp"
#include "zmoment/core/precision.hpp"
#include "zmoment/core/real.hpp"
#include "zmoment/zeta/gamma.hpp"

namespace zmoment {

/// chi(s) = (2^{1-s} pi^{-s} cos(pi s/2) Gamma(s))^{-1}, so that
/// zeta(1 - s) chi(s) = zeta(s).
///
/// The closed form is undefined at the odd positive integers (cos vanishes)
/// and at the non-positive integers (Gamma has poles); those raise a
/// singularity error.
inline Complex chi(const Complex& s, const PrecisionContext& ctx) {
  if (s.im.is_zero() && floor(s.re) == s.re) {
    const long n = s.re.to_long();
    if (n <= 0 || n % 2 != 0) fail(ErrorKind::singularity, "chi closed form is singular at s = " + std::to_string(n));
  }
  PrecisionGuard guard(ctx.bits + kGuardBits);
  const Real pi = const_pi();
  // log of 2^{1-s} pi^{-s} Gamma(s); the cosine stays outside the log.
  Complex lg = log_gamma(s, ctx);
  lg += (1L - s) * const_log2();
  lg -= s * log(pi);
  const Complex c = cos(s * pi / 2L);
  return exp(-lg) / c;
}

}  // namespace zmoment
