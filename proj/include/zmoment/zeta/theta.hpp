#pragma once

#include "zmoment/core/bernoulli.hpp"
#include "zmoment/core/precision.hpp"
#include "zmoment/core/real.hpp"
#include "zmoment/zeta/gamma.hpp"

namespace zmoment {

struct ThetaValue {
  Real value;
  Real error_bound;
};

/// Below this height theta is taken from log Gamma instead of its own expansion.
inline constexpr double kThetaAsymptoticMin = 10.0;

/// Riemann-Siegel theta function, theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi.
///
/// For t >= 10 it is summed from its own asymptotic expansion
///   (t/2) log(t/2pi) - t/2 - pi/8 + sum_k (1 - 2^{1-2k}) |B_2k| / (4k(2k-1) t^{2k-1}),
/// truncated at the smallest term, and does not touch the Gamma evaluator.
/// The bound is twice the first omitted term.
inline ThetaValue theta(const Real& t, const PrecisionContext& ctx) {
  const int wp = ctx.bits + kGuardBits;
  PrecisionGuard guard(wp);
  if (t < 0) {
    auto r = theta(-t, ctx);
    r.value = -r.value;
    return r;
  }
  if (t < kThetaAsymptoticMin) {
    const Complex z(Real(1) / 4, t / 2);
    const Complex lg = log_gamma(z, ctx);
    return {lg.im - t / 2 * log(const_pi()), ldexp2(ctx.target_log2)};
  }
  const Real pi = const_pi();
  Real value = t / 2 * log(t / (2 * pi)) - t / 2 - pi / 8;
  const Real target = ldexp2(ctx.target_log2 - 2);
  const Real inv_t2 = 1 / (t * t);
  Real tpow = 1 / t;  // t^{-(2k-1)}
  Real prev_term;
  Real bound;
  for (int k = 1; k < kMaxBernoulliIndex; ++k) {
    const Real c = (1 - ldexp2(1 - 2L * k)) * abs(Real(bernoulli_even(k))) / (4L * k * (2L * k - 1));
    Real term = c * tpow;
    if (k > 1 && term > prev_term) {
      bound = 2 * term;
      break;
    }
    if (term < target) {
      bound = 2 * term;
      break;
    }
    value += term;
    prev_term = std::move(term);
    tpow *= inv_t2;
  }
  return {std::move(value), std::move(bound)};
}

}  // namespace zmoment
