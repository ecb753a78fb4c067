#pragma once

// Independent reference computations used to cross-check the main routines.

#include <cmath>
#include <cstdint>
#include <vector>

#include "zmoment/coeffs.hpp"
#include "zmoment/core/errors.hpp"
#include "zmoment/core/precision.hpp"
#include "zmoment/core/real.hpp"
#include "zmoment/moments.hpp"
#include "zmoment/zeta/hardy_z.hpp"

namespace zmoment::oracle {

/// Lemma 4 sum as a Stieltjes integral of w(x) = exp(-pi x^4 sin 4delta) / (x sin 4delta)
/// against C(x) = sum_{n<=x} a(n)^2, integrated by parts over the exact sieve:
///   int_{1-}^{X} w dC = C(X) w(X) + sum_{n<X} C(n) (w(n) - w(n+1)).
/// X is taken further out than the direct sum's cutoff.
inline Real lemma4_stieltjes(const Real& delta, const PrecisionContext& ctx, double threshold = 60.0) {
  PrecisionGuard guard(ctx.bits + kGuardBits);
  const Real s4 = sin(4 * delta);
  if (!(s4 > 0)) fail(ErrorKind::domain, "Stieltjes oracle needs sin 4delta > 0");
  const std::uint32_t X = lemma4_cutoff(delta, threshold);
  const CoefficientTable a = sieve_coeffs(FractionalOrder(1, 2), X);
  const std::vector<mpq_class> C = cumulative_squares(a);
  const Real x = const_pi() * s4;
  auto w = [&](std::uint32_t n) {
    const Real nn(static_cast<unsigned long>(n));
    const Real n2 = nn * nn;
    return exp(-x * n2 * n2) / (nn * s4);
  };
  Real total = Real(C[X]) * w(X);
  Real wn = w(1);
  for (std::uint32_t n = 1; n < X; ++n) {
    Real wn1 = w(n + 1);
    total += Real(C[n]) * (wn - wn1);
    wn = std::move(wn1);
  }
  return total;
}

struct SimpsonMoments {
  Real first;
  Real second;
  long evaluations = 0;
};

/// int_a^b |Z| and int_a^b Z^2 by composite Simpson with step about h between
/// sign changes of Z.  The sign changes come from a scan of step `scan` and
/// bisection, independent of locate_zeros.
inline SimpsonMoments simpson_moments(const HardyZ& Z, double a, double b, double h = 1e-3, double scan = 1e-2) {
  const PrecisionContext& ctx = Z.context();
  PrecisionGuard guard(ctx.bits + kGuardBits);
  SimpsonMoments out;
  std::vector<Real> cuts{Real(a)};
  {
    const auto steps = static_cast<long>(std::ceil((b - a) / scan));
    const Real step = (Real(b) - Real(a)) / steps;
    Real prev_t(a);
    Real prev = Z(prev_t).z;
    ++out.evaluations;
    for (long i = 1; i <= steps; ++i) {
      Real t = Real(a) + step * i;
      Real z = Z(t).z;
      ++out.evaluations;
      if (prev.sign() * z.sign() < 0) {
        Real lo = prev_t, hi = t;
        const int sl = prev.sign();
        while (hi - lo > Real(1e-13)) {
          Real mid = (lo + hi) / 2;
          const Real zm = Z(mid).z;
          ++out.evaluations;
          if (zm.sign() == sl) lo = std::move(mid); else hi = std::move(mid);
        }
        cuts.push_back((lo + hi) / 2);
      }
      prev_t = std::move(t);
      prev = std::move(z);
    }
  }
  cuts.emplace_back(b);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const Real& lo = cuts[k];
    const Real& hi = cuts[k + 1];
    long n = static_cast<long>(std::ceil(((hi - lo) / Real(h)).to_double()));
    n = std::max(2L, n + (n % 2));
    const Real dh = (hi - lo) / n;
    Real s1, s2;
    for (long i = 0; i <= n; ++i) {
      const Real z = Z(lo + dh * i).z;
      ++out.evaluations;
      const long wgt = (i == 0 || i == n) ? 1 : (i % 2 == 1 ? 4 : 2);
      s1 += wgt * abs(z);
      s2 += wgt * z * z;
    }
    out.first += s1 * dh / 3;
    out.second += s2 * dh / 3;
  }
  return out;
}

}  // namespace zmoment::oracle
