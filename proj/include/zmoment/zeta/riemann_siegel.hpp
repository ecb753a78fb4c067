#pragma once

// Riemann-Siegel evaluation of Hardy's Z(t) = e^{i theta(t)} zeta(1/2 + it):
//
//   Z(t) = 2 sum_{n<=N} n^{-1/2} cos(theta(t) - t log n)
//        + (-1)^{N-1} tau^{-1/2} sum_{k<=K} C_k(p) tau^{-k} + R_K(t),
//
// with tau = sqrt(t / 2pi), N = floor(tau), p = tau - N.  The C_k are the usual
// combinations of derivatives of Psi(p) = cos(2pi(p^2 - p - 1/16)) / cos(2pi p).
// Psi is entire; we expand it in x = p - 1/2 as a power series (numerator over
// denominator, both known in closed form) and keep each C_k as a polynomial.

#include <array>
#include <cmath>
#include <vector>

#include "zmoment/core/errors.hpp"
#include "zmoment/core/precision.hpp"
#include "zmoment/core/real.hpp"
#include "zmoment/zeta/gamma.hpp"
#include "zmoment/zeta/theta.hpp"
#include "zmoment/zeta/zeta_sample.hpp"

namespace zmoment {

/// Lowest height at which the Riemann-Siegel evaluator is used.
inline constexpr double kRiemannSiegelMinT = 10.0;
inline constexpr int kMaxRiemannSiegelTerms = 4;

/// Constant d_K in |R_K(t)| <= d_K (t/2pi)^{-(2K+3)/4}.  For t >= 200 these are
/// Gabcke's published constants.  Below 200 we use the values measured against
/// the Euler-Maclaurin evaluator on [10, 200] with a safety factor of four.
inline double rs_remainder_constant(int terms, double t) {
  static constexpr std::array<double, 5> gabcke{0.127, 0.053, 0.011, 0.031, 0.017};
  static constexpr std::array<double, 5> low{0.5, 0.25, 0.1, 0.15, 0.15};
  return t >= 200.0 ? gabcke[static_cast<std::size_t>(terms)] : low[static_cast<std::size_t>(terms)];
}

struct HardyZValue {
  Real z;
  Real theta;
  Real error_bound;
};

class RiemannSiegel {
 public:
  /// `max_t` sizes the table of log n; larger heights still work, just slower.
  explicit RiemannSiegel(const PrecisionContext& ctx, int terms = kMaxRiemannSiegelTerms, double max_t = 1.0e4)
      : ctx_(ctx), terms_(terms), wp_(ctx.bits + kGuardBits + 16) {
    if (terms < 0 || terms > kMaxRiemannSiegelTerms) fail(ErrorKind::domain, "Riemann-Siegel terms must be in [0, 4]");
    build_coefficients();
    PrecisionGuard guard(wp_);
    const auto nmax = static_cast<unsigned long>(std::sqrt(max_t / (2 * M_PI))) + 2;
    log_n_.reserve(nmax + 1);
    inv_sqrt_n_.reserve(nmax + 1);
    log_n_.emplace_back(0);
    inv_sqrt_n_.emplace_back(0);
    for (unsigned long n = 1; n <= nmax; ++n) {
      log_n_.push_back(log_ui(n));
      inv_sqrt_n_.push_back(1 / sqrt(Real(n)));
    }
  }

  int terms() const { return terms_; }
  const PrecisionContext& context() const { return ctx_; }

  HardyZValue hardy_z(const Real& t) const {
    if (!(t >= kRiemannSiegelMinT)) {
      fail(ErrorKind::domain, "Riemann-Siegel needs t >= 10, got " + to_decimal(t, 12));
    }
    PrecisionGuard guard(wp_);
    const Real two_pi = 2 * const_pi();
    const Real tau = sqrt(t / two_pi);
    const long N = floor(tau).to_long();
    const Real p = tau - N;
    ThetaValue th = theta(t, ctx_);

    Real main;
    Real s, c;
    Real weight_sum;
    for (long n = 1; n <= N; ++n) {
      const auto un = static_cast<unsigned long>(n);
      const bool cached = un < log_n_.size();
      const Real ln = cached ? log_n_[un] : log_ui(un);
      const Real w = cached ? inv_sqrt_n_[un] : 1 / sqrt(Real(n));
      main += w * cos(th.value - t * ln);
      weight_sum += w;
    }
    main *= 2L;

    const Real x = p - Real(1) / 2;
    const Real inv_tau = 1 / tau;
    Real corr;
    Real tau_pow = 1;
    for (int k = 0; k <= terms_; ++k) {
      corr += eval_poly(cpoly_[static_cast<std::size_t>(k)], x) * tau_pow;
      tau_pow *= inv_tau;
    }
    corr /= sqrt(tau);
    if ((N - 1) % 2 != 0) corr = -corr;

    HardyZValue out;
    out.z = main + corr;
    const double td = t.to_double();
    const double tau_d = std::sqrt(td / (2 * M_PI));
    const double remainder = rs_remainder_constant(terms_, td) * std::pow(tau_d, -(2.0 * terms_ + 3.0) / 2.0);
    const double theta_part = 2.0 * weight_sum.to_double() * th.error_bound.to_double();
    const double rounding = 8.0 * static_cast<double>(N + 8) * std::ldexp(1.0, 1 - ctx_.bits);
    out.error_bound = Real(remainder + theta_part + rounding);
    out.theta = std::move(th.value);
    return out;
  }

 private:
  static Real eval_poly(const std::vector<Real>& coef, const Real& x) {
    Real acc;
    for (auto it = coef.rbegin(); it != coef.rend(); ++it) {
      acc *= x;
      acc += *it;
    }
    return acc;
  }

  void build_coefficients() {
    // Degree needed so that coefficient * (1/2)^n drops below 2^-wp at the
    // twelfth derivative; the series itself is formed with extra bits because
    // the quotient coefficients cancel heavily.
    const int degree = std::max(80, wp_ / 2 + 60) + 12;
    std::vector<Real> q;
    {
      PrecisionGuard guard(wp_ + 2 * degree + 64);
      const Real pi = const_pi();
      const Real two_pi = 2 * pi;
      const Real a = -5 * pi / 8;
      std::vector<Real> num(static_cast<std::size_t>(degree) + 1);
      std::vector<Real> den(static_cast<std::size_t>(degree) + 1);
      Real fact_j = 1;
      Real pow_j = 1;
      for (int j = 0; 2 * j <= degree; ++j) {
        if (j > 0) {
          fact_j *= static_cast<long>(j);
          pow_j *= two_pi;
        }
        // -(2pi)^j / j! * cos(a + j pi/2)
        num[static_cast<std::size_t>(2 * j)] = -(pow_j / fact_j) * cos(a + j * pi / 2);
      }
      Real term = 1;
      for (int j = 0; 2 * j <= degree; ++j) {
        if (j > 0) term *= -(two_pi * two_pi) / ((2L * j - 1) * (2L * j));
        den[static_cast<std::size_t>(2 * j)] = term;
      }
      q.resize(static_cast<std::size_t>(degree) + 1);
      for (int n = 0; n <= degree; ++n) {
        Real acc = num[static_cast<std::size_t>(n)];
        for (int j = 0; j < n; ++j) {
          if ((n - j) % 2 != 0) continue;
          acc -= q[static_cast<std::size_t>(j)] * den[static_cast<std::size_t>(n - j)];
        }
        q[static_cast<std::size_t>(n)] = acc / den[0];
      }
    }
    PrecisionGuard guard(wp_ + 16);
    const Real pi = const_pi();
    const Real pi2 = pi * pi;
    const Real pi4 = pi2 * pi2;
    const Real pi6 = pi4 * pi2;
    const Real pi8 = pi4 * pi4;
    const int out_degree = degree - 12;
    // Taylor coefficients of the j-th derivative of Psi.
    auto deriv = [&](int j) {
      std::vector<Real> d(static_cast<std::size_t>(out_degree) + 1);
      for (int n = 0; n <= out_degree; ++n) {
        Real f = 1;
        for (int i = n + 1; i <= n + j; ++i) f *= static_cast<long>(i);
        d[static_cast<std::size_t>(n)] = Real(q[static_cast<std::size_t>(n + j)]) * f;
      }
      return d;
    };
    std::array<std::vector<Real>, 13> dpsi;
    for (int j = 0; j <= 12; ++j) dpsi[static_cast<std::size_t>(j)] = deriv(j);
    auto combine = [&](std::initializer_list<std::pair<int, Real>> parts) {
      std::vector<Real> c(static_cast<std::size_t>(out_degree) + 1);
      for (const auto& [j, w] : parts) {
        for (int n = 0; n <= out_degree; ++n) {
          c[static_cast<std::size_t>(n)] += w * dpsi[static_cast<std::size_t>(j)][static_cast<std::size_t>(n)];
        }
      }
      return c;
    };
    cpoly_[0] = combine({{0, Real(1)}});
    cpoly_[1] = combine({{3, -1 / (96 * pi2)}});
    cpoly_[2] = combine({{2, 1 / (64 * pi2)}, {6, 1 / (18432 * pi4)}});
    cpoly_[3] = combine({{1, -1 / (64 * pi2)}, {5, -1 / (3840 * pi4)}, {9, -1 / (5308416 * pi6)}});
    cpoly_[4] = combine({{0, 1 / (128 * pi2)},
                         {4, 19 / (24576 * pi4)},
                         {8, 11 / (5898240 * pi6)},
                         {12, 1 / (Real(2038431744L) * pi8)}});
    // Drop the high coefficients that cannot matter on |x| <= 1/2.
    const Real cut = ldexp2(-wp_ - 8);
    for (auto& poly : cpoly_) {
      std::size_t keep = poly.size();
      while (keep > 1 && abs(poly[keep - 1]) * ldexp2(-static_cast<long>(keep - 1)) < cut) --keep;
      poly.resize(keep);
      PrecisionGuard g(wp_);
      for (auto& v : poly) v = Real(v) + 0L;  // round to the evaluation precision
    }
  }

  PrecisionContext ctx_;
  int terms_;
  int wp_;
  std::array<std::vector<Real>, kMaxRiemannSiegelTerms + 1> cpoly_;
  std::vector<Real> log_n_;
  std::vector<Real> inv_sqrt_n_;
};

/// zeta(1/2 + it) via Riemann-Siegel; `value` is e^{-i theta} Z(t).
inline ZetaSample zeta_rs(const Real& t, int terms, const PrecisionContext& ctx) {
  if (!(t >= kRiemannSiegelMinT)) {
    fail(ErrorKind::domain, "Riemann-Siegel needs t >= 10; use the Euler-Maclaurin evaluator below that");
  }
  const RiemannSiegel rs(ctx, terms, std::max(1.0e4, t.to_double()));
  HardyZValue hz = rs.hardy_z(t);
  PrecisionGuard guard(ctx.bits + kGuardBits);
  ZetaSample out;
  out.s = Complex(Real(1) / 2, t);
  out.value = polar(hz.z, -hz.theta);
  out.method = ZetaMethod::RiemannSiegel;
  out.abs_error_bound = hz.error_bound;
  out.hardy_z = std::move(hz.z);
  return out;
}

}  // namespace zmoment
