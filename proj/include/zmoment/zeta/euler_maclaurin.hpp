#pragma once

// Reference evaluator for zeta(s) anywhere off the pole:
//
//   zeta(s) = sum_{n<N} n^-s + N^{1-s}/(s-1) + N^-s/2
//           + sum_{k=1}^{m} B_{2k}/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1} + R,
//
//   |R| <= |s(s+1)...(s+2m+1)| |B_{2m+2}| / ((2m+2)! (sigma+2m+1)) N^{-sigma-2m-1}.

#include <cmath>
#include <utility>
#include <vector>

#include "zmoment/core/bernoulli.hpp"
#include "zmoment/core/precision.hpp"
#include "zmoment/core/real.hpp"
#include "zmoment/zeta/gamma.hpp"
#include "zmoment/zeta/zeta_sample.hpp"

namespace zmoment {

struct EulerMaclaurinLimits {
  long max_terms = 20'000'000;
  int max_corrections = 200;
};

namespace detail {

struct EmPlan {
  long N = 0;
  int m = 0;
  double remainder = 0;
};

// Part of the log remainder that does not depend on N, for m = 1..m_cap:
// log |s(s+1)...(s+2m+1)| + log |B_{2m+2}| - log (2m+2)! - log(sigma + 2m + 1).
inline std::vector<double> em_log_remainder_heads(double sigma, double t, int m_cap) {
  std::vector<double> out(static_cast<std::size_t>(m_cap) + 1, 0.0);
  auto lf = [&](int j) { return 0.5 * std::log((sigma + j) * (sigma + j) + t * t); };
  double log_poch = lf(0) + lf(1);
  for (int m = 1; m <= m_cap; ++m) {
    log_poch += lf(2 * m) + lf(2 * m + 1);
    out[static_cast<std::size_t>(m)] =
        log_poch + log_abs_bernoulli_even(m + 1) - std::lgamma(2.0 * m + 3.0) - std::log(sigma + 2.0 * m + 1.0);
  }
  return out;
}

// Measured: a correction term costs about a fifth of a head term.
inline constexpr double kEmCorrectionCost = 0.2;

/// Cheapest (N, m) meeting the target, by cost N + m / 5.  N starts just above
/// |s| / 2pi, where the correction terms begin to shrink, and grows in 10%
/// steps while a larger N can still be cheaper.
inline EmPlan plan_euler_maclaurin(double sigma, double t, double log_target, const EulerMaclaurinLimits& lim) {
  const double abs_s = std::hypot(sigma, t);
  const int m_cap = std::min(lim.max_corrections, kMaxBernoulliIndex - 1);
  const std::vector<double> heads = em_log_remainder_heads(sigma, t, m_cap);
  long N = std::max(20L, static_cast<long>(std::ceil(abs_s / (2 * M_PI))));
  EmPlan best;
  double best_cost = 0;
  while (N <= lim.max_terms) {
    if (best.N > 0 && static_cast<double>(N) >= best_cost) break;
    const double log_n = std::log(static_cast<double>(N));
    for (int m = 1; m <= m_cap; ++m) {
      if (sigma + 2.0 * m + 1.0 <= 0) continue;
      const double lr = heads[static_cast<std::size_t>(m)] - (sigma + 2.0 * m + 1.0) * log_n;
      if (lr < log_target) {
        const double cost = static_cast<double>(N) + kEmCorrectionCost * m;
        if (best.N == 0 || cost < best_cost) {
          best = {N, m, std::exp(lr)};
          best_cost = cost;
        }
        break;
      }
    }
    N = std::max(N + 1, static_cast<long>(std::ceil(1.1 * static_cast<double>(N))));
  }
  if (best.N == 0) fail(ErrorKind::precision, "Euler-Maclaurin bound cannot be met within the summation limits");
  return best;
}

}  // namespace detail

namespace detail {

/// Sums the series for a planned (N, m).  `head(n)` returns (log n, n^{-sigma}).
template <class Head>
ZetaSample em_evaluate(const Complex& s, const EmPlan& plan, int wp, Head&& head) {
  Complex sum;
  double abs_sum = 0;
  for (long n = 1; n < plan.N; ++n) {
    const auto& [ln, mag] = head(static_cast<unsigned long>(n));
    abs_sum += mag.to_double();
    sum += polar(mag, -s.im * ln);
  }
  const Real lnN = log_ui(static_cast<unsigned long>(plan.N));
  const Complex n_pow = inv_pow(lnN, s);  // N^{-s}
  const Real NN(plan.N);
  sum += n_pow * NN / (s - 1L);
  sum += n_pow / 2L;

  Complex poch = s;                       // s(s+1)...(s+2k-2)
  Complex power = n_pow / NN;             // N^{-s-2k+1}
  const Real inv_n2 = 1 / (NN * NN);
  mpz_class fact = 2;                     // (2k)!
  for (int k = 1; k <= plan.m; ++k) {
    const Real coef = Real(bernoulli_even(k)) / Real(fact);
    sum += coef * poch * power;
    poch *= (s + (2L * k - 1)) * (s + 2L * k);
    power *= inv_n2;
    fact *= (2 * k + 1) * (2 * k + 2);
  }

  ZetaSample out;
  out.s = s;
  out.value = std::move(sum);
  out.method = ZetaMethod::EulerMaclaurin;
  // Truncation bound (doubles, precision independent) plus accumulated rounding.
  const double rounding = 4.0 * static_cast<double>(plan.N + plan.m + 8) * std::ldexp(1.0, 1 - wp) *
                          (abs_sum + std::fabs(abs(out.value).to_double()) + 1.0);
  out.abs_error_bound = Real(plan.remainder * (1 + 1e-9) + rounding);
  return out;
}

inline int em_working_bits(const PrecisionContext& ctx, double t) {
  return ctx.bits + kGuardBits + static_cast<int>(std::log2(2.0 + std::fabs(t)));
}

inline double em_log_target(const PrecisionContext& ctx) {
  return (static_cast<double>(ctx.target_log2) - 1.0) * std::log(2.0);
}

}  // namespace detail

/// zeta(s) by Euler-Maclaurin summation, error bound below ctx.target().
inline ZetaSample zeta_em(const Complex& s, const PrecisionContext& ctx, const EulerMaclaurinLimits& lim = {}) {
  if (s.re == 1 && s.im.is_zero()) fail(ErrorKind::pole, "zeta has a pole at s = 1");
  const int wp = detail::em_working_bits(ctx, s.im.to_double());
  PrecisionGuard guard(wp);
  const auto plan = detail::plan_euler_maclaurin(s.re.to_double(), s.im.to_double(), detail::em_log_target(ctx), lim);
  std::pair<Real, Real> h;
  return detail::em_evaluate(s, plan, wp, [&](unsigned long n) -> const std::pair<Real, Real>& {
    h.first = log_ui(n);
    h.second = exp(-s.re * h.first);
    return h;
  });
}

/// Euler-Maclaurin along a vertical line sigma + it, |t| <= t_max, with log n
/// and n^{-sigma} tabulated once.  Results equal zeta_em at the same context
/// up to rounding in the last guard bits.
class EulerMaclaurinLine {
 public:
  EulerMaclaurinLine(const Real& sigma, const PrecisionContext& ctx, double t_max, const EulerMaclaurinLimits& lim = {})
      : ctx_(ctx), lim_(lim), t_max_(t_max), wp_(detail::em_working_bits(ctx, t_max)) {
    PrecisionGuard guard(wp_);
    sigma_ = Real(sigma) + 0L;
    if (sigma_ == 1) fail(ErrorKind::domain, "the line sigma = 1 passes through the pole");
    const auto plan = detail::plan_euler_maclaurin(sigma_.to_double(), t_max, detail::em_log_target(ctx), lim);
    head_.reserve(static_cast<std::size_t>(plan.N));
    head_.emplace_back(Real(0), Real(0));
    for (long n = 1; n < plan.N; ++n) {
      Real ln = log_ui(static_cast<unsigned long>(n));
      Real mag = exp(-sigma_ * ln);
      head_.emplace_back(std::move(ln), std::move(mag));
    }
  }

  const Real& sigma() const { return sigma_; }

  ZetaSample operator()(const Real& t) const {
    if (abs(t) > t_max_) fail(ErrorKind::range, "height outside the tabulated line");
    PrecisionGuard guard(wp_);
    const Complex s(sigma_, t);
    const auto plan = detail::plan_euler_maclaurin(sigma_.to_double(), t.to_double(), detail::em_log_target(ctx_), lim_);
    std::pair<Real, Real> h;
    return detail::em_evaluate(s, plan, wp_, [&](unsigned long n) -> const std::pair<Real, Real>& {
      if (n < head_.size()) return head_[n];
      h.first = log_ui(n);
      h.second = exp(-sigma_ * h.first);
      return h;
    });
  }

 private:
  PrecisionContext ctx_;
  EulerMaclaurinLimits lim_;
  double t_max_;
  int wp_;
  Real sigma_;
  std::vector<std::pair<Real, Real>> head_;
};

}  // namespace zmoment
