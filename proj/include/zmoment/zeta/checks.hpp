#pragma once

// Empirical checks on the Gamma and zeta evaluators: the fourth-root Stirling
// factorisation of Gamma(s) and a convexity-type bound for |zeta(s)|.

#include <cmath>
#include <vector>

#include "zmoment/core/errors.hpp"
#include "zmoment/core/precision.hpp"
#include "zmoment/core/real.hpp"
#include "zmoment/zeta/euler_maclaurin.hpp"
#include "zmoment/zeta/gamma.hpp"

namespace zmoment {

struct StirlingCheckRow {
  double sigma = 0;
  double t = 0;
  /// |Gamma(s)^{1/4} / RHS - 1| with both sides on their principal branches.
  double relative_error = 0;
  /// | |Gamma(s)|^{1/4} / |RHS| - 1 |.
  double magnitude_relative_error = 0;
  /// relative_error * |s|; bounded if the error is O(1/|s|).
  double scaled_error = 0;
};

/// Compares Gamma(s)^{1/4} with 2^{-5/8} pi^{-3/8} 2^{s/2} Gamma((s + 3/2)/4)
/// along s = sigma + it.  The fourth root is exp(log Gamma(s) / 4) with the
/// log-Gamma branch continued from the positive real axis, which is the
/// principal log Gamma for t != 0.
inline std::vector<StirlingCheckRow> gamma_quarter_stirling_check(double sigma, const std::vector<double>& t_values,
                                                                  const PrecisionContext& ctx) {
  if (sigma < 0.0 || sigma > 1.0) fail(ErrorKind::domain, "Stirling check needs 0 <= sigma <= 1");
  PrecisionGuard guard(ctx.bits + kGuardBits);
  const Real pi = const_pi();
  const Real ln2 = const_log2();
  std::vector<StirlingCheckRow> rows;
  rows.reserve(t_values.size());
  for (const double t : t_values) {
    if (t == 0.0) fail(ErrorKind::domain, "Stirling check needs |t| > 0");
    const Complex s{Real(sigma), Real(t)};
    const Complex lhs = log_gamma(s, ctx) / 4L;
    Complex rhs = log_gamma((s + Complex(Real(3) / 2)) / 4L, ctx);
    rhs.re -= Real(5) / 8 * ln2 + Real(3) / 8 * log(pi);
    rhs += s * ln2 / 2L;
    const Complex diff = lhs - rhs;
    const Complex ratio_minus_one = exp(diff) - 1L;
    StirlingCheckRow row;
    row.sigma = sigma;
    row.t = t;
    row.relative_error = abs(ratio_minus_one).to_double();
    row.magnitude_relative_error = std::fabs(expm1(diff.re).to_double());
    row.scaled_error = row.relative_error * std::hypot(sigma, t);
    rows.push_back(row);
  }
  return rows;
}

struct ConvexitySample {
  double sigma = 0;
  double t = 0;
  double ratio = 0;
};

struct ConvexityResult {
  /// Largest |zeta(s)| / ((2+|t|)^{(1-sigma)/3} log(2+|t|)) over the samples.
  double fitted_constant = 0;
  std::vector<ConvexitySample> samples;
};

inline ConvexityResult convexity_bound_check(const std::vector<Complex>& samples, const PrecisionContext& ctx) {
  ConvexityResult out;
  PrecisionGuard guard(ctx.bits + kGuardBits);
  for (const auto& s : samples) {
    const double sigma = s.re.to_double();
    const double t = s.im.to_double();
    if (sigma < 0.5 || sigma > 1.0 || std::fabs(t) > 1.0e4) {
      fail(ErrorKind::domain, "convexity check needs 1/2 <= sigma <= 1 and |t| <= 1e4");
    }
    const ZetaSample z = zeta_em(s, ctx);
    const Real at = abs(s.im);
    const Real scale = pow(2 + at, (1 - s.re) / 3) * log(2 + at);
    const double ratio = (abs(z.value) / scale).to_double();
    if (!std::isfinite(ratio)) fail(ErrorKind::convergence, "non-finite convexity ratio");
    out.samples.push_back({sigma, t, ratio});
    out.fitted_constant = std::max(out.fitted_constant, ratio);
  }
  return out;
}

}  // namespace zmoment
