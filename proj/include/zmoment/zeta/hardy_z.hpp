#pragma once

#include <algorithm>
#include <cmath>

#include "zmoment/core/errors.hpp"
#include "zmoment/core/precision.hpp"
#include "zmoment/core/real.hpp"
#include "zmoment/zeta/euler_maclaurin.hpp"
#include "zmoment/zeta/riemann_siegel.hpp"
#include "zmoment/zeta/theta.hpp"

namespace zmoment {

/// Below this height Z(t) comes from Euler-Maclaurin; the Riemann-Siegel
/// remainder is too coarse there for moment quadrature.
inline constexpr double kHardyZCrossover = 200.0;

/// Z(t) = e^{i theta(t)} zeta(1/2 + it) on 0 <= t <= t_max.
class HardyZ {
 public:
  struct Value {
    Real z;
    Real error_bound;
  };

  HardyZ(const PrecisionContext& ctx, double t_max)
      : ctx_(ctx),
        t_max_(t_max),
        line_(Real(1) / 2, ctx, kHardyZCrossover),
        rs_(ctx, kMaxRiemannSiegelTerms, std::max(t_max, kHardyZCrossover)) {
    if (!(t_max >= 0)) fail(ErrorKind::domain, "Z range must be nonnegative");
  }

  const PrecisionContext& context() const { return ctx_; }
  double t_max() const { return t_max_; }

  Value operator()(const Real& t) const {
    if (t < 0 || t > t_max_) fail(ErrorKind::range, "Z evaluated outside [0, " + std::to_string(t_max_) + "]");
    if (t >= kHardyZCrossover) {
      HardyZValue v = rs_.hardy_z(t);
      return {std::move(v.z), std::move(v.error_bound)};
    }
    PrecisionGuard guard(ctx_.bits + kGuardBits);
    const ZetaSample zs = line_(t);
    const ThetaValue th = theta(t, ctx_);
    Real s, c;
    sin_cos(th.value, s, c);
    Value out;
    out.z = zs.value.re * c - zs.value.im * s;
    out.error_bound = zs.abs_error_bound + abs(zs.value) * th.error_bound;
    return out;
  }

 private:
  PrecisionContext ctx_;
  double t_max_;
  EulerMaclaurinLine line_;
  RiemannSiegel rs_;
};

}  // namespace zmoment
