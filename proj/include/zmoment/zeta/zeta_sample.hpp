#pragma once

#include <optional>
#include <string_view>

#include "zmoment/core/real.hpp"

namespace zmoment {

enum class ZetaMethod { EulerMaclaurin, RiemannSiegel };

inline std::string_view to_string(ZetaMethod m) {
  return m == ZetaMethod::EulerMaclaurin ? "em" : "rs";
}

/// A point evaluation of zeta(s).
struct ZetaSample {
  Complex s;
  Complex value;
  ZetaMethod method = ZetaMethod::EulerMaclaurin;
  Real abs_error_bound;
  /// Z(t) for Riemann-Siegel samples on the critical line.
  std::optional<Real> hardy_z;
};

}  // namespace zmoment
