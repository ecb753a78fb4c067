#pragma once

#include <cmath>

#include "zmoment/core/errors.hpp"
#include "zmoment/core/real.hpp"

namespace zmoment {

/// Working precision shared by the numeric operations.
///
/// `target_abs_error` is stored as a base-2 exponent so that the context is a
/// plain value that can be copied between threads; `target()` materialises it.
struct PrecisionContext {
  int bits = 192;
  long target_log2 = -176;

  PrecisionContext() = default;
  /// Target defaults to 2^-(bits - 16), leaving guard room for accumulated rounding.
  explicit PrecisionContext(int b) : bits(b), target_log2(-(static_cast<long>(b) - 16)) { validate(); }
  PrecisionContext(int b, long tlog2) : bits(b), target_log2(tlog2) { validate(); }

  void validate() const {
    if (bits < 64) fail(ErrorKind::precision, "precision bits must be >= 64");
  }

  Real target() const {
    PrecisionGuard g(bits);
    return ldexp2(target_log2);
  }
};

}  // namespace zmoment
