#pragma once

// Arbitrary-precision real and complex scalars over MPFR.
//
// Every freshly created value takes the calling thread's working precision,
// which is set with PrecisionGuard.  Copies keep the precision of their
// source.  Worker threads must install their own guard (see parallel.hpp).

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "zmoment/core/errors.hpp"

namespace zmoment {

namespace detail {
inline thread_local mpfr_prec_t working_bits = 128;
}

inline int working_precision() { return static_cast<int>(detail::working_bits); }

/// Scoped override of the thread's working precision.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(int bits) : saved_(detail::working_bits) {
    if (bits < MPFR_PREC_MIN) fail(ErrorKind::precision, "precision below MPFR minimum");
    detail::working_bits = bits;
  }
  ~PrecisionGuard() { detail::working_bits = saved_; }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  mpfr_prec_t saved_;
};

class Real {
 public:
  Real() {
    mpfr_init2(v_, detail::working_bits);
    mpfr_set_zero(v_, 1);
  }
  Real(int x) : Real(static_cast<long>(x)) {}
  Real(long x) {
    mpfr_init2(v_, detail::working_bits);
    mpfr_set_si(v_, x, MPFR_RNDN);
  }
  Real(long long x) : Real(static_cast<long>(x)) {}
  Real(unsigned long x) {
    mpfr_init2(v_, detail::working_bits);
    mpfr_set_ui(v_, x, MPFR_RNDN);
  }
  Real(unsigned long long x) : Real(static_cast<unsigned long>(x)) {}
  Real(unsigned x) : Real(static_cast<unsigned long>(x)) {}
  Real(double x) {
    mpfr_init2(v_, detail::working_bits);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  explicit Real(const mpq_class& q) {
    mpfr_init2(v_, detail::working_bits);
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
  }
  explicit Real(const mpz_class& z) {
    mpfr_init2(v_, detail::working_bits);
    mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
  }
  /// Parses a decimal literal; rationals such as "1/3" are accepted too.
  explicit Real(std::string_view text) {
    mpfr_init2(v_, detail::working_bits);
    const std::string s(text);
    if (s.find('/') != std::string::npos) {
      mpq_class q(s);
      q.canonicalize();
      mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
      return;
    }
    if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
      mpfr_clear(v_);
      fail(ErrorKind::domain, "not a decimal number: " + s);
    }
  }

  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    v_[0] = o.v_[0];
    o.v_[0]._mpfr_d = nullptr;
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      if (v_[0]._mpfr_d == nullptr) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
      } else if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_)) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      }
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    std::swap(v_[0], o.v_[0]);
    return *this;
  }
  ~Real() {
    if (v_[0]._mpfr_d != nullptr) mpfr_clear(v_);
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }
  int precision() const { return static_cast<int>(mpfr_get_prec(v_)); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDZ); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// Binary exponent e with 0.5 <= |x| / 2^e < 1; meaningless for zero.
  long exponent2() const { return mpfr_get_exp(v_); }

  Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(long o) { mpfr_mul_si(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator/=(long o) { mpfr_div_si(v_, v_, o, MPFR_RNDN); return *this; }

  friend Real operator-(const Real& a) {
    Real r;
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator+(const Real& a, const Real& b) {
    Real r;
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, const Real& b) {
    Real r;
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, const Real& b) {
    Real r;
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, const Real& b) {
    Real r;
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator+(const Real& a, long b) {
    Real r;
    mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator+(long b, const Real& a) { return a + b; }
  friend Real operator-(const Real& a, long b) {
    Real r;
    mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator-(long b, const Real& a) {
    Real r;
    mpfr_si_sub(r.v_, b, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, long b) {
    Real r;
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator*(long b, const Real& a) { return a * b; }
  friend Real operator/(const Real& a, long b) {
    Real r;
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator/(long b, const Real& a) {
    Real r;
    mpfr_si_div(r.v_, b, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator+(const Real& a, int b) { return a + static_cast<long>(b); }
  friend Real operator+(int b, const Real& a) { return a + static_cast<long>(b); }
  friend Real operator-(const Real& a, int b) { return a - static_cast<long>(b); }
  friend Real operator-(int b, const Real& a) { return static_cast<long>(b) - a; }
  friend Real operator*(const Real& a, int b) { return a * static_cast<long>(b); }
  friend Real operator*(int b, const Real& a) { return a * static_cast<long>(b); }
  friend Real operator/(const Real& a, int b) { return a / static_cast<long>(b); }
  friend Real operator/(int b, const Real& a) { return static_cast<long>(b) / a; }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, long b) {
    const int c = mpfr_cmp_si(a.v_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  friend bool operator==(const Real& a, int b) { return a == static_cast<long>(b); }
  friend std::partial_ordering operator<=>(const Real& a, int b) { return a <=> static_cast<long>(b); }
  friend bool operator==(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, double b) {
    const int c = mpfr_cmp_d(a.v_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

 private:
  mpfr_t v_;
};

// Unary helpers.  Each returns a value at the working precision.
#define ZMOMENT_REAL_UNARY(name, fn)   \
  inline Real name(const Real& x) {    \
    Real r;                            \
    fn(r.raw(), x.raw(), MPFR_RNDN);   \
    return r;                          \
  }
ZMOMENT_REAL_UNARY(exp, mpfr_exp)
ZMOMENT_REAL_UNARY(expm1, mpfr_expm1)
ZMOMENT_REAL_UNARY(log, mpfr_log)
ZMOMENT_REAL_UNARY(log1p, mpfr_log1p)
ZMOMENT_REAL_UNARY(log2, mpfr_log2)
ZMOMENT_REAL_UNARY(sqrt, mpfr_sqrt)
ZMOMENT_REAL_UNARY(sin, mpfr_sin)
ZMOMENT_REAL_UNARY(cos, mpfr_cos)
ZMOMENT_REAL_UNARY(tan, mpfr_tan)
ZMOMENT_REAL_UNARY(atan, mpfr_atan)
ZMOMENT_REAL_UNARY(sinh, mpfr_sinh)
ZMOMENT_REAL_UNARY(cosh, mpfr_cosh)
ZMOMENT_REAL_UNARY(abs, mpfr_abs)
ZMOMENT_REAL_UNARY(real_gamma, mpfr_gamma)
#undef ZMOMENT_REAL_UNARY

inline Real floor(const Real& x) {
  Real r;
  mpfr_floor(r.raw(), x.raw());
  return r;
}
inline Real ceil(const Real& x) {
  Real r;
  mpfr_ceil(r.raw(), x.raw());
  return r;
}
inline Real round(const Real& x) {
  Real r;
  mpfr_round(r.raw(), x.raw());
  return r;
}
inline Real atan2(const Real& y, const Real& x) {
  Real r;
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}
inline Real hypot(const Real& x, const Real& y) {
  Real r;
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}
inline Real pow(const Real& x, const Real& y) {
  Real r;
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}
inline Real pow(const Real& x, long n) {
  Real r;
  mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
  return r;
}
/// n^y for a machine integer base.
inline Real pow_ui(unsigned long n, const Real& y) {
  Real r;
  mpfr_ui_pow(r.raw(), n, y.raw(), MPFR_RNDN);
  return r;
}
inline void sin_cos(const Real& x, Real& s, Real& c) { mpfr_sin_cos(s.raw(), c.raw(), x.raw(), MPFR_RNDN); }
inline void sinh_cosh(const Real& x, Real& s, Real& c) { mpfr_sinh_cosh(s.raw(), c.raw(), x.raw(), MPFR_RNDN); }
inline Real log_ui(unsigned long n) {
  Real r;
  mpfr_log_ui(r.raw(), n, MPFR_RNDN);
  return r;
}
/// 2^e exactly.
inline Real ldexp2(long e) {
  Real r(1);
  mpfr_mul_2si(r.raw(), r.raw(), e, MPFR_RNDN);
  return r;
}
inline Real min(const Real& a, const Real& b) { return a <= b ? a : b; }
inline Real max(const Real& a, const Real& b) { return a >= b ? a : b; }

inline Real const_pi() {
  Real r;
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}
inline Real const_euler() {
  Real r;
  mpfr_const_euler(r.raw(), MPFR_RNDN);
  return r;
}
inline Real const_log2() {
  Real r;
  mpfr_const_log2(r.raw(), MPFR_RNDN);
  return r;
}
/// Unit roundoff of the working precision.
inline Real epsilon() { return ldexp2(1 - working_precision()); }

/// Rounds up to a double; used when a bound must stay a bound after conversion.
inline double to_double_up(const Real& x) { return mpfr_get_d(x.raw(), MPFR_RNDU); }

/// Positional decimal rendering with `digits` significant digits.  Exponent
/// notation is only used for magnitudes of 1e30 and above.
inline std::string to_decimal(const Real& x, int digits = 30) {
  if (!x.is_finite()) return mpfr_nan_p(x.raw()) ? "nan" : (x.sign() < 0 ? "-inf" : "inf");
  if (x.is_zero()) return "0";
  mpfr_exp_t e10 = 0;
  char* raw = mpfr_get_str(nullptr, &e10, 10, static_cast<size_t>(digits), x.raw(), MPFR_RNDN);
  std::string mant(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (!mant.empty() && mant.front() == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  // value = 0.mant * 10^e10
  while (mant.size() > 1 && mant.back() == '0') mant.pop_back();
  std::string out;
  if (e10 > 30) {
    out = mant.substr(0, 1);
    if (mant.size() > 1) out += "." + mant.substr(1);
    out += "e+" + std::to_string(e10 - 1);
  } else if (e10 <= 0) {
    out = "0." + std::string(static_cast<size_t>(-e10), '0') + mant;
  } else if (static_cast<size_t>(e10) >= mant.size()) {
    out = mant + std::string(static_cast<size_t>(e10) - mant.size(), '0');
  } else {
    out = mant.substr(0, static_cast<size_t>(e10)) + "." + mant.substr(static_cast<size_t>(e10));
  }
  return sign + out;
}

/// Scientific rendering with `digits` significant digits, for human-readable
/// summaries (machine output uses to_decimal).
inline std::string to_scientific(const Real& x, int digits = 3) {
  if (!x.is_finite() || x.is_zero()) return to_decimal(x);
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", std::max(digits - 1, 0), x.raw());
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

/// Complex number over Real.  Only the operations the evaluators need.
struct Complex {
  Real re;
  Real im;

  Complex() = default;
  Complex(Real r) : re(std::move(r)), im(0) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(long r) : re(r), im(0) {}
  Complex(int r) : re(r), im(0) {}
  Complex(double r) : re(r), im(0) {}

  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Complex& operator*=(const Real& o) { re *= o; im *= o; return *this; }

  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }
  friend Complex operator*(const Real& b, const Complex& a) { return {a.re * b, a.im * b}; }
  friend Complex operator/(const Complex& a, const Real& b) { return {a.re / b, a.im / b}; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    // Smith's algorithm keeps the intermediate magnitudes bounded.
    if (abs(b.re) >= abs(b.im)) {
      Real r = b.im / b.re;
      Real d = b.re + b.im * r;
      return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
    }
    Real r = b.re / b.im;
    Real d = b.re * r + b.im;
    return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
  }
  friend Complex operator+(const Complex& a, long b) { return {a.re + b, a.im}; }
  friend Complex operator-(const Complex& a, long b) { return {a.re - b, a.im}; }
  friend Complex operator-(long b, const Complex& a) { return {b - a.re, -a.im}; }
  friend Complex operator*(const Complex& a, long b) { return {a.re * b, a.im * b}; }
  friend Complex operator/(const Complex& a, long b) { return {a.re / b, a.im / b}; }
};

inline Complex conj(const Complex& z) { return {z.re, -z.im}; }
inline Real abs(const Complex& z) { return hypot(z.re, z.im); }
inline Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
inline Real arg(const Complex& z) { return atan2(z.im, z.re); }
inline Complex polar(const Real& r, const Real& phase) {
  Real s, c;
  sin_cos(phase, s, c);
  return {r * c, r * s};
}
inline Complex exp(const Complex& z) { return polar(exp(z.re), z.im); }
/// Principal branch, arg in (-pi, pi].
inline Complex log(const Complex& z) { return {log(abs(z)), arg(z)}; }
inline Complex sqrt(const Complex& z) { return exp(log(z) / 2L); }
inline Complex pow(const Complex& z, const Complex& w) { return exp(w * log(z)); }
/// n^{-s} for a positive integer n, given log n.
inline Complex inv_pow(const Real& log_n, const Complex& s) {
  return polar(exp(-s.re * log_n), -s.im * log_n);
}
inline Complex sin(const Complex& z) {
  Real s, c, sh, ch;
  sin_cos(z.re, s, c);
  sinh_cosh(z.im, sh, ch);
  return {s * ch, c * sh};
}
inline Complex cos(const Complex& z) {
  Real s, c, sh, ch;
  sin_cos(z.re, s, c);
  sinh_cosh(z.im, sh, ch);
  return {c * ch, -(s * sh)};
}

}  // namespace zmoment
