#pragma once

// Moment integrals of |zeta| along vertical lines, the Lemma-type smoothed sum
//   S(delta) = sum_n a(n)^2 / (n sin 4delta) exp(-pi n^4 sin 4delta),
// their asymptotic models, and a one-parameter fit C T log^{1/4} T.
//
// On the critical line the integrand is built from Hardy's Z.  |Z| is only
// continuous at its zeros, so every quadrature panel ends at a located zero;
// panels also end at the heights 2 pi n^2 where the Riemann-Siegel main sum
// gains a term.  [0, 10] is done with Simpson on a fixed grid.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "zmoment/coeffs.hpp"
#include "zmoment/core/errors.hpp"
#include "zmoment/core/parallel.hpp"
#include "zmoment/core/precision.hpp"
#include "zmoment/core/real.hpp"
#include "zmoment/products.hpp"
#include "zmoment/zeta/euler_maclaurin.hpp"
#include "zmoment/zeta/gamma.hpp"
#include "zmoment/zeta/hardy_z.hpp"
#include "zmoment/zeta/theta.hpp"

namespace zmoment {

enum class MomentKind { FirstSharp, FirstLaplace, SecondSharp, FractionalOffLine, Lemma4Sum };

inline std::string to_string(MomentKind k) {
  switch (k) {
    case MomentKind::FirstSharp: return "first";
    case MomentKind::FirstLaplace: return "laplace";
    case MomentKind::SecondSharp: return "second";
    case MomentKind::FractionalOffLine: return "offline";
    case MomentKind::Lemma4Sum: return "lemma4";
  }
  return "?";
}

/// Name of the model each kind is compared against first.
inline std::string primary_model_name(MomentKind k) {
  switch (k) {
    case MomentKind::FirstSharp:
    case MomentKind::FirstLaplace: return "paper";
    case MomentKind::SecondSharp: return "classical";
    case MomentKind::FractionalOffLine: return "mean_value";
    case MomentKind::Lemma4Sum: return "lemma4";
  }
  return "?";
}

struct MomentEstimate {
  /// T for sharp cutoffs, delta for the smoothed kinds.
  Real parameter;
  MomentKind kind = MomentKind::FirstSharp;
  Real value;
  Real quadrature_error;
  std::map<std::string, Real> model_predictions;
  std::string notes;
};

struct ZeroList {
  std::vector<Real> ordinates;
  double t_lo = 0;
  double t_hi = 0;
  /// Places where a grid step hid a pair of sign changes.
  std::vector<std::string> warnings;
};

struct MomentOptions {
  int jobs = 1;
  double grid_step = 0.05;
  double zero_tolerance = 1e-12;
  int gauss_nodes = 10;
  /// Rule for the off-line moment's unit panels, which oscillate more per panel.
  int offline_gauss_nodes = 20;
  /// Absolute quadrature tolerance per unit length of a panel.
  double panel_tolerance = 1e-10;
  int max_panel_depth = 24;
  double low_segment_step = 1e-2;
  /// Evaluations of Z a Laplace computation may spend.
  double z_budget = 1.0e6;
};

/// Constants the asymptotic models need: C0 from its Euler product and the
/// Gamma values.
struct ModelConstants {
  Real c0;
  Real c0_tail;
  Real gamma_5_4;
  Real gamma_1_4;
};

inline ModelConstants model_constants(const PrecisionContext& ctx, std::uint32_t prime_cutoff = 100'000, int jobs = 1) {
  EulerProductSpec spec;
  spec.prime_cutoff = prime_cutoff;
  spec.precision = ctx;
  spec.jobs = jobs;
  ProductValue c0 = C0(spec);
  PrecisionGuard guard(ctx.bits + kGuardBits);
  return {std::move(c0.value), std::move(c0.tail_bound), gamma(Real(5) / 4, ctx), gamma(Real(1) / 4, ctx)};
}

/// (sqrt 2 / Gamma(5/4)) C0 T log^{1/4} T.
inline Real model_first_paper(const Real& T, const ModelConstants& mc) {
  return sqrt(Real(2)) / mc.gamma_5_4 * mc.c0 * T * pow(log(T), Real(1) / 4);
}

/// (1 / Gamma(5/4)) C0 T log^{1/4} T.
inline Real model_first_cg(const Real& T, const ModelConstants& mc) {
  return mc.c0 / mc.gamma_5_4 * T * pow(log(T), Real(1) / 4);
}

inline Real model_laplace_paper(const Real& delta, const ModelConstants& mc) {
  return sqrt(Real(2)) / mc.gamma_5_4 * mc.c0 / delta * pow(-log(delta), Real(1) / 4);
}

inline Real model_laplace_cg(const Real& delta, const ModelConstants& mc) {
  return mc.c0 / mc.gamma_5_4 / delta * pow(-log(delta), Real(1) / 4);
}

/// T log(T/2pi) + (2 gamma - 1) T.
inline Real model_second(const Real& T) {
  return T * log(T / (2 * const_pi())) + (2 * const_euler() - 1) * T;
}

/// A delta^{-1} log^{1/4}(1/delta), A = C0 / (sqrt 2 Gamma(1/4)).
inline Real model_lemma4(const Real& delta, const ModelConstants& mc) {
  return mc.c0 / (sqrt(Real(2)) * mc.gamma_1_4) / delta * pow(-log(delta), Real(1) / 4);
}

/// (t/2pi) log(t/2pi e) + 7/8.
inline double riemann_von_mangoldt(double t) {
  if (t <= 0) return 0;
  const double x = t / (2 * M_PI);
  return x * std::log(x / M_E) + 0.875;
}

// ---------------------------------------------------------------------------
// Quadrature

/// Gauss-Legendre rule on [-1, 1] at the current working precision.
class GaussLegendre {
 public:
  explicit GaussLegendre(int n) {
    if (n < 2) fail(ErrorKind::domain, "Gauss-Legendre needs at least two nodes");
    nodes_.resize(static_cast<std::size_t>(n));
    weights_.resize(static_cast<std::size_t>(n));
    const Real eps = ldexp2(-working_precision() + 4);
    for (int i = 0; i < (n + 1) / 2; ++i) {
      Real x(std::cos(M_PI * (i + 0.75) / (n + 0.5)));
      Real dp;
      for (int iter = 0; iter < 100; ++iter) {
        Real p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
          Real p2 = ((2L * k - 1) * x * p1 - (k - 1L) * p0) / static_cast<long>(k);
          p0 = std::move(p1);
          p1 = std::move(p2);
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        const Real dx = p1 / dp;
        x -= dx;
        if (abs(dx) < eps) break;
      }
      Real p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        Real p2 = ((2L * k - 1) * x * p1 - (k - 1L) * p0) / static_cast<long>(k);
        p0 = std::move(p1);
        p1 = std::move(p2);
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const Real w = 2 / ((1 - x * x) * dp * dp);
      nodes_[static_cast<std::size_t>(i)] = x;
      weights_[static_cast<std::size_t>(i)] = w;
      nodes_[static_cast<std::size_t>(n - 1 - i)] = -x;
      weights_[static_cast<std::size_t>(n - 1 - i)] = w;
    }
  }

  std::size_t size() const { return nodes_.size(); }
  const Real& node(std::size_t i) const { return nodes_[i]; }
  const Real& weight(std::size_t i) const { return weights_[i]; }

 private:
  std::vector<Real> nodes_;
  std::vector<Real> weights_;
};

/// Integrand sample: value and a bound on its evaluation error.
struct Sample {
  Real value;
  Real error;
};

struct QuadratureResult {
  Real value;
  /// Discretisation estimate plus propagated evaluation error.
  Real error;
  long evaluations = 0;
};

namespace detail {

struct RuleValue {
  Real value;
  Real eval_error;
};

template <class F>
RuleValue apply_rule(const GaussLegendre& rule, const F& f, const Real& a, const Real& b, long& evals) {
  const Real half = (b - a) / 2;
  const Real mid = (a + b) / 2;
  RuleValue out;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const Sample s = f(mid + half * rule.node(i));
    out.value += rule.weight(i) * s.value;
    out.eval_error += rule.weight(i) * s.error;
    ++evals;
  }
  out.value *= half;
  out.eval_error *= half;
  return out;
}

template <class F>
void adaptive_panel(const GaussLegendre& rule, const F& f, const Real& a, const Real& b, RuleValue whole,
                    const Real& tol_per_length, int depth, const MomentOptions& opts, QuadratureResult& acc) {
  const Real mid = (a + b) / 2;
  RuleValue left = apply_rule(rule, f, a, mid, acc.evaluations);
  RuleValue right = apply_rule(rule, f, mid, b, acc.evaluations);
  const Real refined = left.value + right.value;
  const Real diff = abs(whole.value - refined);
  if (diff <= tol_per_length * (b - a)) {
    acc.value += refined;
    acc.error += diff + left.eval_error + right.eval_error;
    return;
  }
  if (depth >= opts.max_panel_depth) {
    fail(ErrorKind::convergence, "adaptive quadrature did not converge on [" + to_decimal(a, 15) + ", " +
                                     to_decimal(b, 15) + "]");
  }
  adaptive_panel(rule, f, a, mid, std::move(left), tol_per_length, depth + 1, opts, acc);
  adaptive_panel(rule, f, mid, b, std::move(right), tol_per_length, depth + 1, opts, acc);
}

}  // namespace detail

/// Adaptive Gauss-Legendre on [a, b]: the n-point rule on a panel against the
/// sum over its two halves, bisecting until they agree.
template <class F>
QuadratureResult integrate_panel(const GaussLegendre& rule, const F& f, const Real& a, const Real& b,
                                 const MomentOptions& opts) {
  QuadratureResult acc;
  if (!(b > a)) return acc;
  detail::RuleValue whole = detail::apply_rule(rule, f, a, b, acc.evaluations);
  detail::adaptive_panel(rule, f, a, b, std::move(whole), Real(opts.panel_tolerance), 0, opts, acc);
  return acc;
}

/// Composite Simpson on [a, b] with an even number of steps close to `step`,
/// error estimated from the rule with twice the step.
template <class F>
QuadratureResult simpson(const F& f, const Real& a, const Real& b, double step) {
  QuadratureResult out;
  if (!(b > a)) return out;
  long n = static_cast<long>(std::ceil(((b - a) / Real(step)).to_double()));
  n = std::max(4L, n + (n % 4 == 0 ? 0 : 4 - n % 4));
  const Real h = (b - a) / n;
  Real fine, coarse, eval_error;
  for (long i = 0; i <= n; ++i) {
    const Sample s = f(a + h * i);
    ++out.evaluations;
    const long wf = (i == 0 || i == n) ? 1 : (i % 2 == 1 ? 4 : 2);
    const long wc = (i % 2 == 1) ? 0 : ((i == 0 || i == n) ? 1 : ((i / 2) % 2 == 1 ? 4 : 2));
    fine += wf * s.value;
    coarse += wc * s.value;
    eval_error += s.error;
  }
  fine *= h / 3;
  coarse *= 2 * h / 3;
  out.value = std::move(fine);
  out.error = abs(out.value - coarse) / 15 + eval_error * h;
  return out;
}

// ---------------------------------------------------------------------------
// Zeros of Z

namespace detail {

inline Real bisect_zero(const HardyZ& Z, Real lo, Real hi, int sign_lo, double tol) {
  const Real eps(tol);
  while (hi - lo > eps) {
    Real mid = (lo + hi) / 2;
    const Real zm = Z(mid).z;
    if (zm.sign() == 0) return mid;
    if (zm.sign() == sign_lo) {
      lo = std::move(mid);
    } else {
      hi = std::move(mid);
    }
  }
  return (lo + hi) / 2;
}

/// Minimises sign * Z on [a, b] by golden section; returns the minimiser.
inline Real golden_min(const HardyZ& Z, Real a, Real b, int sign, double tol) {
  const Real g = (sqrt(Real(5)) - 1) / 2;
  Real c = b - g * (b - a);
  Real d = a + g * (b - a);
  Real fc = sign * Z(c).z;
  Real fd = sign * Z(d).z;
  while (b - a > Real(tol)) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = sign * Z(c).z;
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = sign * Z(d).z;
    }
    if (fc < 0 || fd < 0) break;
  }
  return fc < fd ? c : d;
}

}  // namespace detail

/// Sign changes of Z on [t_lo, t_hi]: a grid of step <= opts.grid_step, every
/// bracket refined by bisection, and each same-sign dip of |Z| searched for a
/// hidden pair.  The count is checked against the Riemann-von Mangoldt main
/// term.
inline ZeroList locate_zeros(const HardyZ& Z, double t_lo, double t_hi, const MomentOptions& opts = {}) {
  ZeroList out;
  out.t_lo = t_lo;
  out.t_hi = t_hi;
  if (t_lo < 0 || t_hi < t_lo) fail(ErrorKind::domain, "zero search needs 0 <= t_lo <= t_hi");
  if (t_hi > Z.t_max()) fail(ErrorKind::range, "zero search beyond the Z evaluator range");
  if (t_hi == t_lo) return out;
  const PrecisionContext& ctx = Z.context();
  PrecisionGuard guard(ctx.bits + kGuardBits);

  const auto steps = static_cast<std::size_t>(std::ceil((t_hi - t_lo) / opts.grid_step));
  const Real lo(t_lo);
  const Real h = (Real(t_hi) - lo) / static_cast<long>(steps);
  constexpr std::size_t block = 512;
  const std::size_t blocks = (steps + 1 + block - 1) / block;
  auto parts = parallel_map(blocks, opts.jobs, [&](std::size_t b) {
    std::vector<Real> zs;
    const std::size_t end = std::min(steps + 1, (b + 1) * block);
    for (std::size_t i = b * block; i < end; ++i) zs.push_back(Z(lo + h * static_cast<long>(i)).z);
    return zs;
  });
  std::vector<Real> grid;
  grid.reserve(steps + 1);
  for (auto& p : parts) {
    for (auto& v : p) grid.push_back(std::move(v));
  }
  auto t_at = [&](std::size_t i) { return lo + h * static_cast<long>(i); };

  struct Bracket {
    std::size_t i;  // grid interval [i, i+1] or dip centred at i
    bool dip;
  };
  std::vector<Bracket> work;
  for (std::size_t i = 0; i < steps; ++i) {
    if (grid[i].sign() * grid[i + 1].sign() < 0) work.push_back({i, false});
    if (i > 0 && grid[i - 1].sign() == grid[i].sign() && grid[i].sign() == grid[i + 1].sign() &&
        grid[i].sign() != 0 && abs(grid[i]) < abs(grid[i - 1]) && abs(grid[i]) < abs(grid[i + 1])) {
      work.push_back({i, true});
    }
  }
  struct Found {
    std::vector<Real> zeros;
    std::string warning;
  };
  auto found = parallel_map(work.size(), opts.jobs, [&](std::size_t w) {
    const Bracket& br = work[w];
    Found f;
    if (!br.dip) {
      f.zeros.push_back(detail::bisect_zero(Z, t_at(br.i), t_at(br.i + 1), grid[br.i].sign(), opts.zero_tolerance));
      return f;
    }
    const int sign = grid[br.i].sign();
    const Real a = t_at(br.i - 1);
    const Real b = t_at(br.i + 1);
    const Real m = detail::golden_min(Z, a, b, sign, 1e-9);
    if (Z(m).z.sign() == sign) return f;
    f.zeros.push_back(detail::bisect_zero(Z, a, m, sign, opts.zero_tolerance));
    f.zeros.push_back(detail::bisect_zero(Z, m, b, -sign, opts.zero_tolerance));
    f.warning = "two sign changes within one grid step near t = " + to_decimal(m, 12);
    return f;
  });
  for (auto& f : found) {
    for (auto& z : f.zeros) out.ordinates.push_back(std::move(z));
    if (!f.warning.empty()) out.warnings.push_back(std::move(f.warning));
  }
  std::sort(out.ordinates.begin(), out.ordinates.end());
  out.ordinates.erase(std::unique(out.ordinates.begin(), out.ordinates.end()), out.ordinates.end());

  // Zeros below 14 do not exist, so [0, t_lo] contributes nothing when t_lo < 14.
  const double expected = riemann_von_mangoldt(t_hi) - (t_lo < 14.0 ? 0.0 : riemann_von_mangoldt(t_lo));
  const double slack = t_lo < 14.0 ? 5.0 : 10.0;
  if (std::fabs(static_cast<double>(out.ordinates.size()) - expected) > slack) {
    fail(ErrorKind::convergence, "found " + std::to_string(out.ordinates.size()) + " zeros on [" +
                                     std::to_string(t_lo) + ", " + std::to_string(t_hi) + "], expected about " +
                                     std::to_string(expected));
  }
  return out;
}

/// Convenience overload building its own evaluator.
inline ZeroList locate_zeros(double t_lo, double t_hi, const PrecisionContext& ctx, const MomentOptions& opts = {}) {
  const HardyZ Z(ctx, std::max(t_hi, 10.0));
  return locate_zeros(Z, t_lo, t_hi, opts);
}

// ---------------------------------------------------------------------------
// Critical-line integrals

/// Maps (t, Z(t)) to the integrand value and its error given Z's error.
using CriticalWeight = std::function<Sample(const Real& t, const HardyZ::Value& z)>;

namespace detail {

inline std::vector<Real> panel_breaks(const ZeroList& zeros, double from, const std::vector<double>& cuts) {
  std::vector<Real> br;
  br.emplace_back(from);
  for (const auto& z : zeros.ordinates) br.push_back(z);
  for (const double c : cuts) br.emplace_back(c);
  for (long n = 1;; ++n) {
    const double jump = 2 * M_PI * static_cast<double>(n * n);
    if (jump > zeros.t_hi) break;
    if (jump > from) br.push_back(2 * const_pi() * (n * n));
  }
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  return br;
}

struct LineIntegral {
  /// Integral over [0, cuts[i]] for each cut.
  std::vector<Real> values;
  std::vector<Real> errors;
  long evaluations = 0;
  std::size_t zeros = 0;
  std::vector<std::string> warnings;
};

/// Integral of w(t, Z(t)) over [0, c] for each c in `cuts` (ascending, >= 10).
inline LineIntegral integrate_critical_line(const HardyZ& Z, const CriticalWeight& w, const std::vector<double>& cuts,
                                            const MomentOptions& opts) {
  if (cuts.empty()) fail(ErrorKind::domain, "no upper limits given");
  if (!std::is_sorted(cuts.begin(), cuts.end()) || cuts.front() < 10.0) {
    fail(ErrorKind::domain, "upper limits must be ascending and >= 10");
  }
  const PrecisionContext& ctx = Z.context();
  PrecisionGuard guard(ctx.bits + kGuardBits);
  auto f = [&](const Real& t) { return w(t, Z(t)); };

  LineIntegral out;
  const QuadratureResult low = simpson(f, Real(0), Real(10), opts.low_segment_step);
  out.evaluations += low.evaluations;

  const ZeroList zeros = locate_zeros(Z, 10.0, cuts.back(), opts);
  out.zeros = zeros.ordinates.size();
  out.warnings = zeros.warnings;
  const std::vector<Real> br = panel_breaks(zeros, 10.0, cuts);
  const GaussLegendre rule(opts.gauss_nodes);
  auto panels = parallel_map(br.size() - 1, opts.jobs, [&](std::size_t i) {
    return integrate_panel(rule, f, br[i], br[i + 1], opts);
  });

  Real value = low.value;
  Real error = low.error;
  std::size_t next_cut = 0;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    value += panels[i].value;
    error += panels[i].error;
    out.evaluations += panels[i].evaluations;
    while (next_cut < cuts.size() && br[i + 1] == Real(cuts[next_cut])) {
      out.values.push_back(value);
      out.errors.push_back(error);
      ++next_cut;
    }
  }
  return out;
}

inline Sample abs_z_weight(const Real&, const HardyZ::Value& z) { return {abs(z.z), z.error_bound}; }

inline Sample z_squared_weight(const Real&, const HardyZ::Value& z) {
  return {z.z * z.z, z.error_bound * (2 * abs(z.z) + z.error_bound)};
}

}  // namespace detail

/// First sharp moments for several T from one pass over [0, max T].
inline std::vector<MomentEstimate> first_moment_profile(const std::vector<double>& Ts, const PrecisionContext& ctx,
                                                       const ModelConstants& mc, const MomentOptions& opts = {}) {
  for (const double T : Ts) {
    if (!(T >= 20)) fail(ErrorKind::domain, "first moment needs T >= 20");
  }
  std::vector<double> cuts = Ts;
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const HardyZ Z(ctx, cuts.back());
  const auto li = detail::integrate_critical_line(Z, detail::abs_z_weight, cuts, opts);
  PrecisionGuard guard(ctx.bits + kGuardBits);
  std::vector<MomentEstimate> out;
  for (const double T : Ts) {
    const auto idx = static_cast<std::size_t>(std::lower_bound(cuts.begin(), cuts.end(), T) - cuts.begin());
    MomentEstimate m;
    m.parameter = Real(T);
    m.kind = MomentKind::FirstSharp;
    m.value = li.values[idx];
    m.quadrature_error = li.errors[idx];
    m.model_predictions["paper"] = model_first_paper(m.parameter, mc);
    m.model_predictions["cg"] = model_first_cg(m.parameter, mc);
    m.notes = "zeros=" + std::to_string(li.zeros) + " evaluations=" + std::to_string(li.evaluations);
    for (const auto& w : li.warnings) m.notes += "; " + w;
    out.push_back(std::move(m));
  }
  return out;
}

/// int_0^T |zeta(1/2 + it)| dt.
inline MomentEstimate first_moment_sharp(double T, const PrecisionContext& ctx, const ModelConstants& mc,
                                         const MomentOptions& opts = {}) {
  return first_moment_profile({T}, ctx, mc, opts).front();
}

/// int_0^T |zeta(1/2 + it)|^2 dt against T log(T/2pi) + (2 gamma - 1) T.
inline MomentEstimate second_moment_sharp(double T, const PrecisionContext& ctx, const MomentOptions& opts = {}) {
  if (!(T >= 20)) fail(ErrorKind::domain, "second moment needs T >= 20");
  const HardyZ Z(ctx, T);
  const auto li = detail::integrate_critical_line(Z, detail::z_squared_weight, {T}, opts);
  PrecisionGuard guard(ctx.bits + kGuardBits);
  MomentEstimate m;
  m.parameter = Real(T);
  m.kind = MomentKind::SecondSharp;
  m.value = li.values.front();
  m.quadrature_error = li.errors.front();
  m.model_predictions["classical"] = model_second(m.parameter);
  m.notes = "zeros=" + std::to_string(li.zeros) + " evaluations=" + std::to_string(li.evaluations);
  return m;
}

/// Rough count of Z evaluations needed to integrate up to T.
inline double estimated_z_evaluations(double T, const MomentOptions& opts) {
  const double grid = T / opts.grid_step;
  const double zeros = std::max(0.0, riemann_von_mangoldt(T));
  return grid + zeros * (36.0 + 3.0 * opts.gauss_nodes);
}

/// int_0^{50/delta} e^{-delta t} |zeta(1/2 + it)| dt; the dropped tail is below
/// e^{-50} relative to the Laplace integral itself.
inline MomentEstimate first_moment_laplace(double delta, const PrecisionContext& ctx, const ModelConstants& mc,
                                           const MomentOptions& opts = {}) {
  if (!(delta > 0 && delta <= 0.1)) fail(ErrorKind::domain, "Laplace moment needs 0 < delta <= 0.1");
  const double t_star = 50.0 / delta;
  const double need = estimated_z_evaluations(t_star, opts);
  if (need > opts.z_budget) {
    fail(ErrorKind::resource, "delta = " + std::to_string(delta) + " needs about " +
                                  std::to_string(static_cast<long long>(need)) + " evaluations of Z, budget is " +
                                  std::to_string(static_cast<long long>(opts.z_budget)));
  }
  const HardyZ Z(ctx, t_star);
  PrecisionGuard guard(ctx.bits + kGuardBits);
  const Real d(delta);
  const CriticalWeight w = [&d](const Real& t, const HardyZ::Value& z) -> Sample {
    const Real e = exp(-d * t);
    return {e * abs(z.z), e * z.error_bound};
  };
  const auto li = detail::integrate_critical_line(Z, w, {t_star}, opts);
  MomentEstimate m;
  m.parameter = d;
  m.kind = MomentKind::FirstLaplace;
  m.value = li.values.front();
  m.quadrature_error = li.errors.front();
  m.model_predictions["paper"] = model_laplace_paper(d, mc);
  m.model_predictions["cg"] = model_laplace_cg(d, mc);
  m.notes = "T*=" + to_decimal(Real(t_star), 12) + " zeros=" + std::to_string(li.zeros) +
            " evaluations=" + std::to_string(li.evaluations);
  return m;
}

/// int_0^T |zeta(sigma + it)| dt for 0.6 <= sigma <= 0.9, against T g(2 sigma)
/// with g summed from the d_{1/2} table.
inline MomentEstimate fractional_moment_offline(double sigma, double T, const PrecisionContext& ctx,
                                                const CoefficientTable& table, const MomentOptions& opts = {}) {
  if (!(sigma >= 0.6 && sigma <= 0.9)) fail(ErrorKind::domain, "off-line moment needs 0.6 <= sigma <= 0.9");
  if (!(T >= 100)) fail(ErrorKind::domain, "off-line moment needs T >= 100");
  PrecisionGuard guard(ctx.bits + kGuardBits);
  const Real s(sigma);
  const EulerMaclaurinLine line(s, ctx, T);
  auto f = [&](const Real& t) -> Sample {
    const ZetaSample z = line(t);
    return {abs(z.value), z.abs_error_bound};
  };
  // Unit panels: the integrand has no kinks off the line, only oscillation on
  // a scale of 2pi / log(t/2pi).
  const auto count = static_cast<std::size_t>(std::ceil(T));
  const GaussLegendre rule(opts.offline_gauss_nodes);
  const Real TT(T);
  auto panels = parallel_map(count, opts.jobs, [&](std::size_t i) {
    const Real a(static_cast<long>(i));
    const Real b = min(Real(static_cast<long>(i + 1)), TT);
    return integrate_panel(rule, f, a, b, opts);
  });
  MomentEstimate m;
  m.parameter = TT;
  m.kind = MomentKind::FractionalOffLine;
  long evals = 0;
  for (auto& p : panels) {
    m.value += p.value;
    m.quadrature_error += p.error;
    evals += p.evaluations;
  }
  const SeriesValue g = g_series(2 * s, table, table.limit(), ctx, opts.jobs);
  m.model_predictions["mean_value"] = TT * g.value;
  m.notes = "sigma=" + to_decimal(s, 12) + " g_cutoff=" + std::to_string(table.limit()) +
            " g_tail_bound=" + to_decimal(g.tail_bound, 6) + " evaluations=" + std::to_string(evals);
  return m;
}

// ---------------------------------------------------------------------------
// Smoothed coefficient sum

/// Smallest N with pi N^4 sin 4delta > threshold.
inline std::uint32_t lemma4_cutoff(const Real& delta, double threshold = 46.0) {
  const double x = M_PI * std::sin(4 * delta.to_double());
  auto N = static_cast<std::uint32_t>(std::ceil(std::pow(threshold / x, 0.25)));
  while (M_PI * std::pow(static_cast<double>(N), 4) * std::sin(4 * delta.to_double()) <= threshold) ++N;
  return N;
}

/// sum_n a(n)^2 / (n sin 4delta) exp(-pi n^4 sin 4delta), summed directly up to
/// the cutoff.  quadrature_error is a bound on the dropped tail.
inline MomentEstimate lemma4_sum(const Real& delta, const PrecisionContext& ctx, const ModelConstants& mc) {
  PrecisionGuard guard(ctx.bits + kGuardBits);
  const Real s4 = sin(4 * delta);
  if (!(delta > 0) || !(s4 > 0)) fail(ErrorKind::domain, "Lemma 4 sum needs sin 4delta > 0");
  if (delta > Real(0.05)) fail(ErrorKind::domain, "Lemma 4 sum needs delta <= 0.05");
  const std::uint32_t N = lemma4_cutoff(delta);
  const CoefficientTable a = sieve_coeffs(FractionalOrder(1, 2), N);
  const Real x = const_pi() * s4;
  MomentEstimate m;
  m.parameter = delta;
  m.kind = MomentKind::Lemma4Sum;
  for (std::uint32_t n = 1; n <= N; ++n) {
    const Real an(a[n]);
    const Real nn(static_cast<unsigned long>(n));
    const Real n2 = nn * nn;
    m.value += an * an * exp(-x * n2 * n2) / (nn * s4);
  }
  // Terms beyond N shrink by at least exp(-4x(N+1)^3) each step, and a(n)^2 <= 1.
  const Real n1(static_cast<unsigned long>(N) + 1);
  const Real first = exp(-x * pow(n1, 4L)) / (n1 * s4);
  m.quadrature_error = first / (1 - exp(-4 * x * pow(n1, 3L)));
  m.model_predictions["lemma4"] = model_lemma4(delta, mc);
  m.notes = "N=" + std::to_string(N);
  return m;
}

// ---------------------------------------------------------------------------
// Constant fit

struct FitResult {
  Real c_hat;
  /// value / (T log^{1/4} T) for each point.
  std::vector<Real> ratios;
  /// value - C_hat T log^{1/4} T.
  std::vector<Real> residuals;
  /// sqrt 2 C0 / Gamma(5/4) and C0 / Gamma(5/4).
  Real reference_paper;
  Real reference_cg;
};

/// Least-squares C in value ~ C T log^{1/4} T.
inline FitResult fit_constant(const std::vector<std::pair<Real, Real>>& data, const ModelConstants& mc) {
  if (data.size() < 3) fail(ErrorKind::degenerate_fit, "fit needs at least three points");
  for (std::size_t i = 1; i < data.size(); ++i) {
    if (!(data[i].first > data[i - 1].first)) fail(ErrorKind::degenerate_fit, "fit needs strictly ascending T");
  }
  if (!(data.front().first > 1)) fail(ErrorKind::degenerate_fit, "fit needs T > 1");
  if (data.back().first < 10 * data.front().first) {
    fail(ErrorKind::degenerate_fit, "fit data spans less than one decade in T");
  }
  FitResult out;
  Real num, den;
  std::vector<Real> basis;
  for (const auto& [T, v] : data) {
    Real f = T * pow(log(T), Real(1) / 4);
    num += v * f;
    den += f * f;
    out.ratios.push_back(v / f);
    basis.push_back(std::move(f));
  }
  out.c_hat = num / den;
  for (std::size_t i = 0; i < data.size(); ++i) out.residuals.push_back(data[i].second - out.c_hat * basis[i]);
  out.reference_paper = sqrt(Real(2)) * mc.c0 / mc.gamma_5_4;
  out.reference_cg = mc.c0 / mc.gamma_5_4;
  return out;
}

}  // namespace zmoment
