// int_0^T |zeta(1/2 + it)| dt for a few T, and the constant C in
// C T log^{1/4} T fitted to them, next to C0/Gamma(5/4) and sqrt 2 times it.

#include <iostream>

#include "zmoment/moments.hpp"

int main() {
  using namespace zmoment;
  const PrecisionContext ctx(128);
  const ModelConstants mc = model_constants(ctx);
  const std::vector<double> Ts{100, 200, 500, 1000};
  const auto ms = first_moment_profile(Ts, ctx, mc);
  PrecisionGuard guard(ctx.bits + kGuardBits);
  std::vector<std::pair<Real, Real>> data;
  for (const auto& m : ms) {
    std::cout << "T=" << to_decimal(m.parameter, 6) << "  I=" << to_decimal(m.value, 15)
              << "  +- " << to_scientific(m.quadrature_error) << "  (" << m.notes << ")\n";
    data.emplace_back(m.parameter, m.value);
  }
  const FitResult fit = fit_constant(data, mc);
  std::cout << "C_hat            " << to_decimal(fit.c_hat, 10) << "\n"
            << "C0/Gamma(5/4)    " << to_decimal(fit.reference_cg, 10) << "\n"
            << "sqrt2 C0/Gamma   " << to_decimal(fit.reference_paper, 10) << "\n";
}
