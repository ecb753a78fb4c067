// Z(t) on [0, 60]: sign changes give the zeros, and the Riemann-Siegel and
// Euler-Maclaurin values of |zeta(1/2 + it)| are compared above t = 10.

#include <iostream>

#include "zmoment/moments.hpp"

int main() {
  using namespace zmoment;
  const PrecisionContext ctx(128);
  const HardyZ Z(ctx, 60);
  const ZeroList zeros = locate_zeros(Z, 0, 60);
  std::cout << zeros.ordinates.size() << " zeros in [0, 60]\n";
  for (const Real& z : zeros.ordinates) std::cout << "  " << to_decimal(z, 15) << "\n";
  for (const std::string& w : zeros.warnings) std::cout << "warning: " << w << "\n";

  std::cout << "\n       t   |zeta| (RS, 4 terms)      RS error bound   |RS - EM|\n";
  for (const double t : {20.0, 50.0, 100.0, 1000.0}) {
    const ZetaSample rs = zeta_rs(Real(t), 4, ctx);
    const ZetaSample em = zeta_em(Complex(Real(0.5), Real(t)), ctx);
    PrecisionGuard guard(ctx.bits + kGuardBits);
    std::cout << "  " << t << "  " << to_decimal(abs(rs.value), 20) << "  " << to_scientific(rs.abs_error_bound)
              << "  " << to_scientific(abs(abs(rs.value) - abs(em.value))) << "\n";
  }
}
