// C0 = prod_p (1 - 1/p)^{1/4} sum_m d_{1/2}(p^m)^2 p^{-m} at two prime cutoffs,
// next to h(1)/k(1), which is the same product reached through other series.

#include <iostream>

#include "zmoment/products.hpp"

int main() {
  using namespace zmoment;
  for (const std::uint32_t P : {10'000u, 100'000u, 1'000'000u}) {
    EulerProductSpec spec;
    spec.prime_cutoff = P;
    const ProductValue c0 = C0(spec);
    const ProductValue hk = hk_ratio(Real(1), spec);
    PrecisionGuard guard(spec.precision.bits + kGuardBits);
    std::cout << "P=" << P << "\n"
              << "  C0     " << to_decimal(c0.value, 40) << "  log tail <= " << to_scientific(c0.tail_bound) << "\n"
              << "  h/k(1) " << to_decimal(hk.value, 40) << "  |diff| = " << to_scientific(abs(c0.value - hk.value))
              << "\n";
  }
  EulerProductSpec spec;
  const ProductValue c = conrey_ghosh_ck(FractionalOrder(1, 2), spec);
  PrecisionGuard guard(spec.precision.bits + kGuardBits);
  std::cout << "c_{1/2} = C0 / Gamma(5/4) = " << to_decimal(c.value, 30) << "\n";
}
