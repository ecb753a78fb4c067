#pragma once

#include <cstdint>
#include <vector>

namespace zmoment {

/// Smallest prime factor of every n in [0, limit]; spf[0] = 0, spf[1] = 1.
inline std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t limit) {
  std::vector<std::uint32_t> spf(static_cast<std::size_t>(limit) + 1, 0);
  if (limit >= 1) spf[1] = 1;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf[i] != 0) continue;
    spf[i] = static_cast<std::uint32_t>(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) {
      if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
  }
  return spf;
}

/// Primes p <= limit in ascending order.
inline std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

/// (prime, exponent) pairs of n, ascending primes, from an spf table covering n.
inline std::vector<std::pair<std::uint32_t, int>> factorize(std::uint32_t n, const std::vector<std::uint32_t>& spf) {
  std::vector<std::pair<std::uint32_t, int>> out;
  while (n > 1) {
    const std::uint32_t p = spf[n];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  return out;
}

}  // namespace zmoment
