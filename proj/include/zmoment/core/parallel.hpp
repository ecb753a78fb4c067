#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "zmoment/core/real.hpp"

namespace zmoment {

/// Evaluates fn(i) for i in [0, count) on up to `jobs` threads and returns the
/// results in index order.  Work items are claimed dynamically, but since every
/// result lands in its own slot the output does not depend on the thread count.
/// Workers inherit the caller's working precision.
template <class Fn>
auto parallel_map(std::size_t count, int jobs, Fn&& fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  std::vector<std::optional<R>> slots(count);
  const int threads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) slots[i].emplace(fn(i));
  } else {
    const int bits = working_precision();
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    {
      std::vector<std::jthread> pool;
      pool.reserve(static_cast<std::size_t>(threads));
      for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
          PrecisionGuard guard(bits);
          for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
              slots[i].emplace(fn(i));
            } catch (...) {
              std::lock_guard lock(error_mutex);
              if (!first_error) first_error = std::current_exception();
              next.store(count);
              return;
            }
          }
        });
      }
    }
    if (first_error) std::rethrow_exception(first_error);
  }
  std::vector<R> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace zmoment
