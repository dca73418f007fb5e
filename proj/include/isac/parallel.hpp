#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace isac {

/// Runs fn(begin, end) over disjoint, contiguous index ranges, possibly on
/// several threads. Callers must write results into per-index storage (or
/// reduce per-range and merge in range order) so the outcome is identical
/// for every thread count.
inline void parallel_for_ranges(std::size_t count, std::size_t threads,
                                const std::function<void(std::size_t, std::size_t)>& fn) {
  constexpr std::size_t kMinPerThread = 256;
  if (threads <= 1 || count < 2 * kMinPerThread) {
    fn(0, count);
    return;
  }
  threads = std::min(threads, count / kMinPerThread);
  std::size_t chunk = (count + threads - 1) / threads;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    std::size_t lo = t * chunk;
    std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace isac
