#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace hl {

// Runs fn(i) for i in [0, count) on `jobs` threads; fn must be thread-safe.
template <class Fn>
void parallelFor(std::size_t count, int jobs, Fn&& fn) {
  if (jobs <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const int n = std::min<int>(jobs, static_cast<int>(count));
  for (int t = 0; t < n; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) fn(i);
    });
  for (auto& th : pool) th.join();
}

// Least index satisfying pred, or count if none.
template <class Pred>
std::size_t parallelFindFirst(std::size_t count, int jobs, Pred&& pred) {
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      if (pred(i)) return i;
    return count;
  }
  std::atomic<std::size_t> best{count};
  parallelFor(count, jobs, [&](std::size_t i) {
    if (i >= best.load()) return;
    if (pred(i)) {
      std::size_t cur = best.load();
      while (i < cur && !best.compare_exchange_weak(cur, i)) {
      }
    }
  });
  return best.load();
}

}  // namespace hl
