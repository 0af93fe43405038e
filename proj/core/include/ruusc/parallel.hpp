#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace ruusc {

/// Runs fn(i) for i in [0, n) on up to `threads` workers with static
/// chunking. Results must be written to preallocated per-index slots; the
/// outcome is then identical for every thread count.
inline void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  if (threads <= 1 || n == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  const int workers = std::min(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([w, workers, n, &fn] {
      for (int i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace ruusc
