#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace fracclique {

/// Splits [0, count) into `workers` contiguous chunks and runs
/// fn(begin, end, worker) on each; returns after all chunks finish.
template <class Fn>
void parallel_for(long long count, int workers, Fn&& fn) {
  workers = std::max(1, workers);
  if (workers == 1 || count < 2 * workers) {
    fn(0LL, count, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  const long long chunk = (count + workers - 1) / workers;
  for (int w = 1; w < workers; ++w) {
    const long long begin = std::min(count, w * chunk);
    const long long end = std::min(count, begin + chunk);
    pool.emplace_back([&fn, begin, end, w] { fn(begin, end, w); });
  }
  fn(0LL, std::min(count, chunk), 0);
  for (auto& t : pool) t.join();
}

}  // namespace fracclique
