#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace lochmf {

// Worker count: explicit request, else LOCHMF_THREADS, else hardware concurrency.
int worker_count(int requested);

// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index is handled
// exactly once; callers store results by index so output never depends on scheduling.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

// Fixed-shape pairwise tree reduction; the bracketing depends only on v.size().
template <class T>
T pairwise_sum(const std::vector<T>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo == 0) return T{};
  if (hi - lo == 1) return v[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
  return pairwise_sum(v, 0, v.size());
}

}  // namespace lochmf
