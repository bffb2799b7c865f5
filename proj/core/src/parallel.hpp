#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace pcmod::detail {

// Runs fn(i) for i in [0, count) on contiguous blocks, one block per hardware
// thread. fn must only write to state owned by index i.
template <typename Fn>
void parallel_for(int count, Fn&& fn) {
  const int workers =
      std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, std::max(count, 1));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const int begin = count * w / workers;
    const int end = count * (w + 1) / workers;
    pool.emplace_back([begin, end, &fn] {
      for (int i = begin; i < end; ++i) fn(i);
    });
  }
}

}  // namespace pcmod::detail
