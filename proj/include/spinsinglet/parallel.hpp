#pragma once

// Index-parallel loop over a fixed worker pool. Each index is computed exactly
// once and written to its own slot, so results do not depend on the worker count.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace spinsinglet {

template <class F>
void parallel_for(std::size_t count, unsigned workers, F&& body) {
  workers = std::max(1u, workers);
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const auto n = std::min<std::size_t>(workers, count);
  for (std::size_t w = 0; w < n; ++w) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

template <class T, class F>
std::vector<T> parallel_map(std::size_t count, unsigned workers, F&& body) {
  std::vector<T> out(count);
  parallel_for(count, workers, [&](std::size_t i) { out[i] = body(i); });
  return out;
}

}  // namespace spinsinglet
