#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace quelab {

// Runs body(i) for i in [0, n) on up to `threads` workers. Each index is
// processed exactly once; callers store results by index, so the outcome
// does not depend on scheduling. The first exception thrown is rethrown.
template <class Body>
void parallel_for(std::size_t n, int threads, Body&& body) {
  const std::size_t workers = std::clamp<std::size_t>(threads < 1 ? 1 : threads, 1, std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace quelab
