#ifndef DIAMLAW_PARALLEL_HPP
#define DIAMLAW_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace diamlaw {

/// Evaluates fn(k) for k in [0, count) on up to `workers` threads and
/// returns the results in index order.  Work items are claimed dynamically,
/// so the only ordering guarantee is the one on the returned vector; callers
/// that need bitwise reproducibility must make fn(k) depend on k alone.
template <class Fn>
auto parallel_map(std::size_t count, unsigned workers, Fn&& fn)
    -> std::vector<decltype(fn(std::size_t{}))> {
  using Result = decltype(fn(std::size_t{}));
  std::vector<Result> results(count);
  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), count));
  if (threads <= 1) {
    for (std::size_t k = 0; k < count; ++k) results[k] = fn(k);
    return results;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1, std::memory_order_relaxed);
      if (k >= count) return;
      try {
        results[k] = fn(k);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(body);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace diamlaw

#endif  // DIAMLAW_PARALLEL_HPP
