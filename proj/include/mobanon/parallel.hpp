#ifndef MOBANON_PARALLEL_HPP
#define MOBANON_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mobanon {

/// Number of worker threads to use; 0 picks the hardware concurrency.
unsigned resolveThreadCount(unsigned requested);

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Results must be
/// written to task-indexed slots so the outcome is independent of scheduling.
template <typename Fn>
void parallelFor(std::size_t count, unsigned threads, Fn&& fn) {
  unsigned workers = resolveThreadCount(threads);
  if (count == 0) return;
  if (workers <= 1 || count == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  if (workers > count) workers = static_cast<unsigned>(count);

  std::atomic<std::size_t> nextIndex{0};
  std::exception_ptr error;
  std::mutex errorMutex;

  auto worker = [&] {
    for (;;) {
      std::size_t i = nextIndex.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(errorMutex);
        if (!error) error = std::current_exception();
        nextIndex.store(count, std::memory_order_relaxed);
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace mobanon

#endif  // MOBANON_PARALLEL_HPP
