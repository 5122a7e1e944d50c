#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace hawkes {

// Run fn(0..n_tasks) across up to n_threads workers. Tasks must write to
// disjoint slots; results are then independent of scheduling, which is what
// keeps multi-threaded runs byte-reproducible. n_threads <= 0 uses the
// hardware count. The first exception thrown by a task is rethrown here.
inline void parallel_for(size_t n_tasks, int n_threads,
                         const std::function<void(size_t)>& fn) {
  if (n_tasks == 0) return;
  size_t workers = n_threads > 0 ? static_cast<size_t>(n_threads)
                                 : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n_tasks);
  if (workers <= 1) {
    for (size_t i = 0; i < n_tasks; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= n_tasks) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace hawkes
