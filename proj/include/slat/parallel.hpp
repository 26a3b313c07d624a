#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace slat {

/// Worker count from an explicit request, else SLAT_JOBS, else 1.
unsigned resolve_jobs(unsigned requested);

/// Calls fn(i) for i in [0, count) on up to `jobs` threads. Indices are handed
/// out dynamically; the first exception is rethrown after all workers stop.
template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
      }
    }
  };
  std::vector<std::thread> threads;
  unsigned n = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  threads.reserve(n);
  for (unsigned t = 0; t < n; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace slat
