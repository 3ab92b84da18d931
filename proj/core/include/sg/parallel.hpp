#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace sg {

// Worker count for batch stages: SPECTRAL_GAUGE_THREADS when set (clamped
// to [1,64]), otherwise the hardware concurrency, never more than jobs.
inline int worker_count(std::size_t jobs) {
  long hw = static_cast<long>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (const char* env = std::getenv("SPECTRAL_GAUGE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) hw = v;
  }
  if (hw > 64) hw = 64;
  if (static_cast<std::size_t>(hw) > jobs) hw = static_cast<long>(jobs);
  return hw < 1 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, jobs). Results must be written by index so the
// output order stays deterministic regardless of scheduling; the first
// exception observed is rethrown after all workers finish.
inline void parallel_for_index(std::size_t jobs,
                               const std::function<void(std::size_t)>& fn) {
  const int nw = worker_count(jobs);
  if (nw <= 1) {
    for (std::size_t i = 0; i < jobs; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto body = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (int t = 0; t < nw; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace sg
