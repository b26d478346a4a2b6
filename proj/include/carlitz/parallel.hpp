#pragma once

// A small work-sharing loop: workers pull indices from a shared counter, so
// results land in index order regardless of scheduling.

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace carlitz {

inline unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

/// out[i] = fn(i) for i < n.  The first exception thrown by any task is
/// rethrown after all workers stop.
template <class R, class Fn>
std::vector<R> parallel_map(std::size_t n, unsigned threads, Fn fn) {
  std::vector<R> out(n);
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr err;
  std::mutex mu;
  auto work = [&] {
    for (std::size_t i; !failed && (i = next++) < n;) {
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!err) err = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(threads, n); ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace carlitz
