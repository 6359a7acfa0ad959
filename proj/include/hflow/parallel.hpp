#ifndef HFLOW_PARALLEL_HPP_
#define HFLOW_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace hflow {

namespace detail {
inline std::atomic<unsigned> &thread_cap()
{
  static std::atomic<unsigned> cap{0};
  return cap;
}
}  // namespace detail

/// Caps the worker count used by parallel_for; 0 restores the default.
inline void set_thread_count(unsigned n) { detail::thread_cap().store(n); }

/**
 * @brief Worker count: explicit cap, else HFLOW_THREADS, else hardware concurrency.
 */
inline unsigned thread_count()
{
  if (unsigned cap = detail::thread_cap().load(); cap > 0) { return cap; }
  if (const char *env = std::getenv("HFLOW_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) { return static_cast<unsigned>(v); }
    } catch (const std::exception &) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/**
 * @brief Calls fn(i) for i in [0, n) over contiguous chunks.
 *
 * fn must only write to state owned by index i; results are then independent
 * of scheduling. The first exception thrown by a worker is rethrown.
 */
template<typename Fn>
void parallel_for(std::size_t n, Fn &&fn)
{
  const std::size_t workers = std::min<std::size_t>(thread_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) { fn(i); }
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) { break; }
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) { fn(i); }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) { error = std::current_exception(); }
      }
    });
  }
  for (auto &t : pool) { t.join(); }
  if (error) { std::rethrow_exception(error); }
}

}  // namespace hflow

#endif  // HFLOW_PARALLEL_HPP_
