#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace coc {

/// Index-parallel map with deterministic result placement: results[i] only
/// ever depends on i, so output is identical for any worker count.  The
/// first exception thrown by fn is rethrown on the calling thread.
template <class R>
std::vector<R> parallel_map(std::size_t count, int jobs,
                            const std::function<R(std::size_t)>& fn) {
  std::vector<R> results(count);
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mu;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        results[i] = fn(i);
      } catch (...) {
        std::scoped_lock lock(error_mu);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  const int nthreads = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(jobs), count));
  threads.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return results;
}

}  // namespace coc
