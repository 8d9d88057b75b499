#include "spinscreen/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace spinscreen {

namespace {
std::atomic<unsigned> g_max_threads{0};
}

void set_max_threads(unsigned n) noexcept { g_max_threads.store(n); }

unsigned max_threads() noexcept {
  const unsigned cap = g_max_threads.load();
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  return cap == 0 ? hw : std::min(cap, hw);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(max_threads(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace spinscreen
