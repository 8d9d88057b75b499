#pragma once

#include <cstddef>
#include <functional>

namespace spinscreen {

/// Upper bound on worker threads used by every parallel section of the
/// library. 0 means "hardware concurrency".
void set_max_threads(unsigned n) noexcept;
unsigned max_threads() noexcept;

/// Runs body(i) for i in [0, n). Exceptions from workers are rethrown on the
/// calling thread (the first one wins).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace spinscreen
