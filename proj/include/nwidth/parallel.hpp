#pragma once

#include <cstddef>
#include <functional>

namespace nwidth {

/// Caps the number of worker threads used by internal loops. Values < 1
/// select std::thread::hardware_concurrency().
void set_thread_count(int n);
int thread_count();

/// Runs body(i) for i in [begin, end) on up to thread_count() threads.
/// Indices are split into contiguous chunks; body must only write state
/// owned by index i, so results do not depend on the thread count.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body);

} // namespace nwidth
