#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace fibspec {

/// Worker count from FIBSPEC_THREADS, defaulting to the hardware concurrency.
unsigned thread_count();

/// Calls fn(i) for i in [0, n) on up to thread_count() threads. Results are
/// addressed by index, so output order never depends on scheduling. The first
/// exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F&& fn) {
    std::vector<T> out(n);
    parallel_for(n, [&](std::size_t i) { out[i] = fn(i); });
    return out;
}

} // namespace fibspec
