#pragma once

#include <cstddef>
#include <functional>

namespace zetalab {

/// Worker count: ZETALAB_THREADS if set to a positive integer, else the hardware concurrency.
int thread_count();

/// Runs body(0..n-1) on up to thread_count() threads. The exception of the
/// lowest failing index is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace zetalab
