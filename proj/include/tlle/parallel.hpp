#pragma once

// Fan-out of independent parameter points. Results are written by index, so
// output order never depends on scheduling.

#include <cstddef>
#include <functional>

namespace tlle {

/// Worker cap: TLLE_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t worker_limit();

/// Calls fn(i) for i in [0, count) on up to worker_limit() threads. The first
/// exception thrown by any call is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

} // namespace tlle
