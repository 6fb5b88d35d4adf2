#pragma once
// Minimal fork-join loop over an index range.  The worker count comes from
// QBOUNCE_THREADS when set, else from std::thread::hardware_concurrency().

#include <cstddef>
#include <functional>

namespace qbounce {

int worker_count();

/// Calls body(i) for every i in [0, n), spread over worker_count() threads.
/// The first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace qbounce
