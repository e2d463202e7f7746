#pragma once

#include <cstddef>
#include <functional>

namespace vgs {

// Worker count: VGS_THREADS when set to a positive integer, otherwise the
// hardware concurrency (at least 1).
std::size_t default_worker_count();

// Runs body(i) for i in [0, count) on up to `workers` threads. Indices are
// handed out dynamically; the first exception thrown is rethrown after all
// workers stop.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace vgs
