#pragma once

#include <cstddef>
#include <functional>

namespace carnot {

// Worker count from CARNOT_THREADS, else hardware concurrency (at least 1).
unsigned thread_count();

// Runs body(i) for i in [0, n) over a static block partition. Callers write
// into per-index slots, so the result never depends on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace carnot
