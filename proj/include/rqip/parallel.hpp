#pragma once

#include <cstddef>
#include <functional>

namespace rqip {

// Worker count: RQIP_THREADS if set (>= 1), else hardware concurrency.
unsigned worker_count();

// Runs fn(i) for i in [0, n). Each index must own its output slot; results
// are then independent of scheduling and worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace rqip
