#pragma once

#include <cstddef>
#include <functional>

namespace ribbonlink {

// Worker count: hardware concurrency, capped by the RIBBONLINK_THREADS environment variable.
unsigned worker_count();

// Calls body(i) exactly once for every i in [0, n). The first exception thrown by any
// call is rethrown on the calling thread after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Sum of f(i) over [0, n). Terms are computed in parallel and added in index order, so
// the result does not depend on the number of workers.
double ordered_sum(std::size_t n, const std::function<double(std::size_t)>& f);

}  // namespace ribbonlink
