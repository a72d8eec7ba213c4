#ifndef TRACEFORGE_PARALLEL_HPP
#define TRACEFORGE_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace traceforge {

// Worker cap: TRACEFORGE_THREADS if set (minimum 1), otherwise the hardware
// concurrency.
unsigned thread_budget();

// Runs fn(i) for i in [0, n). Work is split into contiguous blocks, one per
// worker; fn must write only to its own index's slots so results never
// depend on the schedule. Runs inline when the budget is 1 or n is small.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace traceforge

#endif
