#pragma once

#include <cstddef>
#include <functional>

namespace raimsim {

// Number of workers used by parallel_for when none is given; defaults to the
// hardware concurrency. Results never depend on this value.
void set_default_workers(unsigned n);
unsigned default_workers();

// Calls fn(i) for i in [0, n), distributing indices over worker threads.
// The first exception thrown by any call is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned workers = 0);

} // namespace raimsim
