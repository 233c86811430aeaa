#pragma once

#include <cstddef>
#include <functional>

namespace voskit::util {

// Runs fn(0..n-1) on up to `jobs` threads. Work items must be independent and
// write only to slots owned by their index, so results never depend on
// scheduling. The first exception thrown by a worker is rethrown after all
// workers have joined.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

} // namespace voskit::util
