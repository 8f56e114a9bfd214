#pragma once

#include <cstddef>
#include <functional>

namespace fracfront {

// 0 maps to the available hardware parallelism.
unsigned resolve_threads(unsigned requested);

// Calls body(i) for every i in [0, n) on up to `threads` workers. The first exception
// (by index) is rethrown after all workers stop.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace fracfront
