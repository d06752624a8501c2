#pragma once

#include <cstddef>
#include <functional>

namespace vdreg {

/// Worker count from VDREG_THREADS (default: hardware concurrency, min 1).
unsigned thread_count();

/// Runs body(0..n-1) on up to thread_count() threads. Each index must write
/// only its own output slot. The first exception is rethrown after joining.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace vdreg
