#pragma once

#include <cstddef>
#include <functional>

namespace hardy {

/// Worker count used when a caller passes 0: HARDY_THREADS if set, otherwise
/// the hardware concurrency.
unsigned default_thread_count();

/// Calls body(i) for i in [0, n) on up to `threads` workers. Work is handed
/// out in fixed contiguous chunks, so results written to slot i do not
/// depend on the thread count. The first exception thrown is rethrown.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace hardy
