#pragma once

// Index-parallel loops with deterministic results: every index writes its
// own slot, reductions happen afterwards in index order.

#include <cstddef>
#include <functional>

namespace fueter {

// Worker cap. 0 restores the default: FUETER_THREADS if set, otherwise the
// hardware concurrency.
void set_thread_limit(int threads);
int thread_limit();

// Runs body(i) for i in [0, count). The first exception by index is rethrown.
// Calls made from inside a body run serially on the calling worker.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace fueter
