#pragma once

#include <cstddef>
#include <functional>

namespace maximin {

// Number of worker threads used by library-level parallel loops. Defaults to
// std::thread::hardware_concurrency().
void set_thread_count(unsigned threads);
unsigned thread_count();

// Runs body(i) for i in [0, count). Tasks must write to disjoint outputs; the
// first exception thrown by any task is rethrown on the caller.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace maximin
