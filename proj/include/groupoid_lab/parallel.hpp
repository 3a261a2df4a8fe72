#pragma once

#include <cstddef>
#include <functional>

namespace groupoid_lab {

/// Worker cap: GROUPOID_LAB_THREADS when set to a positive integer,
/// otherwise the hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs task(i) for i in [0, count) on up to worker_count() threads. Tasks
/// must write to disjoint outputs; the first exception is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task);

}  // namespace groupoid_lab
