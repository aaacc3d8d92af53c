#pragma once

#include <cstddef>
#include <functional>

namespace tailvar {

/// Number of worker threads: TAILVAR_THREADS if set (clamped to >= 1),
/// otherwise hardware concurrency.
unsigned thread_budget();

/// Run fn(i) for i in [0, count) across the thread budget. Each index is
/// processed exactly once; callers write results into per-index slots so the
/// output is identical to the serial order. The first exception thrown by a
/// worker is rethrown on the calling thread after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace tailvar
