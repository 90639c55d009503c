#pragma once

#include <functional>

namespace ttvsr {

/// Worker cap from TTVSR_THREADS (0 or unset = hardware concurrency).
int worker_count();

/// Runs fn(i) for i in [begin, end) across workers. Each index is handled
/// by exactly one thread; callers must keep per-index work independent so
/// results do not depend on the thread count.
void parallel_for(int begin, int end, const std::function<void(int)>& fn);

} // namespace ttvsr
