#pragma once

#include <cstdint>
#include <functional>

namespace rmt {

/// Worker count: RMT_LAB_THREADS if set (clamped to >= 1), otherwise
/// hardware concurrency.
int default_worker_count();

/// Runs body(i) for i in [0, count) split across `workers` threads in
/// contiguous blocks. Caller-side determinism is preserved as long as each
/// body(i) writes only to slot i of preallocated storage; any reduction
/// must happen afterwards in index order. Exceptions from workers are
/// rethrown on the calling thread.
void parallel_trials(std::int64_t count, int workers,
                     const std::function<void(std::int64_t)>& body);

}  // namespace rmt
