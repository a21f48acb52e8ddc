// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>

namespace secsat {

// Number of worker threads to use when the caller passes 0 (all cores).
int resolve_threads(int threads);

// Sums block(lo, hi) over a contiguous partition of [0, n). Because the
// blocks are disjoint and the per-index work is deterministic, the total is
// identical for every thread count and schedule.
long long parallel_count(long long n, int threads,
                         const std::function<long long(long long, long long)>& block);

// Runs fn(i) for i in [0, n) on a worker pool. Exceptions from workers are
// rethrown on the calling thread.
void parallel_for(long long n, int threads, const std::function<void(long long)>& fn);

}  // namespace secsat
