// SPDX-License-Identifier: Apache-2.0

#include "secsat/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace secsat {

int resolve_threads(int threads) {
    if (threads < 0) throw std::invalid_argument("threads must be >= 0");
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

// Runs `work(w)` for worker indices 0..workers-1 and rethrows the first
// captured exception.
void run_workers(int workers, const std::function<void(int)>& work) {
    if (workers <= 1) {
        work(0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                work(w);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace

long long parallel_count(long long n, int threads,
                         const std::function<long long(long long, long long)>& block) {
    if (n < 0) throw std::invalid_argument("parallel_count: n must be >= 0");
    if (n == 0) return 0;
    int workers = resolve_threads(threads);
    if (static_cast<long long>(workers) > n) workers = static_cast<int>(n);
    std::vector<long long> partial(workers, 0);
    run_workers(workers, [&](int w) {
        const long long lo = n * w / workers;
        const long long hi = n * (w + 1) / workers;
        partial[w] = block(lo, hi);
    });
    long long total = 0;
    for (long long p : partial) total += p;
    return total;
}

void parallel_for(long long n, int threads, const std::function<void(long long)>& fn) {
    if (n < 0) throw std::invalid_argument("parallel_for: n must be >= 0");
    if (n == 0) return;
    int workers = resolve_threads(threads);
    if (static_cast<long long>(workers) > n) workers = static_cast<int>(n);
    std::atomic<long long> next{0};
    run_workers(workers, [&](int) {
        for (;;) {
            const long long i = next.fetch_add(1);
            if (i >= n) break;
            fn(i);
        }
    });
}

}  // namespace secsat
