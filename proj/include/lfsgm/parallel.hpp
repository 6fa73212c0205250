#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace lfsgm {

/// Runs fn(begin, end) over contiguous chunks of [0, n) on up to `workers`
/// threads. workers <= 1 executes inline. Chunk boundaries depend only on
/// (n, workers), so writes to disjoint slots stay deterministic.
template <class Fn>
void parallel_chunks(int n, int workers, Fn&& fn) {
    if (n <= 0)
        return;
    const int threads = std::min(workers, n);
    if (threads <= 1) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const int chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const int begin = t * chunk;
        const int end = std::min(n, begin + chunk);
        if (begin >= end)
            break;
        pool.emplace_back([=, &fn] { fn(begin, end); });
    }
    for (auto& th : pool)
        th.join();
}

} // namespace lfsgm
