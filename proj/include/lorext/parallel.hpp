#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace lorext {

/// Index-parallel loop with deterministic results: work items write to
/// disjoint slots, reductions happen in index order on the caller side.
inline void parallel_for(int count, const std::function<void(int)>& fn, int threads) {
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    const int workers = std::min(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::atomic<int> next{0};
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&]() {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

/// Thread count resolution: explicit > LOREXT_THREADS env > hardware.
int resolve_threads(int requested);

}  // namespace lorext
