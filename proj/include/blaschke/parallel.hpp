#pragma once

#include <atomic>
#include <thread>
#include <vector>

namespace blaschke {

inline int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Runs f(i) for i in [0, n). Items must be pure and write disjoint output,
// so the result cannot depend on scheduling or thread count.
template <typename F>
void parallel_for(int n, int n_threads, F&& f) {
    if (n <= 0) return;
    n_threads = resolve_thread_count(n_threads);
    if (n_threads <= 1 || n == 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next {0};
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n) return;
            f(i);
        }
    };
    std::vector<std::thread> pool;
    const int k = std::min(n_threads, n);
    pool.reserve(static_cast<std::size_t>(k) - 1);
    for (int t = 1; t < k; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

}  // namespace blaschke
