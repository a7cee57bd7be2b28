#ifndef PDCNET_PARALLEL_HPP
#define PDCNET_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace pdcnet {

// Worker count: PDCNET_WORKERS env var, else hardware concurrency.
inline int worker_count() {
    if (const char* env = std::getenv("PDCNET_WORKERS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(i) for i in [0, count) across a small thread pool. fn must be safe
// to call concurrently for distinct indices; result slots should be
// preallocated by the caller.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    int workers = worker_count();
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto body = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    int spawn = std::min<std::size_t>(workers, count);
    for (int t = 0; t < spawn; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
}

} // namespace pdcnet

#endif
