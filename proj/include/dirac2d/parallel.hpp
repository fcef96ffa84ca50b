#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace dirac2d {

// Process-wide worker count; the CLI sets it from --threads / the
// environment override, everything else just reads it.
int worker_count();
void set_worker_count(int n);

// Fork-join loop over [0, n). Work items must be independent; results
// are reduced by the caller over preallocated slots, so no locking is
// needed here.
template <typename F>
void parallel_for(std::int64_t n, F&& body) {
    int workers = worker_count();
    if (workers <= 1 || n <= 1) {
        for (std::int64_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::int64_t i = next.fetch_add(1);
                if (i >= n) return;
                body(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace dirac2d
