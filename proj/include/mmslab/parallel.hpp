#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace mmslab {

/// Thread budget: min(hardware, MMSLAB_THREADS if set).  At least 1.
inline int thread_budget() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("MMSLAB_THREADS")) {
        int cap = std::atoi(env);
        if (cap > 0) hw = std::min(hw, cap);
    }
    return hw;
}

/// Runs body(i) for i in [0, n).  Work is chunked over threads; each index
/// writes only its own output slots, so results are identical to the serial
/// order regardless of thread count.
template <typename Body>
void parallel_for(std::ptrdiff_t n, const Body& body) {
    const int threads = thread_budget();
    if (threads <= 1 || n < 64) {
        for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::ptrdiff_t chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        std::ptrdiff_t lo = t * chunk;
        std::ptrdiff_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (std::ptrdiff_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace mmslab
