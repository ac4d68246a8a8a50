#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace arsp {

/// Runs fn(begin, end) over disjoint chunks of [0, n) on up to
/// hardware_concurrency threads. Outputs must go to disjoint slots.
inline void parallel_for_chunks(std::size_t n,
                                const std::function<void(std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    std::size_t workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min<std::size_t>(workers, n);
    if (workers <= 1) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t b = w * chunk;
        if (b >= n) break;
        const std::size_t e = std::min(n, b + chunk);
        threads.emplace_back([&fn, b, e] { fn(b, e); });
    }
    for (auto& t : threads) t.join();
}

}  // namespace arsp
