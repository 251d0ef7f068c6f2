#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace ksym {

/// Static range partition over `threads` workers; deterministic: the chunk
/// boundaries depend only on (count, threads) and workers write to disjoint
/// slots. threads <= 1 runs inline.
inline void parallel_for(std::size_t count, int threads,
                         const std::function<void(std::size_t, std::size_t)>& body) {
    if (threads <= 1 || count < 2) {
        body(0, count);
        return;
    }
    std::size_t t = static_cast<std::size_t>(threads);
    if (t > count) t = count;
    std::vector<std::thread> pool;
    std::size_t chunk = (count + t - 1) / t;
    for (std::size_t w = 0; w < t; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] { body(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace ksym
