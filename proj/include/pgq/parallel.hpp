#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace pgq {

/// Splits [0, count) into contiguous chunks, one per worker, and calls
/// fn(begin, end, worker). Chunk boundaries depend only on (count, threads),
/// so merging per-worker results in worker order is deterministic.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (threads == 1) {
        fn(std::size_t{0}, count, 0u);
        return;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (count + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        const std::size_t begin = std::min(count, w * chunk), end = std::min(count, begin + chunk);
        pool.emplace_back([&fn, begin, end, w] { fn(begin, end, w); });
    }
}

} // namespace pgq
