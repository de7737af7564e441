#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace descent {

inline unsigned resolve_workers(unsigned requested) {
    if (requested >= 1) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Splits [begin, end) into one contiguous chunk per worker and runs
/// fn(chunk_begin, chunk_end, worker_index). Results must be combined by the
/// caller in worker order so output stays identical for any worker count.
template <typename Fn>
void parallel_chunks(std::uint64_t begin, std::uint64_t end, unsigned workers, Fn&& fn) {
    workers = resolve_workers(workers);
    std::uint64_t total = end - begin;
    if (workers <= 1 || total < 2) {
        fn(begin, end, 0u);
        return;
    }
    if (total < workers) workers = static_cast<unsigned>(total);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    std::uint64_t chunk = total / workers, extra = total % workers, pos = begin;
    for (unsigned w = 0; w < workers; ++w) {
        std::uint64_t len = chunk + (w < extra ? 1 : 0);
        threads.emplace_back([&fn, pos, len, w] { fn(pos, pos + len, w); });
        pos += len;
    }
    for (auto& t : threads) t.join();
}

}  // namespace descent
