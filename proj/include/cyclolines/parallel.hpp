#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace cyclolines {

/// Worker cap for pair-level parallel verification; 0 means all cores.
/// Results are independent of the setting: workers report per-chunk values
/// that callers merge in chunk order.
int thread_count();
void set_thread_count(int n);

/// Chunk geometry depends only on `total`, never on the worker count, so
/// per-chunk reductions merge deterministically.
inline std::int64_t parallel_chunk_size(std::int64_t total) {
    return std::max<std::int64_t>(1, std::min<std::int64_t>(262144, (total + 63) / 64));
}

inline int parallel_chunk_count(std::int64_t total) {
    if (total <= 0) return 0;
    std::int64_t cs = parallel_chunk_size(total);
    return static_cast<int>((total + cs - 1) / cs);
}

/// Splits [0, total) into contiguous chunks and runs fn(begin, end, chunk)
/// on a pool.  Returns the chunk count.
template <typename Fn>
int parallel_chunks(std::int64_t total, Fn&& fn) {
    if (total <= 0) return 0;
    int workers = std::max(1, thread_count());
    const std::int64_t chunk_size = parallel_chunk_size(total);
    const int chunks = parallel_chunk_count(total);
    if (workers == 1 || chunks == 1) {
        for (int c = 0; c < chunks; ++c)
            fn(c * chunk_size, std::min<std::int64_t>(total, (c + 1) * chunk_size), c);
        return chunks;
    }
    std::atomic<int> next{0};
    auto body = [&]() {
        for (;;) {
            int c = next.fetch_add(1);
            if (c >= chunks) return;
            fn(c * chunk_size, std::min<std::int64_t>(total, (c + 1) * chunk_size), c);
        }
    };
    std::vector<std::thread> pool;
    int spawn = std::min(workers, chunks);
    pool.reserve(static_cast<std::size_t>(spawn));
    for (int t = 0; t < spawn; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    return chunks;
}

}  // namespace cyclolines
