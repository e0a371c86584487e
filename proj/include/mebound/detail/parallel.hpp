#ifndef MEBOUND_DETAIL_PARALLEL_HPP
#define MEBOUND_DETAIL_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace mebound::detail {

inline int clamp_threads(int threads) {
    if (threads < 1) threads = 1;
    const unsigned hw = std::thread::hardware_concurrency();
    if (hw > 0 && static_cast<unsigned>(threads) > hw * 4u) threads = static_cast<int>(hw * 4u);
    return threads;
}

// Runs fn(i) for i in [0,n) across `threads` workers. Each index is handled
// exactly once; per-index outputs must go to disjoint slots.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    threads = clamp_threads(threads);
    if (threads == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

// Deterministic chunked reduction: [0,n) is split into a fixed number of
// chunks independent of the thread count; per_chunk(lo,hi) returns each
// chunk's partial sum (Kahan inside), and the partials are combined in chunk
// order. The result is therefore identical for any number of workers.
template <class PerChunk>
long double chunked_sum(std::size_t n, int threads, PerChunk&& per_chunk) {
    if (n == 0) return 0.0L;
    const std::size_t nchunks = std::min<std::size_t>(n, 64);
    std::vector<long double> partial(nchunks, 0.0L);
    parallel_for(nchunks, threads, [&](std::size_t k) {
        const std::size_t lo = n * k / nchunks;
        const std::size_t hi = n * (k + 1) / nchunks;
        partial[k] = per_chunk(lo, hi);
    });
    long double total = 0.0L, comp = 0.0L;
    for (long double p : partial) {
        const long double y = p - comp;
        const long double t = total + y;
        comp = (t - total) - y;
        total = t;
    }
    return total;
}

// Kahan-compensated accumulator for use inside chunk loops.
struct KahanSum {
    long double sum = 0.0L, comp = 0.0L;
    void add(long double x) {
        const long double y = x - comp;
        const long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

}  // namespace mebound::detail

#endif  // MEBOUND_DETAIL_PARALLEL_HPP
