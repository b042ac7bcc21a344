#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace subdiff {

// Worker count: SUBDIFF_THREADS overrides hardware_concurrency. Values that
// fail to parse, or parse to < 1, fall back to 1.
inline unsigned max_workers() {
    if (const char* env = std::getenv("SUBDIFF_THREADS")) {
        try {
            long v = std::stol(env);
            return v >= 1 ? (unsigned)v : 1u;
        } catch (const std::exception&) {
            return 1u;
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw >= 1 ? hw : 1u;
}

// Runs fn(block_index, begin, end) over the blocks of [0, n) in units of
// block_size. Blocks are claimed off an atomic counter, so the assignment of
// blocks to threads is racy, but any reduction keyed by block_index (one slot
// per block, combined by the caller in index order) is independent of the
// schedule. That is the only pattern callers use; it is what keeps output
// byte-identical across SUBDIFF_THREADS settings.
template <class F>
void for_each_block(std::size_t n, std::size_t block_size, F&& fn) {
    if (n == 0)
        return;
    const std::size_t n_blocks = (n + block_size - 1) / block_size;
    unsigned workers = max_workers();
    if (workers > n_blocks)
        workers = (unsigned)n_blocks;

    auto run_block = [&](std::size_t b) {
        const std::size_t begin = b * block_size;
        const std::size_t end = begin + block_size < n ? begin + block_size : n;
        fn(b, begin, end);
    };

    if (workers <= 1) {
        for (std::size_t b = 0; b < n_blocks; ++b)
            run_block(b);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t b = next.fetch_add(1, std::memory_order_relaxed);
            if (b >= n_blocks)
                return;
            try {
                run_block(b);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

} // namespace subdiff
