#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace wgl {

// 0 means "use hardware concurrency".
inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(i) for every i in [0, chunks). Chunks are claimed dynamically,
// so callers must write results into per-chunk slots and reduce them in
// index order afterwards; that keeps results independent of thread count.
template <class Body>
void parallel_for_chunks(std::size_t chunks, unsigned threads, Body&& body) {
    const unsigned workers = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(chunks, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < chunks; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < chunks; i = next.fetch_add(1)) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace wgl
