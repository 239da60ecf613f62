#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cobell {

/// Run fn(i) for i in [0, n) on up to `threads` workers (0 = hardware
/// count). Work is strided by index, so output written to slot i never
/// depends on scheduling; the first exception is rethrown after join.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    if (n == 0) return;
    unsigned want = threads == 0 ? std::thread::hardware_concurrency() : threads;
    if (want == 0) want = 1;
    if (want > n) want = static_cast<unsigned>(n);

    if (want <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(want);
    for (unsigned w = 0; w < want; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += want) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace cobell
