#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace asense {

/// Resolves a requested worker count; 0 means "all hardware threads".
[[nodiscard]] unsigned resolveThreads(unsigned requested) noexcept;

/// Calls fn(i) for every i in [0, n). Workers pull fixed-size chunks from a
/// shared counter, so the schedule varies run to run; fn must only write
/// to slot i for the output to be schedule independent. The first exception
/// thrown by any fn is rethrown after all workers stop.
template <class Fn>
void parallelFor(std::size_t n, unsigned threads, Fn&& fn, std::size_t chunk = 64) {
    threads = std::max(1U, threads);
    chunk = std::max<std::size_t>(1, chunk);
    if (threads == 1 || n <= chunk) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex errorMutex;

    auto worker = [&]() {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t begin = next.fetch_add(chunk, std::memory_order_relaxed);
            if (begin >= n) {
                return;
            }
            const std::size_t end = std::min(n, begin + chunk);
            try {
                for (std::size_t i = begin; i < end; ++i) {
                    fn(i);
                }
            } catch (...) {
                std::lock_guard lock(errorMutex);
                if (!error) {
                    error = std::current_exception();
                }
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };

    const unsigned count = static_cast<unsigned>(std::min<std::size_t>(threads, (n + chunk - 1) / chunk));
    std::vector<std::jthread> pool;
    pool.reserve(count);
    for (unsigned w = 0; w < count; ++w) {
        pool.emplace_back(worker);
    }
    pool.clear();
    if (error) {
        std::rethrow_exception(error);
    }
}

}  // namespace asense
