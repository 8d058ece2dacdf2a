#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dtwc {

namespace detail {
inline std::atomic<unsigned>& thread_setting() {
    static std::atomic<unsigned> threads{1};
    return threads;
}
}  // namespace detail

inline unsigned thread_count() { return detail::thread_setting().load(); }

// 0 selects std::thread::hardware_concurrency().
inline void set_thread_count(unsigned n) {
    if (n == 0) {
        n = std::max(1u, std::thread::hardware_concurrency());
    }
    detail::thread_setting().store(n);
}

// Runs fn(i) for i in [0, n) over contiguous chunks. fn must only write to slots owned by i,
// so results never depend on the thread count. The first exception thrown by any fn(i) is
// rethrown on the calling thread after all workers finish.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const std::size_t workers = std::min<std::size_t>(thread_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (n + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t lo = w * chunk;
            const std::size_t hi = std::min(n, lo + chunk);
            if (lo >= hi) {
                break;
            }
            pool.emplace_back([lo, hi, &fn, &failure, &failure_mutex] {
                try {
                    for (std::size_t i = lo; i < hi; ++i) {
                        fn(i);
                    }
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace dtwc
