#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gmclust {

/// Run fn(i) for i in [0, count) on up to `threads` workers. Each index is
/// handled exactly once; callers write results into slot i, so output order
/// never depends on scheduling. The first exception thrown is rethrown.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn)
{
    const std::size_t workers = std::min(std::max<std::size_t>(threads, 1), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next.store(count);
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back(worker);
    pool.clear();
    if (failure)
        std::rethrow_exception(failure);
}

inline std::size_t hardware_threads()
{
    return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace gmclust
