// parallel.hpp - index-parallel loop over independent work items
//
// Each index is handled by exactly one worker and writes only its own slot,
// so results never depend on the thread count or schedule.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace chirospec {

inline unsigned default_thread_count() noexcept {
    return std::max(1u, std::thread::hardware_concurrency());
}

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    threads = std::max(1u, threads);
    if (threads == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    std::size_t error_index = count;

    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
            try {
                fn(i);
            } catch (...) {
                // Keep the failure of the lowest index so the reported error is schedule-independent.
                std::lock_guard lock(error_mutex);
                if (i < error_index) {
                    error_index = i;
                    error = std::current_exception();
                }
            }
        }
    };

    const auto n = static_cast<std::size_t>(threads);
    std::vector<std::jthread> pool;
    pool.reserve(std::min(n, count));
    for (std::size_t t = 0; t < std::min(n, count); ++t) pool.emplace_back(worker);
    pool.clear();

    if (error) std::rethrow_exception(error);
}

}  // namespace chirospec
