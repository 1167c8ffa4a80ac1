#pragma once

/**
 * @file sweep.hpp
 * @brief Ordered parallel map over independent cases.
 */

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace qcongruence {

/**
 * Applies fn to every element of items on up to `jobs` worker threads.
 * Results are stored by index, so their order is that of items no matter
 * which worker finishes first. The first exception thrown by fn is
 * rethrown after all workers have joined.
 */
template <class T, class Fn>
auto parallel_map(const std::vector<T>& items, unsigned jobs, Fn fn)
    -> std::vector<std::invoke_result_t<Fn&, const T&>> {
    using R = std::invoke_result_t<Fn&, const T&>;
    std::vector<R> out(items.size());
    if (items.empty()) return out;
    jobs = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(items.size()));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < items.size();) {
            try {
                out[i] = fn(items[i]);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };

    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(jobs);
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace qcongruence
