#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace mgonal {

/// Runs fn(i) for every i in [0, n), striped across `workers` threads
/// (worker w takes i = w, w + workers, ...). workers <= 1 runs inline.
/// fn must only touch its own index's state; results keyed by i stay
/// deterministic regardless of worker count. The first exception (lowest
/// worker id) is rethrown after all threads join.
inline void parallel_for(std::size_t n, int workers,
                         const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t lanes =
        std::min<std::size_t>(static_cast<std::size_t>(workers), n);
    std::vector<std::exception_ptr> errors(lanes);
    std::vector<std::thread> pool;
    pool.reserve(lanes);
    for (std::size_t w = 0; w < lanes; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += lanes) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace mgonal
