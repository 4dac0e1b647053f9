#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace frontspec {

/// Evaluates fn(items[i]) on up to `workers` threads. Results keep input
/// order, so output assembly is independent of scheduling.
template <class T, class Fn>
auto parallel_map(const std::vector<T>& items, Fn&& fn, unsigned workers = 1)
    -> std::vector<decltype(fn(items.front()))> {
    using R = decltype(fn(items.front()));
    std::vector<R> results;
    results.reserve(items.size());
    const unsigned n_threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(items.size())));
    if (n_threads <= 1) {
        for (const auto& item : items) results.push_back(fn(item));
        return results;
    }
    std::vector<std::optional<R>> slots(items.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(items.size());
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < items.size(); i = next.fetch_add(1)) {
                try {
                    slots[i].emplace(fn(items[i]));
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    for (auto& s : slots) results.push_back(std::move(*s));
    return results;
}

}  // namespace frontspec
