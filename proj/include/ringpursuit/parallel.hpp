#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace ringpursuit::detail {

/// Evaluates f(0..n-1) on a small worker pool. Results keep index order, so
/// output is identical to a sequential loop. `max_workers` = 0 uses the
/// hardware concurrency.
template <class F>
auto parallel_map(std::size_t n, F&& f, std::size_t max_workers = 0)
    -> std::vector<std::invoke_result_t<F&, std::size_t>> {
    using T = std::invoke_result_t<F&, std::size_t>;
    const std::size_t hw = max_workers > 0 ? max_workers : std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min<std::size_t>({hw, n, 16});
    if (workers <= 1) {
        std::vector<T> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
        return out;
    }

    // One object per slot: std::vector<bool> packs bits and would race.
    struct Slot {
        T value{};
    };
    std::vector<Slot> slots(n);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                slots[i].value = f(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    std::vector<T> out;
    out.reserve(n);
    for (auto& s : slots) out.push_back(std::move(s.value));
    return out;
}

}  // namespace ringpursuit::detail
